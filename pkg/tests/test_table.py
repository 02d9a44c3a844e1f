from __future__ import annotations

import json

from src.core import chain_poset, interpolating_poset
from src.field import CycNumber, get_field
from src.reps import RepStyle
from src.table import build_table
from src.utils import format_label, to_json


def test_table_of_u2_over_f2():
    result = build_table(chain_poset(2), get_field(2), RepStyle.UN_CANONICAL)
    assert [format_label(lam) for lam in result.characters] == ["∅", "1~2"]
    assert [format_label(u) for u in result.classes] == ["∅", "1~2"]
    assert [[v.value for v in row] for row in result.values] == [
        [CycNumber.rational(2, 1), CycNumber.rational(2, 1)],
        [CycNumber.rational(2, 1), CycNumber.rational(2, -1)],
    ]
    assert result.evaluator == "un"


def test_threads_do_not_change_the_table():
    fld = get_field(3)
    poset = interpolating_poset(4, 2)
    single = build_table(poset, fld, RepStyle.PATH, threads=1)
    pooled = build_table(poset, fld, RepStyle.PATH, threads=4)
    assert single.characters == pooled.characters
    assert single.classes == pooled.classes
    assert [[v.value for v in row] for row in single.values] == [[v.value for v in row] for row in pooled.values]


def test_first_column_holds_the_degrees():
    fld = get_field(2)
    result = build_table(chain_poset(4), fld, RepStyle.UN_CANONICAL)
    assert result.classes[0].element.is_zero()
    for lam, row in zip(result.characters, result.values):
        assert row[0].value.is_rational()
        assert result.row(lam) is row


def test_csv_and_json_shapes():
    result = build_table(chain_poset(2), get_field(2), RepStyle.UN_CANONICAL)
    lines = result.to_csv(format_label).splitlines()
    assert lines[0] == "character,∅,1~2"
    assert lines[2] == "1~2,1,-1"
    payload = json.loads(to_json(result.to_payload(format_label)))
    assert set(payload) == {"schema", "n", "m", "q", "style", "evaluator", "classes", "rows"}
    assert payload["rows"][1]["label"] == "1~2"
    assert len(payload["rows"][1]["values"]) == 2
    assert payload["classes"] == ["∅", "1~2"]
