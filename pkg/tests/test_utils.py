from __future__ import annotations

import pytest

from src.core import UnipotentElement, chain_poset, interpolating_poset
from src.errors import LabelParseError
from src.field import field_of_order, get_field
from src.reps import CLASS, RepStyle
from src.utils import format_matrix, parse_arcs, parse_label, parse_label_file


def test_parse_arcs_reads_chains_and_scalars():
    assert parse_arcs("1~3:2|2~4:1", chain_poset(4), get_field(3)) == {(1, 3): 2, (2, 4): 1}
    assert parse_arcs("1~2~3", chain_poset(3), get_field(2)) == {(1, 2): 1, (2, 3): 1}
    assert parse_arcs("1~2:10", chain_poset(2), field_of_order("4")) == {(1, 2): 2}
    assert parse_arcs(" ∅ ", chain_poset(3), get_field(2)) == {}


def test_format_matrix():
    f2 = get_field(2)
    p = chain_poset(4)
    assert format_matrix(UnipotentElement.build(p, f2, {(1, 2): 1, (2, 4): 1})) == "1~2~4"
    # two arcs out of row 1 cannot chain
    assert format_matrix(UnipotentElement.build(p, f2, {(1, 2): 1, (1, 3): 1})) == "1~2|1~3"
    f4 = field_of_order("4")
    assert format_matrix(UnipotentElement.build(chain_poset(2), f4, {(1, 2): 2})) == "1~2:10"
    assert format_matrix(UnipotentElement.zero(p, f2)) == "∅"


@pytest.mark.parametrize(
    "text, n, q, column",
    [
        ("2~1", 3, 2, 3),
        ("1~3", 3, 3, 3),
        ("1~2:3", 3, 3, 5),
        ("1~2|1~2", 3, 2, 7),
        ("1~2|", 3, 2, 5),
        ("1~9", 3, 2, 3),
    ],
)
def test_parse_errors_point_at_the_offending_token(text, n, q, column):
    with pytest.raises(LabelParseError) as info:
        parse_arcs(text, chain_poset(n), get_field(q))
    assert info.value.column == column


def test_arcs_outside_j_are_rejected():
    with pytest.raises(LabelParseError):
        parse_arcs("1~2", interpolating_poset(3, 2), get_field(2))


def test_label_files_report_line_numbers():
    text = "1~2\n# comment\n\n1~9\n"
    with pytest.raises(LabelParseError) as info:
        parse_label_file(text, chain_poset(3), get_field(2), RepStyle.UN_CANONICAL)
    assert info.value.line == 4
    labels = parse_label_file("1~2\n2~3\n", chain_poset(3), get_field(2), RepStyle.UN_CANONICAL)
    assert len(labels) == 2


def test_parse_label_canonicalizes():
    f2 = get_field(2)
    u = parse_label("1~2|1~3", chain_poset(3), f2, RepStyle.UN_CANONICAL, CLASS)
    assert format_matrix(u.matrix) == "1~2"
