from __future__ import annotations

import json
import re
from typing import Any, Dict, Iterator, List, Tuple, Union

from .core import DualFunctional, PatternPoset, Position, SparseMatrix, UnipotentElement
from .errors import LabelParseError
from .field import CycNumber, FiniteField
from .reps import (
    CHARACTER,
    Label,
    RepStyle,
    SupercharLabel,
    SuperclassLabel,
    canonical_superclass_rep,
    canonical_supercharacter_rep,
)

EMPTY_LABEL = "∅"

_ANSI = {"red": "31", "green": "32", "yellow": "33", "cyan": "36", "bold": "1"}
_INDEX = re.compile(r"\d+")


def to_json(data: Dict[str, Any], pretty: bool = True) -> str:
    if pretty:
        return json.dumps(data, ensure_ascii=False, indent=2)
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def colorize(text: str, color: str, enabled: bool = True) -> str:
    if not enabled or color not in _ANSI:
        return text
    return f"\033[{_ANSI[color]}m{text}\033[0m"


def format_scalar(fld: FiniteField, value: int) -> str:
    """Base-p digits, most significant first."""
    return "".join(str(d) for d in reversed(fld.digits(value))).lstrip("0") or "0"


def _arc_chains(entries: Dict[Position, int]) -> List[List[Position]]:
    out_arcs: Dict[int, List[Position]] = {}
    in_count: Dict[int, int] = {}
    for i, j in entries:
        out_arcs.setdefault(i, []).append((i, j))
        in_count[j] = in_count.get(j, 0) + 1
    # rook placements chain into set-partition blocks; anything else prints arc by arc
    if any(len(v) > 1 for v in out_arcs.values()) or any(c > 1 for c in in_count.values()):
        return [[pos] for pos in sorted(entries)]
    chains = []
    for start in sorted(out_arcs):
        if in_count.get(start):
            continue
        chain = []
        node = start
        while node in out_arcs:
            arc = out_arcs[node][0]
            chain.append(arc)
            node = arc[1]
        chains.append(chain)
    return chains


def format_matrix(matrix: SparseMatrix) -> str:
    """Arc notation "i~j:v|..." with ":1" dropped over F_2; the zero matrix prints as ∅."""
    fld = matrix.field
    entries = matrix.as_dict()
    if not entries:
        return EMPTY_LABEL
    parts = []
    for chain in _arc_chains(entries):
        text = str(chain[0][0])
        for pos in chain:
            text += f"~{pos[1]}"
            if fld.q != 2:
                text += f":{format_scalar(fld, entries[pos])}"
        parts.append(text)
    return "|".join(parts)


def format_label(label: Label) -> str:
    return format_matrix(label.matrix)


def format_value(value: CycNumber) -> str:
    return str(value)


def _parse_scalar(text: str, fld: FiniteField, line: int, column: int) -> int:
    if not text or any(not ch.isdigit() or int(ch) >= fld.p for ch in text):
        raise LabelParseError(f"scalar {text!r} is not a base-{fld.p} numeral", line, column, text)
    value = int(text, fld.p)
    if not 0 < value < fld.q:
        raise LabelParseError(f"scalar {text!r} is not a nonzero element of F_{fld.q}", line, column, text)
    return value


def parse_arcs(text: str, poset: PatternPoset, fld: FiniteField, line: int = 1) -> Dict[Position, int]:
    """Entries of an arc-notation label; positions are checked against J."""
    stripped = text.strip()
    if stripped in ("", EMPTY_LABEL, "{}", "0"):
        return {}
    if stripped.startswith("{") and stripped.endswith("}"):
        text = text.replace("{", " ", 1)[::-1].replace("}", " ", 1)[::-1]
    entries: Dict[Position, int] = {}
    offset = 0
    for part in text.split("|"):
        column = offset + 1
        offset += len(part) + 1
        body = part.strip()
        if not body:
            raise LabelParseError("empty part", line, column, text)
        column += len(part) - len(part.lstrip())
        tokens = body.split("~")
        prev = None
        pos_in_part = 0
        for k, token in enumerate(tokens):
            index_text, _, scalar_text = token.partition(":")
            index_text = index_text.strip()
            col = column + pos_in_part
            pos_in_part += len(token) + 1
            if not _INDEX.fullmatch(index_text):
                raise LabelParseError(f"expected an index, got {index_text!r}", line, col, text)
            idx = int(index_text)
            if not 1 <= idx <= poset.n:
                raise LabelParseError(f"index {idx} outside 1..{poset.n}", line, col, text)
            if k == 0:
                if scalar_text:
                    raise LabelParseError("a scalar must follow an arc", line, col, text)
            else:
                if idx <= prev:  # type: ignore[operator]
                    raise LabelParseError(f"arc {prev}~{idx} must increase", line, col, text)
                if (prev, idx) not in poset.index:
                    raise LabelParseError(f"arc {prev}~{idx} lies outside J of {poset.describe()}", line, col, text)
                if scalar_text:
                    value = _parse_scalar(scalar_text.strip(), fld, line, col + len(index_text) + 1)
                elif fld.q == 2:
                    value = 1
                else:
                    raise LabelParseError(f"arc {prev}~{idx} needs a scalar over F_{fld.q}", line, col, text)
                if (prev, idx) in entries:
                    raise LabelParseError(f"arc {prev}~{idx} appears twice", line, col, text)
                entries[(prev, idx)] = value  # type: ignore[index]
            prev = idx
    return entries


def parse_label(
    text: str,
    poset: PatternPoset,
    fld: FiniteField,
    style: Union[str, RepStyle],
    kind: str = CHARACTER,
    line: int = 1,
) -> Label:
    """Parse arc notation and canonicalize into the requested style."""
    entries = parse_arcs(text, poset, fld, line)
    if kind == CHARACTER:
        return canonical_supercharacter_rep(DualFunctional.build(poset, fld, entries), poset, style)
    return canonical_superclass_rep(UnipotentElement.build(poset, fld, entries), poset, style)


def iter_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, raw


def parse_label_file(
    text: str, poset: PatternPoset, fld: FiniteField, style: Union[str, RepStyle], kind: str = CHARACTER
) -> List[Label]:
    return [parse_label(raw, poset, fld, style, kind, line=number) for number, raw in iter_lines(text)]


def decomposition_lines(terms: List[Tuple[SupercharLabel, int]]) -> List[str]:
    return [f"{coeff} * {format_label(label)}" for label, coeff in terms]


def label_payload(label: Union[SupercharLabel, SuperclassLabel]) -> Dict[str, Any]:
    return {"label": format_label(label), "style": label.style.value, **label.matrix.to_json()}
