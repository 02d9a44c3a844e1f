from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .chars import CharValue
from .core import PatternPoset
from .evaluators import CharEvaluator, build_evaluator, cross_check, evaluate
from .field import FiniteField
from .oracle import DEFAULT_BUDGET
from .reps import CHARACTER, CLASS, RepStyle, SupercharLabel, SuperclassLabel, check_style, enumerate_labels

logger = logging.getLogger(__name__)

LabelFormatter = Callable[[object], str]


@dataclass
class TableResult:
    poset: PatternPoset
    field: FiniteField
    style: RepStyle
    evaluator: str
    characters: List[SupercharLabel]
    classes: List[SuperclassLabel]
    values: List[List[CharValue]]

    def row(self, lam: SupercharLabel) -> List[CharValue]:
        return self.values[self.characters.index(lam)]

    def to_payload(self, fmt: LabelFormatter = str) -> Dict[str, object]:
        return {
            "schema": "1",
            "n": self.poset.n,
            "m": self.poset.m,
            "q": self.field.q,
            "style": self.style.value,
            "evaluator": self.evaluator,
            "classes": [fmt(u) for u in self.classes],
            "rows": [
                {"label": fmt(lam), "values": [v.value.to_json() for v in row]}
                for lam, row in zip(self.characters, self.values)
            ],
        }

    def to_csv(self, fmt: LabelFormatter = str) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["character"] + [fmt(u) for u in self.classes])
        for lam, row in zip(self.characters, self.values):
            writer.writerow([fmt(lam)] + [str(v.value) for v in row])
        return buffer.getvalue()


def build_table(
    poset: PatternPoset,
    fld: FiniteField,
    style: RepStyle | str,
    evaluator: str | CharEvaluator = "auto",
    threads: int = 1,
    check: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> TableResult:
    """Full supercharacter table; rows and columns follow enumerate_labels order."""
    style = check_style(poset, style)
    ev = evaluator if isinstance(evaluator, CharEvaluator) else build_evaluator(evaluator, style, budget)
    characters: List[SupercharLabel] = enumerate_labels(poset, fld, style, CHARACTER)  # type: ignore[assignment]
    classes: List[SuperclassLabel] = enumerate_labels(poset, fld, style, CLASS)  # type: ignore[assignment]
    checkers: Optional[List[CharEvaluator]] = None
    if check:
        checkers = [ev] + [build_evaluator(name, budget=budget) for name in ("general", "oracle") if name != ev.name]

    def compute_row(lam: SupercharLabel) -> List[CharValue]:
        if checkers is not None:
            return [cross_check(lam, u, checkers) for u in classes]
        return [evaluate(ev, lam, u) for u in classes]

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        values = list(pool.map(compute_row, characters))
    logger.info(
        "built %dx%d table on %s over F_%d with %s (%d threads)",
        len(characters), len(classes), poset.describe(), fld.q, ev.name, max(1, threads),
    )
    return TableResult(poset, fld, style, ev.name, characters, classes, values)
