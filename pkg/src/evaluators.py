from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from .chars import CharValue, comb_char_value, general_char_value, path_char_value, un_char_value
from .errors import CrossCheckMismatch, StyleError
from .oracle import DEFAULT_BUDGET, definitional_char
from .reps import RepStyle, SupercharLabel, SuperclassLabel

logger = logging.getLogger(__name__)

EVALUATOR_NAMES = ("general", "un", "comb", "path", "oracle")


class CharEvaluator(ABC):
    """Pluggable way of computing χ^λ(u) on a pair of labels."""

    name: str = "abstract"

    def supports(self, lam: SupercharLabel, u: SuperclassLabel) -> bool:
        return lam.poset == u.poset

    @abstractmethod
    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        raise NotImplementedError


@dataclass
class GeneralEvaluator(CharEvaluator):
    name: str = "general"

    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        return general_char_value(lam, u)


@dataclass
class UnEvaluator(CharEvaluator):
    name: str = "un"

    def supports(self, lam: SupercharLabel, u: SuperclassLabel) -> bool:
        return super().supports(lam, u) and lam.style is RepStyle.UN_CANONICAL and u.style is RepStyle.UN_CANONICAL

    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        return un_char_value(lam, u)


@dataclass
class CombEvaluator(CharEvaluator):
    name: str = "comb"

    def supports(self, lam: SupercharLabel, u: SuperclassLabel) -> bool:
        return super().supports(lam, u) and lam.style is RepStyle.COMB and u.style is RepStyle.COMB

    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        return comb_char_value(lam, u)


@dataclass
class PathEvaluator(CharEvaluator):
    name: str = "path"

    def supports(self, lam: SupercharLabel, u: SuperclassLabel) -> bool:
        return super().supports(lam, u) and lam.style is RepStyle.PATH and u.style is RepStyle.PATH

    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        return path_char_value(lam, u)


@dataclass
class OracleEvaluator(CharEvaluator):
    budget: int = DEFAULT_BUDGET
    name: str = "oracle"

    def supports(self, lam: SupercharLabel, u: SuperclassLabel) -> bool:
        return super().supports(lam, u) and lam.field.q ** len(lam.poset.J) <= self.budget

    def evaluate(self, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
        value = definitional_char(lam.functional, u.element, budget=self.budget)
        return CharValue(value, "orbit-sum-vanishes" if value.is_zero() else None)


_BY_STYLE = {RepStyle.UN_CANONICAL: "un", RepStyle.COMB: "comb", RepStyle.PATH: "path"}


def build_evaluator(name: str, style: Optional[RepStyle | str] = None, budget: int = DEFAULT_BUDGET) -> CharEvaluator:
    """Evaluator by name; ``auto`` picks the closed form matching ``style`` (general otherwise)."""
    key = (name or "auto").strip().lower()
    if key == "auto":
        key = _BY_STYLE.get(RepStyle(style), "general") if style else "general"
    if key == "general":
        return GeneralEvaluator()
    if key == "un":
        return UnEvaluator()
    if key == "comb":
        return CombEvaluator()
    if key == "path":
        return PathEvaluator()
    if key == "oracle":
        return OracleEvaluator(budget=budget)
    raise StyleError(f"unknown evaluator {name!r}; choose from auto, {', '.join(EVALUATOR_NAMES)}")


def evaluate(evaluator: CharEvaluator, lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
    if not evaluator.supports(lam, u):
        raise StyleError(
            f"evaluator {evaluator.name!r} does not apply to {lam.style.value}/{u.style.value} labels on {lam.poset.describe()}"
        )
    return evaluator.evaluate(lam, u)


def cross_check(
    lam: SupercharLabel,
    u: SuperclassLabel,
    evaluators: Optional[Sequence[CharEvaluator]] = None,
) -> CharValue:
    """Run every applicable evaluator and insist they agree exactly."""
    pool = list(evaluators) if evaluators is not None else [build_evaluator(n) for n in EVALUATOR_NAMES]
    results: Dict[str, CharValue] = {}
    for ev in pool:
        if ev.supports(lam, u):
            results[ev.name] = ev.evaluate(lam, u)
    if not results:
        raise StyleError("no evaluator applies to these labels")
    first = next(iter(results.values()))
    if any(r.value != first.value for r in results.values()):
        raise CrossCheckMismatch(
            f"evaluators disagree on χ^λ(u) for λ={lam.functional.entries}, u={u.element.entries}",
            {name: str(r.value) for name, r in results.items()},
        )
    logger.debug("cross-check agreed across %s", ", ".join(results))
    return first
