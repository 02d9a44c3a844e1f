"""Restriction of supercharacters down U_n = U_(0) ⊃ U_(1) ⊃ ... ⊃ U_(n) ≅ U_{n-1}."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Counter as CounterType, Dict, Iterator, List, Optional, Tuple, Union

from .chars import degree_exponent, parse_comb
from .core import DualFunctional, PatternPoset, Position, chain_poset, interpolating_poset
from .errors import PosetError, StyleError
from .reps import (
    DEFAULT_BUDGET,
    RepStyle,
    SupercharLabel,
    as_style,
    canonical_supercharacter_rep,
    distinguished_component,
    stats,
)

logger = logging.getLogger(__name__)

FIRST_ROW = "first-row"
LAST_COLUMN = "last-column"


@dataclass
class Decomposition:
    """Σ c_μ χ^μ with positive integer coefficients keyed by canonical labels."""

    terms: Dict[SupercharLabel, int] = field(default_factory=dict)

    def add(self, label: SupercharLabel, coeff: int = 1) -> None:
        if coeff < 0:
            raise ValueError(f"negative coefficient {coeff} for {label.functional.entries}")
        if coeff:
            self.terms[label] = self.terms.get(label, 0) + coeff

    def extend(self, other: "Decomposition", scale: int = 1) -> None:
        for label, coeff in other.terms.items():
            self.add(label, coeff * scale)

    def items(self) -> List[Tuple[SupercharLabel, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[SupercharLabel]:
        return iter(label for label, _ in self.items())

    def __contains__(self, label: object) -> bool:
        return label in self.terms

    def __getitem__(self, label: SupercharLabel) -> int:
        return self.terms[label]

    def degree(self) -> int:
        """Σ c_μ χ^μ(1)."""
        total = 0
        for label, coeff in self.terms.items():
            total += coeff * label.field.q ** degree_exponent(label.functional)
        return total

    def functionals(self) -> Dict[DualFunctional, int]:
        return {label.functional: coeff for label, coeff in self.terms.items()}


def _step_label(lam: SupercharLabel) -> SupercharLabel:
    if lam.style is RepStyle.UN_CANONICAL:
        return SupercharLabel(lam.poset, RepStyle.PATH, lam.functional)
    return lam


def _next_poset(lam: SupercharLabel, m: Optional[int]) -> PatternPoset:
    source = lam.poset
    if source.m is None:
        raise PosetError(f"restriction steps need an interpolating poset, got {source.describe()}")
    m = source.m + 1 if m is None else m
    if m != source.m + 1 or not 1 <= m <= source.n:
        raise PosetError(f"cannot step from P_({source.m}) to P_({m}) on n={source.n}")
    return interpolating_poset(source.n, m)


def _comb_down(lam: DualFunctional, m: int) -> Dict[Position, int]:
    fld = lam.field
    comp = distinguished_component(lam)
    if len(comp) == 1:
        return {(1, m): 0}
    shape = parse_comb(comp)  # type: ignore[arg-type]
    if shape.K == m:
        return {(1, m): 0}
    if len(shape.tines) == len(shape.rows):
        return {(shape.rows[-1], m): 0}
    # wt = 0: the last tine sits in column m and the bottom row folds into it
    upper, lower = shape.rows[-2], shape.rows[-1]
    gamma = shape.gammas[-1]
    moved = fld.neg(fld.div(fld.mul(gamma, shape.betas[-1]), shape.betas[-2]))
    return {(upper, m): 0, (lower, shape.K): 0, (lower, m): moved}


def _path_down(lam: DualFunctional, m: int) -> Dict[Position, int]:
    top = min(lam.column(m))
    return {(top, m): 0}


def lambda_down(
    lam: SupercharLabel, m: Optional[int] = None, budget: int = DEFAULT_BUDGET
) -> SupercharLabel:
    """λ↓: the label of U_(m) λ U_(m) for λ on P_(m-1)."""
    lam = _step_label(lam)
    target = _next_poset(lam, m)
    m = target.m or 0
    functional = lam.functional
    if stats(lam).lc == m:
        updates = _comb_down(functional, m) if lam.style is RepStyle.COMB else _path_down(functional, m)
        functional = functional.replaced(updates)
        logger.debug("λ↓ at m=%d: %s -> %s", m, lam.functional.entries, functional.entries)
    return canonical_supercharacter_rep(functional.on(target), target, lam.style, budget)


def restrict_step(lam: SupercharLabel, m: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Res from U_(m-1) to U_(m) of χ^λ.

    The branch is read off the path representative; comb labels go through it and
    come back as comb labels.
    """
    lam = _step_label(lam)
    if lam.style is RepStyle.COMB:
        path = canonical_supercharacter_rep(lam.functional, lam.poset, RepStyle.PATH, budget)
        out = Decomposition()
        for label, coeff in restrict_step(path, m, budget).terms.items():
            out.add(canonical_supercharacter_rep(label.functional, label.poset, RepStyle.COMB, budget), coeff)
        return out
    target = _next_poset(lam, m)
    m = target.m or 0
    info = stats(lam)
    k = info.lc
    # a single vertex (1,k) branches like wt = 1
    weighted = info.wt == 1 or len(info.component) == 1
    down = lambda_down(lam, m, budget)
    out = Decomposition()
    if k == m or not weighted:
        out.add(down)
    elif any(v for j, v in lam.functional.row(m).items() if j > k):
        out.add(down, lam.field.q)
    else:
        for t in lam.field.elements:
            shifted = down.functional.replaced({(m, k): t})
            out.add(canonical_supercharacter_rep(shifted, target, down.style, budget))
    logger.debug("restrict_step m=%d on %s gave %d terms", m, lam.functional.entries, len(out))
    return out


def _chain_label(lam: Union[SupercharLabel, DualFunctional]) -> DualFunctional:
    functional = lam.functional if isinstance(lam, SupercharLabel) else lam
    if not functional.poset.is_chain:
        raise StyleError(f"the ∗ products act on U_n labels, got {functional.poset.describe()}")
    for idx, (pos, _) in enumerate(functional.entries):
        for other, _ in functional.entries[idx + 1 :]:
            if pos[0] == other[0] or pos[1] == other[1]:
                raise StyleError(f"{functional.entries} is not a rook placement")
    return functional


Expansion = CounterType[DualFunctional]


def _star_right(lam: DualFunctional, i: int, k: int) -> Expansion:
    if i == k:
        return Counter({lam: 1})
    fld = lam.field
    l = next(iter(lam.row(i)), None)
    if l is not None and l > k:
        return _scaled(_star_right(lam, i + 1, k), fld.q)
    if l == k:
        return _star_right(lam.replaced({(i, k): 0}), i + 1, k)
    out = _star_right(lam, i + 1, k)
    if l is not None:
        for t in fld.nonzero:
            out.update(_star_right(lam.replaced({(i, k): t, (i, l): 0}), i + 1, l))
    else:
        for t in fld.nonzero:
            out[lam.replaced({(i, k): t})] += 1
    return out


def _star_left(j: int, l: int, mu: DualFunctional) -> Expansion:
    if j == l:
        return Counter({mu: 1})
    fld = mu.field
    i = next(iter(mu.column(l)), None)
    if i is not None and i < j:
        return _scaled(_star_left(j, l - 1, mu), fld.q)
    if i == j:
        return _star_left(j, l - 1, mu.replaced({(j, l): 0}))
    out = _star_left(j, l - 1, mu)
    if i is not None:
        for t in fld.nonzero:
            out.update(_star_left(i, l - 1, mu.replaced({(i, l): 0, (j, l): t})))
    else:
        for t in fld.nonzero:
            out[mu.replaced({(j, l): t})] += 1
    return out


def _scaled(expansion: Expansion, c: int) -> Expansion:
    return Counter({key: coeff * c for key, coeff in expansion.items()})


def _as_decomposition(expansion: Expansion, poset: PatternPoset, style: RepStyle) -> Decomposition:
    out = Decomposition()
    for functional, coeff in expansion.items():
        out.add(SupercharLabel(poset, style, functional), coeff)
    return out


def star_right(lam: SupercharLabel, i: int, k: int) -> Decomposition:
    """λ ∗_i {k} for a U_n label; i climbs toward k."""
    functional = _chain_label(lam)
    if not 1 <= i <= k <= functional.poset.n:
        raise PosetError(f"need 1 <= i <= k <= n, got i={i}, k={k}")
    return _as_decomposition(_star_right(functional, i, k), lam.poset, lam.style)


def star_left(j: int, l: int, mu: SupercharLabel) -> Decomposition:
    """{j} ∗_l μ for a U_n label; l descends toward j."""
    functional = _chain_label(mu)
    if not 1 <= j <= l <= functional.poset.n:
        raise PosetError(f"need 1 <= j <= l <= n, got j={j}, l={l}")
    return _as_decomposition(_star_left(j, l, functional), mu.poset, mu.style)


def drop_first(lam: DualFunctional, target: Optional[PatternPoset] = None) -> DualFunctional:
    """Delete row and column 1 and renumber j -> j-1."""
    if lam.row(1):
        raise PosetError(f"row 1 of {lam.entries} is not empty")
    target = target or chain_poset(lam.poset.n - 1)
    return DualFunctional.build(target, lam.field, {(i - 1, j - 1): v for (i, j), v in lam.entries})


def drop_last(lam: DualFunctional, target: Optional[PatternPoset] = None) -> DualFunctional:
    """Delete row and column n; indices are unchanged."""
    n = lam.poset.n
    if lam.column(n):
        raise PosetError(f"column {n} of {lam.entries} is not empty")
    target = target or chain_poset(n - 1)
    return DualFunctional.build(target, lam.field, lam.entries)


def _reindexed(expansion: Expansion, n: int, move: Callable[..., DualFunctional], style: RepStyle) -> Decomposition:
    target = chain_poset(n - 1)
    out = Decomposition()
    for functional, coeff in expansion.items():
        out.add(SupercharLabel(target, style, move(functional, target)), coeff)
    return out


def restrict_un(lam: SupercharLabel) -> Decomposition:
    """Res from U_n to the copy of U_{n-1} on rows and columns 2..n."""
    functional = _chain_label(lam)
    n = functional.poset.n
    if n < 2:
        raise PosetError("restriction needs n >= 2")
    head = functional.row(1)
    expansion = _star_right(functional, 1, next(iter(head))) if head else Counter({functional: 1})
    out = _reindexed(expansion, n, drop_first, lam.style)
    logger.info("restricted %s along the first row: %d terms", functional.entries, len(out))
    return out


def restrict_un_alt(lam: SupercharLabel) -> Decomposition:
    """Res from U_n to the copy of U_{n-1} on rows and columns 1..n-1."""
    functional = _chain_label(lam)
    n = functional.poset.n
    if n < 2:
        raise PosetError("restriction needs n >= 2")
    tail = functional.column(n)
    expansion = _star_left(next(iter(tail)), n, functional) if tail else Counter({functional: 1})
    out = _reindexed(expansion, n, drop_last, lam.style)
    logger.info("restricted %s along the last column: %d terms", functional.entries, len(out))
    return out


def restrict_through_chain(lam: SupercharLabel, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """restrict_step for m = 1..n, then the first-row reindexing."""
    functional = _chain_label(lam)
    n = functional.poset.n
    style = as_style(lam.style)
    if style is RepStyle.UN_CANONICAL:
        style = RepStyle.PATH
    current = Decomposition()
    current.add(SupercharLabel(interpolating_poset(n, 0), style, functional.on(interpolating_poset(n, 0))))
    for m in range(1, n + 1):
        nxt = Decomposition()
        for label, coeff in current.terms.items():
            nxt.extend(restrict_step(label, m, budget), coeff)
        current = nxt
    expansion = Counter({label.functional: coeff for label, coeff in current.terms.items()})
    return _reindexed(expansion, n, drop_first, as_style(lam.style))


def restrict(lam: SupercharLabel, embedding: str = FIRST_ROW) -> Decomposition:
    if embedding == FIRST_ROW:
        return restrict_un(lam)
    if embedding == LAST_COLUMN:
        return restrict_un_alt(lam)
    raise ValueError(f"unknown embedding {embedding!r}")
