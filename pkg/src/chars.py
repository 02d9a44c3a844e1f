"""Supercharacter values χ^λ(u) as exact elements of Q(ζ_p).

Every evaluator here returns θ(y·b − λ(u−1)) scaled by a power of q, where M·y = a.
This is the orientation of the orbit-sum definition χ^λ = (|Uλ|/|UλU|) Σ θ∘(−μ).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Set, Tuple, Union

from . import linalg
from .core import DualFunctional, PatternPoset, Position, UnipotentElement, components
from .errors import PosetError, StyleError
from .field import CycNumber, FiniteField
from .reps import (
    RepStyle,
    SupercharLabel,
    SuperclassLabel,
    bag,
    corners,
    distinguished_component,
    stats,
    walk_component,
)

logger = logging.getLogger(__name__)

# Returned values are the complex conjugates of θ(x·b)θ(λ(u−1)) with M·x = −a.
FORMULA_CONJUGATED = True
# When a column carries two entries and both the "two entries" and a one-entry
# condition hold, the two-entry branch decides the value.
TRIANGLE_BRANCH_PRECEDENCE = "two-entry-branch-first"

FunctionalLike = Union[DualFunctional, SupercharLabel]
ElementLike = Union[UnipotentElement, SuperclassLabel]


def _functional(lam: FunctionalLike) -> DualFunctional:
    return lam.functional if isinstance(lam, SupercharLabel) else lam


def _element(u: ElementLike) -> UnipotentElement:
    return u.element if isinstance(u, SuperclassLabel) else u


@dataclass
class FormulaWitness:
    """The linear system behind one general-formula evaluation."""

    a: Dict[Position, int]
    b: Dict[Position, int]
    M: Dict[Tuple[Position, Position], int]
    row_index: List[Position]
    col_index: List[Position]
    rank: int
    solution: Optional[List[int]]
    null_basis: List[List[int]]
    row_sets: Dict[int, Tuple[Position, ...]]
    col_sets: Dict[int, Tuple[Position, ...]]
    delta_rc: Dict[int, int]

    def matrix(self) -> List[List[int]]:
        return [[self.M.get((r, c), 0) for c in self.col_index] for r in self.row_index]

    def b_vector(self) -> List[int]:
        return [self.b.get(c, 0) for c in self.col_index]


@dataclass(frozen=True)
class CharValue:
    value: CycNumber
    zero_reason: Optional[str] = None
    witness: Optional[object] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.value.is_zero() != (self.zero_reason is not None):
            raise ValueError("a character value is zero exactly when a reason is recorded")

    @classmethod
    def zero(cls, p: int, reason: str, witness: Optional[object] = None) -> "CharValue":
        return cls(CycNumber.zero(p), reason, witness)


def _scaled_theta(fld: FiniteField, exponent: int, arg: int) -> CycNumber:
    scale = Fraction(fld.q) ** exponent
    return fld.theta(arg) * scale


@lru_cache(maxsize=4096)
def degree_exponent(lam: DualFunctional) -> int:
    """log_q |U_P λ| = Σ_j rank λ[{i : i < j}, {l : j < l}]."""
    poset, fld = lam.poset, lam.field
    entries = lam.as_dict()
    total = 0
    for j in range(1, poset.n + 1):
        rows = [i for i in poset.below(j) if any(r == i for r, _ in entries)]
        cols = poset.above(j)
        if not rows or not cols:
            continue
        block = [[entries.get((i, l), 0) for l in cols] for i in rows]
        total += linalg.rank(fld, block, len(cols))
    return total


def left_orbit_size(lam: FunctionalLike) -> int:
    lam = _functional(lam)
    return lam.field.q ** degree_exponent(lam)


def build_witness(lam: DualFunctional, u: UnipotentElement) -> FormulaWitness:
    poset, fld = lam.poset, lam.field
    x = u.as_dict()
    lam_d = lam.as_dict()
    a: Dict[Position, int] = {}
    b: Dict[Position, int] = {}
    M: Dict[Tuple[Position, Position], int] = {}
    for (j, k), xv in x.items():
        for i in poset.below(j):
            lik = lam_d.get((i, k), 0)
            if lik:
                a[(i, j)] = fld.add(a.get((i, j), 0), fld.mul(xv, lik))
            for l in poset.above(k):
                lil = lam_d.get((i, l), 0)
                if lil:
                    M[((i, j), (k, l))] = fld.add(M.get(((i, j), (k, l)), 0), fld.mul(xv, lil))
        for l in poset.above(k):
            ljl = lam_d.get((j, l), 0)
            if ljl:
                b[(k, l)] = fld.add(b.get((k, l), 0), fld.mul(xv, ljl))
    a = {pos: v for pos, v in a.items() if v}
    b = {pos: v for pos, v in b.items() if v}
    M = {key: v for key, v in M.items() if v}
    row_index = sorted({r for r, _ in M} | set(a))
    col_index = sorted({c for _, c in M} | set(b))
    rows = [[M.get((r, c), 0) for c in col_index] for r in row_index]
    rank = linalg.rank(fld, rows, len(col_index))
    solution = linalg.solve(fld, rows, [a.get(r, 0) for r in row_index], len(col_index))
    null_basis = linalg.null_space(fld, rows, len(col_index))
    row_sets: Dict[int, Tuple[Position, ...]] = {}
    col_sets: Dict[int, Tuple[Position, ...]] = {}
    delta: Dict[int, int] = {}
    for k in sorted({k for _, k in x}):
        row_sets[k] = tuple(sorted({r for (r, c) in M if c[0] == k and x.get((r[1], k))}))
        col_sets[k] = tuple(sorted({c for (_, c) in M if c[0] == k}))
        delta[k] = 1 if len(col_sets[k]) > len(row_sets[k]) else 0
    return FormulaWitness(a, b, M, row_index, col_index, rank, solution, null_basis, row_sets, col_sets, delta)


def general_char_value(
    lam: FunctionalLike, u: ElementLike, poset: Optional[PatternPoset] = None
) -> CharValue:
    """χ^λ(u) = |U_P λ| / q^{rank M} · θ(y·b − λ(u−1)) when M·y = a and b ∈ rowspace(M)."""
    lam, u = _functional(lam), _element(u)
    poset = poset or lam.poset
    if lam.poset != poset or u.poset != poset or lam.field != u.field:
        raise PosetError("λ and u must live on the same poset and field")
    fld = lam.field
    witness = build_witness(lam, u)
    if witness.solution is None:
        return CharValue.zero(fld.p, "no-solution", witness)
    # y·b is the same for every solution y exactly when b kills Null(M)
    if not linalg.annihilates(fld, witness.null_basis, witness.b_vector()):
        return CharValue.zero(fld.p, "b-outside-row-space", witness)
    lam_u = fld.dot((v for _, v in lam.entries), (u.get(*pos) for pos, _ in lam.entries))
    arg = fld.sub(fld.dot(witness.solution, witness.b_vector()), lam_u)
    exponent = degree_exponent(lam) - witness.rank
    return CharValue(_scaled_theta(fld, exponent, arg), None, witness)


def un_degree_exponent(lam: FunctionalLike) -> int:
    return sum(l - i - 1 for (i, l), _ in _functional(lam).entries)


def un_char_value(lam: SupercharLabel, u: SuperclassLabel) -> CharValue:
    """Closed form on U_n for rook-placement labels."""
    if lam.style is not RepStyle.UN_CANONICAL or u.style is not RepStyle.UN_CANONICAL:
        raise StyleError("un_char_value expects un_canonical labels")
    if lam.poset != u.poset:
        raise PosetError("labels live on different posets")
    fld = lam.field
    ld = lam.functional.as_dict()
    x = u.element.as_dict()
    for (j, k) in x:
        if any(ld.get((i, k)) for i in range(1, j)) or any(ld.get((j, l)) for l in range(k + 1, lam.poset.n + 1)):
            return CharValue.zero(fld.p, "un-vanishing")
    den = sum(1 for (j, k) in x for (i, l) in ld if i < j and k < l)
    lam_u = fld.dot((ld[pos] for pos in ld if pos in x), (x[pos] for pos in ld if pos in x))
    return CharValue(_scaled_theta(fld, un_degree_exponent(lam) - den, fld.neg(lam_u)))


@dataclass
class ComponentPair:
    lam_index: int
    u_index: int
    lam_part: DualFunctional
    u_part: UnipotentElement


@dataclass
class ComponentPlan:
    """χ^λ(u) = Π_T χ^{λ[T]}(1) Π_S χ^{λ[T]}(u[S]) / χ^{λ[T]}(1)."""

    lam_parts: List[DualFunctional]
    u_parts: List[UnipotentElement]
    degree_exponents: List[int]
    pairs: List[ComponentPair]

    def evaluate(self, evaluate_pair: Callable[[DualFunctional, UnipotentElement], CycNumber], fld: FiniteField) -> CycNumber:
        total = CycNumber.one(fld.p)
        for t, lam_part in enumerate(self.lam_parts):
            degree = Fraction(fld.q) ** self.degree_exponents[t]
            total = total * degree
            for pair in self.pairs:
                if pair.lam_index == t:
                    total = total * (evaluate_pair(pair.lam_part, pair.u_part) / degree)
        return total


def factor_by_components(lam: FunctionalLike, u: ElementLike, poset: Optional[PatternPoset] = None) -> ComponentPlan:
    lam, u = _functional(lam), _element(u)
    lam_parts = components(lam)
    u_parts = components(u)
    pairs = [
        ComponentPair(t, s, lp, up)  # type: ignore[arg-type]
        for t, lp in enumerate(lam_parts)
        for s, up in enumerate(u_parts)
    ]
    return ComponentPlan(lam_parts, u_parts, [degree_exponent(lp) for lp in lam_parts], pairs)  # type: ignore[arg-type]


@dataclass
class ColumnPlan:
    """χ^λ(u) = χ^λ(1) Π_k χ^λ(u[k]) / χ^λ(1) over the columns k of u − 1."""

    lam: DualFunctional
    degree_exponent: int
    columns: Dict[int, UnipotentElement]

    def evaluate(self, evaluate_column: Callable[[DualFunctional, UnipotentElement], CycNumber]) -> CycNumber:
        fld = self.lam.field
        degree = Fraction(fld.q) ** self.degree_exponent
        total = CycNumber.rational(fld.p, degree)
        for column in self.columns.values():
            total = total * (evaluate_column(self.lam, column) / degree)
        return total


def _check_comb_element(u: UnipotentElement) -> None:
    for (j, k) in u.support:
        if j == 1:
            continue
        if len([r for r in u.column(k) if r != 1]) > 1 or len(u.row(j)) > 1:
            raise StyleError("column factorization needs at most one entry per lower row and column")


def factor_by_columns(lam: SupercharLabel, u: SuperclassLabel, m: Optional[int] = None) -> ColumnPlan:
    if lam.style is not RepStyle.COMB or u.style is not RepStyle.COMB:
        raise StyleError("column factorization holds for comb representatives only")
    element = u.element
    _check_comb_element(element)
    cols = sorted({k for _, k in element.support})
    columns = {k: element.restricted([pos for pos in element.support if pos[1] == k]) for k in cols}
    return ColumnPlan(lam.functional, degree_exponent(lam.functional), columns)


@dataclass(frozen=True)
class CombShape:
    """One λ-component in comb form: head (1,K), rows r_d in column K, tines (r_d, t_d)."""

    K: int
    alpha: int
    rows: Tuple[int, ...]
    betas: Tuple[int, ...]
    tines: Tuple[int, ...]
    gammas: Tuple[int, ...]

    def value(self, i: int, l: int) -> int:
        if (i, l) == (1, self.K):
            return self.alpha
        for d, r in enumerate(self.rows):
            if r == i:
                if l == self.K:
                    return self.betas[d]
                if d < len(self.tines) and self.tines[d] == l:
                    return self.gammas[d]
        return 0


def parse_comb(part: DualFunctional) -> CombShape:
    heads = [(pos, v) for pos, v in part.entries if pos[0] == 1]
    if len(heads) != 1 or len(part) < 2:
        raise StyleError(f"{part.entries} is not a comb component")
    (_, K), alpha = heads[0]
    rows = tuple(sorted(r for r, c in part.support if c == K and r != 1))
    betas = tuple(part.get(r, K) for r in rows)
    tines: List[int] = []
    gammas: List[int] = []
    for r in rows:
        extra = [(c, v) for (rr, c), v in part.entries if rr == r and c != K]
        if len(extra) > 1:
            raise StyleError(f"row {r} of {part.entries} has more than one tine")
        if extra:
            if len(tines) != rows.index(r):
                raise StyleError(f"tines of {part.entries} are not on the top rows")
            tines.append(extra[0][0])
            gammas.append(extra[0][1])
    if len(rows) + len(tines) + 1 != len(part):
        raise StyleError(f"{part.entries} is not a comb component")
    return CombShape(K, alpha, rows, betas, tuple(tines), tuple(gammas))


def corner_exponent(poset: PatternPoset, i: int, l: int) -> int:
    """#{j : i < j < l in P}."""
    return sum(1 for j in range(i + 1, l) if poset.lt(i, j) and poset.lt(j, l))


def comb_degree_exponent(lam: FunctionalLike) -> int:
    """Closed-form log_q χ^λ(1) for comb (or chain rook) labels."""
    lam = _functional(lam)
    poset = lam.poset
    m = poset.m or 0
    total = 0
    for part in components(lam):
        if len(part) == 1:
            (i, l), _ = part.entries[0]
            total += corner_exponent(poset, i, l)
            continue
        shape = parse_comb(part)  # type: ignore[arg-type]
        tined = sum(t - r - 1 for r, t in zip(shape.rows, shape.tines))
        if len(shape.tines) == len(shape.rows):
            total += (shape.K - m - 1) + tined
        else:
            total += (shape.K - shape.rows[-1] - 1) + tined
    return total


def path_degree_exponent(lam: SupercharLabel) -> int:
    """log_q χ^λ(1) from corners: bottom corners of S_λ when wt = 0, top corners otherwise."""
    if lam.style is not RepStyle.PATH:
        raise StyleError("path_degree_exponent expects a path label")
    poset = lam.poset
    info = stats(lam)
    comp = set(info.component.support)
    side = "bottom" if info.wt == 0 and len(comp) > 1 else "top"
    all_corners = corners(lam)
    chosen = [pos for pos in all_corners[side] if pos in comp]
    chosen += [pos for pos in lam.functional.support if pos not in comp]
    return sum(corner_exponent(poset, i, l) for i, l in chosen)


@dataclass(frozen=True)
class ColumnFactor:
    column: int
    rho: int
    arg: int
    zero_tag: Optional[str] = None


def _zero_tag(distinguished: bool, two_entries: bool) -> str:
    if distinguished:
        return "CC4" if two_entries else "CC3"
    return "CC2" if two_entries else "CC1"


def column_factor(
    part: DualFunctional,
    m: int,
    k: int,
    w: int,
    lower: Optional[Tuple[int, int]],
    fld: FiniteField,
    shape: Optional[CombShape] = None,
) -> ColumnFactor:
    """Factor χ^{λ[T]}(u[k]) / χ^{λ[T]}(1) for u − 1 supported in {(1,k), (j,k)}.

    ``w`` is u_1k and ``lower`` is (j, u_jk) or None.  A multi-vertex ``part`` is read
    through ``shape`` when one is given.  The factor is either zero or q^{−rho}·θ(arg).
    """
    distinguished = any(i == 1 for i, _ in part.support)
    two = bool(w) and lower is not None
    tag = _zero_tag(distinguished, two)
    if lower is None:
        for (i, l), _ in part.entries:
            if i == 1 and l > k:
                return ColumnFactor(k, 0, 0, tag)
        return ColumnFactor(k, 0, fld.neg(fld.mul(w, part.get(1, k))))
    j, v = lower
    if w and j > m:
        raise StyleError(f"row-1 entry at column {k} next to a lower entry in row {j} > m")
    in_rows = set(range(2, j)) | ({1} if j > m else set())
    if len(part) == 1:
        (i0, l0), c0 = part.entries[0]
        inside = i0 in in_rows
        if inside and l0 == k:
            return ColumnFactor(k, 0, 0, tag)
        if l0 > k and not inside and (i0 == j or (i0 == 1 and w)):
            return ColumnFactor(k, 0, 0, tag)
        rho = 1 if inside and l0 > k else 0
        arg = 0
        if l0 == k and i0 == 1:
            arg = fld.sub(arg, fld.mul(w, c0))
        if l0 == k and i0 == j:
            arg = fld.sub(arg, fld.mul(v, c0))
        return ColumnFactor(k, rho, arg)
    shape = shape or parse_comb(part)
    direct = fld.add(fld.mul(w, shape.value(1, k)), fld.mul(v, shape.value(j, k)))
    if shape.K <= k:
        if shape.K == k and (j > m or shape.rows[0] < j):
            return ColumnFactor(k, 0, 0, tag)
        return ColumnFactor(k, 0, fld.neg(direct))
    p_count = sum(1 for r in shape.rows if r < j)
    T = len(shape.tines)
    active = sum(1 for d in range(min(p_count, T)) if shape.tines[d] > k)
    rho = active + (1 if (j > m or p_count > active) else 0)
    dstar = next((d for d in range(min(p_count, T)) if shape.tines[d] == k), None)
    e = shape.rows.index(j) if j in shape.rows else None
    head = fld.add(fld.mul(w, shape.alpha), fld.mul(v, shape.betas[e] if e is not None else 0))
    if dstar is not None and (j > m or p_count != dstar + 1):
        return ColumnFactor(k, 0, 0, tag)
    if j <= m:
        if e is not None and e < T and shape.tines[e] > k:
            return ColumnFactor(k, 0, 0, tag)
        if p_count == active and head:
            special = bool(w) and e is not None
            return ColumnFactor(k, 0, 0, f"{tag}:special" if special else tag)
    arg = fld.neg(direct)
    if dstar is not None:
        ratio = fld.div(shape.gammas[dstar], shape.betas[dstar])
        arg = fld.add(arg, fld.mul(ratio, head))
    return ColumnFactor(k, rho, arg)


def _column_entries(u: UnipotentElement, k: int) -> Tuple[int, Optional[Tuple[int, int]]]:
    col = u.column(k)
    w = col.pop(1, 0)
    if len(col) > 1:
        raise StyleError(f"column {k} carries more than one entry below row 1")
    lower = next(iter(col.items()), None)
    return w, lower


def _comb_factors(
    lam: DualFunctional, u: UnipotentElement, m: int
) -> Tuple[List[Tuple[int, ColumnFactor]], List[DualFunctional]]:
    _check_comb_element(u)
    parts = components(lam)
    cols = sorted({k for _, k in u.support})
    factors = []
    for t, part in enumerate(parts):
        for k in cols:
            w, lower = _column_entries(u, k)
            factors.append((t, column_factor(part, m, k, w, lower, lam.field)))  # type: ignore[arg-type]
    return factors, parts  # type: ignore[return-value]


def comb_char_value(lam: SupercharLabel, u: SuperclassLabel, m: Optional[int] = None) -> CharValue:
    """Column-by-column closed form on comb representatives."""
    if lam.style is not RepStyle.COMB or u.style is not RepStyle.COMB:
        raise StyleError("comb_char_value expects comb labels")
    if lam.poset != u.poset:
        raise PosetError("labels live on different posets")
    m = lam.poset.m if m is None else m
    fld = lam.field
    factors, _ = _comb_factors(lam.functional, u.element, m or 0)
    witness = [f for _, f in factors]
    for _, f in factors:
        if f.zero_tag:
            return CharValue.zero(fld.p, f.zero_tag, witness)
    exponent = comb_degree_exponent(lam) - sum(f.rho for _, f in factors)
    arg = 0
    for _, f in factors:
        arg = fld.add(arg, f.arg)
    return CharValue(_scaled_theta(fld, exponent, arg), None, witness)


ColumnEntries = Dict[int, Tuple[int, Optional[Tuple[int, int]]]]


def fold_path(part: DualFunctional) -> CombShape:
    """Column data of a path component: row i_d meets column c_1 in −y_1·bag(y_2d)."""
    walk = walk_component(part)
    fld = walk.field
    minus_y1 = fld.neg(walk.values[0])
    rows: List[int] = []
    betas: List[int] = []
    tines: List[int] = []
    gammas: List[int] = []
    for idx, (r, c) in enumerate(walk.positions[1:], start=2):
        if idx % 2 == 0:
            rows.append(r)
            betas.append(fld.mul(minus_y1, bag(walk, idx).value))
        else:
            tines.append(c)
            gammas.append(walk.values[idx - 1])
    K = walk.positions[0][1]
    return CombShape(K, walk.values[0], tuple(rows), tuple(betas), tuple(tines), tuple(gammas))


def path_columns(u: UnipotentElement) -> ColumnEntries:
    """(u_1k, (j, u_jk)) per column once the odd walk vertices of S_u sit in row 1 as bags."""
    out: ColumnEntries = {}
    walked: Set[Position] = set()
    comp = distinguished_component(u)
    if len(comp) > 1:
        walk = walk_component(comp)
        for idx, (r, c) in enumerate(walk.positions, start=1):
            if idx % 2:
                out[c] = (bag(walk, idx).value, None)
            else:
                out[c] = (out[c][0], (r, walk.values[idx - 1]))
        walked = set(walk.positions)
    for (r, c), v in u.entries:
        if (r, c) not in walked:
            out[c] = (v, None) if r == 1 else (0, (r, v))
    return out


def path_corner_drop(lam: SupercharLabel, u: SuperclassLabel) -> int:
    """Σ over left corners u_jk (j > 1) of the bottom corners λ_il with i < j in P and k < l.

    The bottom corners of S_λ are the vertices its walk enters along a column; a
    weight-one walk also offers its last vertex to rows j with 1 < j in P.
    """
    poset = lam.poset
    element = u.element
    left = []
    for j in range(2, poset.n + 1):
        row = element.row(j)
        if row:
            left.append((j, min(row)))
    drop = 0
    for part in components(lam.functional):
        tail: Optional[Position] = None
        if len(part) == 1:
            bottom = list(part.support)
        else:
            walk = walk_component(part)
            bottom = list(walk.positions[1::2])
            if len(walk) % 2:
                tail = walk.positions[-1]
        for j, k in left:
            drop += sum(1 for i, l in bottom if poset.lt(i, j) and k < l)
            if tail is not None and poset.lt(1, j) and k < tail[1]:
                drop += 1
    return drop


@dataclass(frozen=True)
class Compatibility:
    compatible: bool
    rule: str
    column: Optional[int] = None


def _path_tag(lam_distinguished: bool, u_distinguished: bool, comb_tag: str) -> str:
    base = {(False, False): "PC1", (False, True): "PC2", (True, False): "PC3", (True, True): "PC4"}
    tag = base[(lam_distinguished, u_distinguished)]
    return f"{tag}:touch" if comb_tag.endswith(":special") else tag


def compatibility(
    lam_part: DualFunctional, u_part: UnipotentElement, style: Union[str, RepStyle]
) -> Compatibility:
    """Which comb (CC1-CC4) or path (PC1-PC4) rule a component pair satisfies or breaks."""
    style = RepStyle(style)
    m = lam_part.poset.m or 0
    lam_dist = any(i == 1 for i, _ in lam_part.support)
    u_dist = any(i == 1 for i, _ in u_part.support)
    shape: Optional[CombShape] = None
    if style is RepStyle.PATH:
        if lam_dist and len(lam_part) > 1:
            shape = fold_path(lam_part)
        columns = path_columns(u_part)
    elif style is RepStyle.COMB:
        columns = {k: _column_entries(u_part, k) for k in {k for _, k in u_part.support}}
    else:
        raise StyleError("compatibility is defined for comb and path components")
    for k in sorted(columns):
        w, lower = columns[k]
        factor = column_factor(lam_part, m, k, w, lower, lam_part.field, shape)
        if factor.zero_tag:
            rule = factor.zero_tag if style is RepStyle.COMB else _path_tag(lam_dist, u_dist, factor.zero_tag)
            return Compatibility(False, rule, k)
    return Compatibility(True, "compatible")


@dataclass
class PathWitness:
    corners: Dict[str, List[Position]]
    corner_drop: int = 0
    factors: List[Tuple[int, int, ColumnFactor]] = field(default_factory=list)


def path_char_value(lam: SupercharLabel, u: SuperclassLabel, m: Optional[int] = None) -> CharValue:
    """Path representatives read along their walks.

    Vanishing and phase come column by column, with the odd vertices of S_u folded
    into row 1 as bags and S_λ folded into its first column.  The q-power is
    χ^λ(1) from corners, lowered once per (left corner of u, bottom corner of λ)
    pair that sees across it.
    """
    if lam.style is not RepStyle.PATH or u.style is not RepStyle.PATH:
        raise StyleError("path_char_value expects path labels")
    if lam.poset != u.poset:
        raise PosetError("labels live on different posets")
    m = lam.poset.m if m is None else m
    fld = lam.field
    columns = path_columns(u.element)
    lam_parts = components(lam.functional)
    shapes = [fold_path(part) if len(part) > 1 else None for part in lam_parts]  # type: ignore[arg-type]
    witness = PathWitness(corners=corners(lam))
    arg = 0
    for s, u_part in enumerate(components(u.element)):
        u_dist = any(i == 1 for i, _ in u_part.support)
        cols = sorted({k for _, k in u_part.support})
        for t, lam_part in enumerate(lam_parts):
            lam_dist = any(i == 1 for i, _ in lam_part.support)
            for k in cols:
                w, lower = columns[k]
                factor = column_factor(lam_part, m or 0, k, w, lower, fld, shapes[t])  # type: ignore[arg-type]
                witness.factors.append((t, s, factor))
                if factor.zero_tag:
                    return CharValue.zero(fld.p, _path_tag(lam_dist, u_dist, factor.zero_tag), witness)
                arg = fld.add(arg, factor.arg)
    witness.corner_drop = path_corner_drop(lam, u)
    exponent = path_degree_exponent(lam) - witness.corner_drop
    return CharValue(_scaled_theta(fld, exponent, arg), None, witness)
