"""Orbit normal forms for superclasses and supercharacters.

Chains use rook placements (one nonzero per row and column).  On the interpolating
posets P_(m) every normal form is a rook placement plus at most one distinguished
component through row 1, shaped as a comb or as a staircase path.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from networkx.utils import UnionFind

from .core import (
    DualFunctional,
    PatternPoset,
    Position,
    SparseMatrix,
    UnipotentElement,
    apply_move,
    class_moves,
    dual_moves,
    matrix_graph,
)
from .errors import BudgetExceeded, PosetError, StyleError
from .field import FieldScalar, FiniteField

logger = logging.getLogger(__name__)

CLASS = "class"
CHARACTER = "character"

DEFAULT_BUDGET = 1 << 20


class RepStyle(str, Enum):
    UN_CANONICAL = "un_canonical"
    COMB = "comb"
    PATH = "path"


def as_style(style: Union[str, RepStyle]) -> RepStyle:
    try:
        return RepStyle(style)
    except ValueError as exc:
        raise StyleError(f"unknown representative style {style!r}") from exc


def check_style(poset: PatternPoset, style: Union[str, RepStyle]) -> RepStyle:
    style = as_style(style)
    if style is RepStyle.UN_CANONICAL and not poset.is_chain:
        raise StyleError(f"style un_canonical needs a chain poset, got {poset.describe()}")
    if style in (RepStyle.COMB, RepStyle.PATH) and not poset.is_interpolating:
        raise StyleError(f"style {style.value} needs an interpolating poset, got {poset.describe()}")
    return style


def kind_of(matrix: SparseMatrix) -> str:
    return CHARACTER if isinstance(matrix, DualFunctional) else CLASS


def _sort_key(matrix: SparseMatrix) -> Tuple[int, Tuple]:
    return (len(matrix.entries), matrix.entries)


@dataclass(frozen=True)
class SupercharLabel:
    poset: PatternPoset
    style: RepStyle
    functional: DualFunctional

    def __post_init__(self) -> None:
        object.__setattr__(self, "style", as_style(self.style))
        if not is_normal_form(self.functional, self.poset, self.style):
            raise StyleError(f"{self.functional.entries} is not a {self.style.value} normal form")

    @property
    def field(self) -> FiniteField:
        return self.functional.field

    @property
    def matrix(self) -> DualFunctional:
        return self.functional

    def sort_key(self) -> Tuple[int, Tuple]:
        return _sort_key(self.functional)


@dataclass(frozen=True)
class SuperclassLabel:
    poset: PatternPoset
    style: RepStyle
    element: UnipotentElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "style", as_style(self.style))
        if not is_normal_form(self.element, self.poset, self.style):
            raise StyleError(f"{self.element.entries} is not a {self.style.value} normal form")

    @property
    def field(self) -> FiniteField:
        return self.element.field

    @property
    def matrix(self) -> UnipotentElement:
        return self.element

    def sort_key(self) -> Tuple[int, Tuple]:
        return _sort_key(self.element)


Label = Union[SupercharLabel, SuperclassLabel]


def _class_comb_shapes(n: int, m: int) -> Iterator[FrozenSet[Position]]:
    cols = range(m + 1, n + 1)
    rows = range(2, m + 1)
    for r in range(1, len(cols) + 1):
        for ks in itertools.combinations(cols, r):
            for partners in (r - 1, r):
                if partners < 1:
                    continue
                for picked in itertools.combinations(rows, partners):
                    is_ = sorted(picked, reverse=True)
                    shape = {(1, k) for k in ks} | {(i, ks[d]) for d, i in enumerate(is_)}
                    yield frozenset(shape)


def _character_comb_shapes(n: int, m: int) -> Iterator[FrozenSet[Position]]:
    rows = range(2, m + 1)
    for K in range(m + 1, n + 1):
        tine_cols = range(m + 1, K)
        for R in range(1, len(rows) + 1):
            for rs in itertools.combinations(rows, R):
                for T in (R - 1, R):
                    for picked in itertools.combinations(tine_cols, T):
                        ts = sorted(picked, reverse=True)
                        shape = {(1, K)} | {(r, K) for r in rs} | {(rs[d], t) for d, t in enumerate(ts)}
                        yield frozenset(shape)


def _walk_positions(rows: Sequence[int], cols: Sequence[int]) -> List[Position]:
    # (1,c1), (r1,c1), (r1,c2), (r2,c2), ...
    out = [(1, cols[0])]
    for d, r in enumerate(rows):
        out.append((r, cols[d]))
        if d + 1 < len(cols):
            out.append((r, cols[d + 1]))
    return out


def _path_shapes(n: int, m: int, kind: str) -> Iterator[FrozenSet[Position]]:
    rows = range(2, m + 1)
    cols = range(m + 1, n + 1)
    for s in range(1, len(rows) + 1):
        for rs in itertools.combinations(rows, s):
            row_seq = sorted(rs, reverse=(kind == CLASS))
            for c in (s, s + 1):
                for cs in itertools.combinations(cols, c):
                    col_seq = sorted(cs, reverse=(kind == CHARACTER))
                    yield frozenset(_walk_positions(row_seq, col_seq))


@lru_cache(maxsize=None)
def distinguished_shapes(n: int, m: int, kind: str, style: RepStyle) -> FrozenSet[FrozenSet[Position]]:
    """Position sets allowed for the non-singleton component of a normal form."""
    if style is RepStyle.UN_CANONICAL or m < 2 or m >= n:
        return frozenset()
    if style is RepStyle.COMB:
        shapes = _class_comb_shapes(n, m) if kind == CLASS else _character_comb_shapes(n, m)
    else:
        shapes = _path_shapes(n, m, kind)
    return frozenset(shapes)


def _support_components(positions: Sequence[Position]) -> List[List[Position]]:
    forest = UnionFind()
    for pos in positions:
        forest.union(pos, ("r", pos[0]), ("c", pos[1]))
    groups: Dict[object, List[Position]] = {}
    for pos in positions:
        groups.setdefault(forest[pos], []).append(pos)
    return list(groups.values())


def _support_is_normal(positions: Sequence[Position], shapes: FrozenSet[FrozenSet[Position]]) -> bool:
    big = [c for c in _support_components(positions) if len(c) > 1]
    if not big:
        return True
    return len(big) == 1 and frozenset(big[0]) in shapes


def is_normal_form(matrix: SparseMatrix, poset: PatternPoset, style: Union[str, RepStyle]) -> bool:
    style = check_style(poset, style)
    if any(pos not in poset.index for pos in matrix.support):
        return False
    m = poset.m if poset.m is not None else 0
    shapes = distinguished_shapes(poset.n, m, kind_of(matrix), style)
    return _support_is_normal(matrix.support, shapes)


def _make_label(matrix: SparseMatrix, poset: PatternPoset, style: RepStyle) -> Label:
    if isinstance(matrix, DualFunctional):
        return SupercharLabel(poset, style, matrix)
    return SuperclassLabel(poset, style, matrix)


def _reduce_class_rook(matrix: UnipotentElement) -> UnipotentElement:
    """Chain superclass reduction: lowest row first, its leftmost entry is the pivot."""
    fld = matrix.field
    x = matrix.as_dict()
    done_rows: set[int] = set()
    while True:
        live = [pos for pos, v in x.items() if v and pos[0] not in done_rows]
        if not live:
            break
        j = max(r for r, _ in live)
        k = min(c for r, c in live if r == j)
        pivot = x[(j, k)]
        for l in sorted(c for (r, c), v in list(x.items()) if r == j and c > k and v):
            scale = fld.neg(fld.div(x[(j, l)], pivot))
            for (r, c), v in list(x.items()):
                if c == k and v:
                    x[(r, l)] = fld.add(x.get((r, l), 0), fld.mul(scale, v))
            logger.debug("column %d += %d * column %d", l, scale, k)
        for i in sorted(r for (r, c), v in list(x.items()) if c == k and r < j and v):
            scale = fld.neg(fld.div(x[(i, k)], pivot))
            x[(i, k)] = fld.add(x[(i, k)], fld.mul(scale, pivot))
            logger.debug("row %d += %d * row %d", i, scale, j)
        done_rows.add(j)
    return UnipotentElement.build(matrix.poset, fld, x)


def _reduce_dual_rook(matrix: DualFunctional) -> DualFunctional:
    """Chain supercharacter reduction: top row first, its rightmost entry is the pivot."""
    fld = matrix.field
    x = matrix.as_dict()
    done_rows: set[int] = set()
    while True:
        live = [pos for pos, v in x.items() if v and pos[0] not in done_rows]
        if not live:
            break
        i = min(r for r, _ in live)
        l = max(c for r, c in live if r == i)
        pivot = x[(i, l)]
        for k in sorted(c for (r, c), v in list(x.items()) if r == i and c < l and v):
            scale = fld.neg(fld.div(x[(i, k)], pivot))
            for (r, c), v in list(x.items()):
                if c == l and v and r < k:
                    x[(r, k)] = fld.add(x.get((r, k), 0), fld.mul(scale, v))
            logger.debug("column %d += %d * column %d", k, scale, l)
        for j in sorted(r for (r, c), v in list(x.items()) if c == l and r > i and v):
            scale = fld.neg(fld.div(x[(j, l)], pivot))
            x[(j, l)] = fld.add(x[(j, l)], fld.mul(scale, pivot))
            logger.debug("row %d += %d * row %d", j, scale, i)
        done_rows.add(i)
    return DualFunctional.build(matrix.poset, fld, x, strict=False)


def _orbit_search(matrix: SparseMatrix, poset: PatternPoset, style: RepStyle, budget: int) -> SparseMatrix:
    """Breadth-first walk of the two-sided orbit until a normal form appears."""
    fld = matrix.field
    kind = kind_of(matrix)
    moves = class_moves(poset) if kind == CLASS else dual_moves(poset)
    scalars = [fld.p**k for k in range(fld.e)]
    shapes = distinguished_shapes(poset.n, poset.m or 0, kind, style)
    J = poset.J
    start = matrix.vector()
    seen = {start}
    queue = deque([start])
    while queue:
        vec = queue.popleft()
        support = [J[k] for k, v in enumerate(vec) if v]
        if _support_is_normal(support, shapes):
            logger.debug("normal form reached after visiting %d orbit elements", len(seen))
            return type(matrix).from_vector(poset, fld, vec)
        for move in moves:
            for c in scalars:
                nxt = apply_move(fld, vec, move, c)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > budget:
                        raise BudgetExceeded(len(seen), budget, what="orbit")
                    queue.append(nxt)
    raise StyleError(f"orbit of {matrix.entries} holds no {style.value} normal form")


def _canonical(matrix: SparseMatrix, poset: PatternPoset, style: Union[str, RepStyle], budget: int) -> SparseMatrix:
    style = check_style(poset, style)
    if matrix.poset != poset:
        matrix = matrix.on(poset, strict=isinstance(matrix, UnipotentElement))
    if is_normal_form(matrix, poset, style):
        return matrix
    if style is RepStyle.UN_CANONICAL:
        if isinstance(matrix, UnipotentElement):
            return _reduce_class_rook(matrix)
        return _reduce_dual_rook(matrix)  # type: ignore[arg-type]
    return _orbit_search(matrix, poset, style, budget)


def canonical_superclass_rep(
    u: UnipotentElement, poset: PatternPoset, style: Union[str, RepStyle], budget: int = DEFAULT_BUDGET
) -> SuperclassLabel:
    style = as_style(style)
    return SuperclassLabel(poset, style, _canonical(u, poset, style, budget))  # type: ignore[arg-type]


def canonical_supercharacter_rep(
    lam: DualFunctional, poset: PatternPoset, style: Union[str, RepStyle], budget: int = DEFAULT_BUDGET
) -> SupercharLabel:
    style = as_style(style)
    return SupercharLabel(poset, style, _canonical(lam, poset, style, budget))  # type: ignore[arg-type]


@dataclass(frozen=True)
class PathComponentWalk:
    """Vertices of a component read from its row-1 vertex, alternating column then row."""

    positions: Tuple[Position, ...]
    values: Tuple[int, ...]
    field: FiniteField

    def __len__(self) -> int:
        return len(self.values)


def walk_component(matrix: SparseMatrix, positions: Optional[Sequence[Position]] = None) -> PathComponentWalk:
    entries = matrix.as_dict()
    pool = set(positions if positions is not None else entries)
    starts = [pos for pos in pool if pos[0] == 1]
    if len(starts) != 1:
        raise StyleError("a walk needs exactly one vertex in row 1")
    order = [starts[0]]
    pool.discard(starts[0])
    same_column = True
    while pool:
        r, c = order[-1]
        nxt = [pos for pos in pool if (pos[1] == c if same_column else pos[0] == r)]
        if len(nxt) != 1:
            break
        order.append(nxt[0])
        pool.discard(nxt[0])
        same_column = not same_column
    if pool:
        raise StyleError(f"component {sorted(order)} + {sorted(pool)} is not a path")
    return PathComponentWalk(tuple(order), tuple(entries[pos] for pos in order), matrix.field)


def bag(walk: PathComponentWalk, j: int) -> FieldScalar:
    """x_j (-x_{j-1})^{-1} x_{j-2} (-x_{j-3})^{-1} ... down to x_1 (1-based j)."""
    if not 1 <= j <= len(walk):
        raise IndexError(f"walk index {j} outside 1..{len(walk)}")
    fld = walk.field
    acc = 1
    for step, idx in enumerate(range(j, 0, -1)):
        x = walk.values[idx - 1]
        acc = fld.mul(acc, x if step % 2 == 0 else fld.inv(fld.neg(x)))
    return FieldScalar(acc, fld)


def distinguished_component(matrix: SparseMatrix) -> SparseMatrix:
    """The component of the matrix graph holding a row-1 vertex (empty if none)."""
    graph = matrix_graph(matrix)
    for k in range(len(graph.components)):
        positions = graph.component_positions(k)
        if any(i == 1 for i, _ in positions):
            return matrix.restricted(positions)
    return type(matrix).zero(matrix.poset, matrix.field)


def path_to_comb_class(label: SuperclassLabel) -> SuperclassLabel:
    """Column sweeps turning the path component into a comb: row 1 gets bag(x_1), bag(x_3), ..."""
    if label.style is not RepStyle.PATH:
        raise StyleError("path_to_comb_class expects a path-style superclass label")
    u = label.element
    comp = distinguished_component(u)
    if len(comp) <= 1:
        return SuperclassLabel(label.poset, RepStyle.COMB, u)
    walk = walk_component(comp)
    updates: Dict[Position, int] = {}
    for idx, pos in enumerate(walk.positions, start=1):
        if idx == 1:
            continue
        if idx % 2 == 1:
            updates[pos] = 0
            updates[(1, pos[1])] = bag(walk, idx).value
    return SuperclassLabel(label.poset, RepStyle.COMB, u.replaced(updates, strict=True))


def path_to_comb_character(label: SupercharLabel) -> SupercharLabel:
    """Row sweeps folding the path into column k_1: entry -y_1·bag(y_2d) at each row i_d."""
    if label.style is not RepStyle.PATH:
        raise StyleError("path_to_comb_character expects a path-style supercharacter label")
    lam = label.functional
    comp = distinguished_component(lam)
    if len(comp) <= 1:
        return SupercharLabel(label.poset, RepStyle.COMB, lam)
    walk = walk_component(comp)
    fld = lam.field
    head = walk.positions[0][1]
    minus_y1 = fld.neg(walk.values[0])
    updates: Dict[Position, int] = {}
    for idx, pos in enumerate(walk.positions, start=1):
        if idx >= 4 and idx % 2 == 0:
            updates[pos] = 0
            updates[(pos[0], head)] = fld.mul(minus_y1, bag(walk, idx).value)
    return SupercharLabel(label.poset, RepStyle.COMB, lam.replaced(updates, strict=True))


@dataclass(frozen=True)
class LabelStats:
    component: DualFunctional
    lc: int
    br: int
    wt: int


def stats(label: SupercharLabel) -> LabelStats:
    if label.style not in (RepStyle.COMB, RepStyle.PATH):
        raise StyleError("lc/br/wt are defined for comb and path labels")
    lam = label.functional
    comp = distinguished_component(lam)
    if comp.is_zero():
        return LabelStats(comp, 0, label.poset.n, 0)  # type: ignore[arg-type]
    lc = min(c for _, c in comp.support)
    br = max(r for r, _ in comp.support)
    wt = len(lam.row(br)) - 1
    return LabelStats(comp, lc, br, wt)  # type: ignore[arg-type]


def corners(label: Label) -> Dict[str, List[Position]]:
    """Extremal vertices of every component of the label's graph.

    Characters get ``top``/``bottom`` (first/last vertex of each column within its
    component), classes get ``left``/``right`` (first/last vertex of each row).
    A singleton is a corner on both sides.
    """
    matrix = label.matrix
    graph = matrix_graph(matrix)
    by_column = isinstance(label, SupercharLabel)
    first, last = ("top", "bottom") if by_column else ("left", "right")
    out: Dict[str, List[Position]] = {first: [], last: []}
    for k in range(len(graph.components)):
        positions = graph.component_positions(k)
        lines: Dict[int, List[Position]] = {}
        for pos in positions:
            lines.setdefault(pos[1] if by_column else pos[0], []).append(pos)
        for members in lines.values():
            members.sort()
            out[first].append(members[0])
            out[last].append(members[-1])
    return {key: sorted(val) for key, val in out.items()}


def _rook_placements(free: Sequence[Position]) -> Iterator[Tuple[Position, ...]]:
    def extend(start: int, rows: FrozenSet[int], cols: FrozenSet[int]) -> Iterator[Tuple[Position, ...]]:
        yield ()
        for k in range(start, len(free)):
            i, j = free[k]
            if i in rows or j in cols:
                continue
            for rest in extend(k + 1, rows | {i}, cols | {j}):
                yield ((i, j),) + rest

    return extend(0, frozenset(), frozenset())


def enumerate_labels(
    poset: PatternPoset, fld: FiniteField, style: Union[str, RepStyle], kind: str
) -> List[Label]:
    """One normal form per two-sided orbit, in a deterministic order."""
    style = check_style(poset, style)
    if kind not in (CLASS, CHARACTER):
        raise PosetError(f"kind must be {CLASS!r} or {CHARACTER!r}, got {kind!r}")
    cls = UnipotentElement if kind == CLASS else DualFunctional
    shapes = sorted(distinguished_shapes(poset.n, poset.m or 0, kind, style), key=lambda s: (len(s), sorted(s)))
    labels: List[Label] = []
    for shape in [frozenset()] + shapes:
        used_rows = {i for i, _ in shape}
        used_cols = {j for _, j in shape}
        free = [pos for pos in poset.J if pos[0] not in used_rows and pos[1] not in used_cols]
        for rook in _rook_placements(free):
            positions = sorted(shape) + list(rook)
            for values in itertools.product(fld.nonzero, repeat=len(positions)):
                matrix = cls(poset, fld, tuple(sorted(zip(positions, values))))
                labels.append(_make_label(matrix, poset, style))
    logger.info("enumerated %d %s labels on %s (q=%d, %s)", len(labels), kind, poset.describe(), fld.q, style.value)
    return labels
