from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Type, TypeVar

import networkx as nx

from .errors import PosetError
from .field import FieldScalar, FiniteField

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


@dataclass(frozen=True)
class PatternPoset:
    """Strict partial order on 1..n refining the integer order.

    ``m`` is set for members of the interpolating family P_(m) (the chain is m = 0).
    """

    n: int
    less: FrozenSet[Position]
    m: Optional[int] = None
    J: Tuple[Position, ...] = field(init=False, repr=False, compare=False)
    index: Dict[Position, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PosetError(f"poset size must be positive, got {self.n}")
        for i, j in self.less:
            if not 1 <= i < j <= self.n:
                raise PosetError(f"relation {i} < {j} does not refine 1 < ... < {self.n}")
        for i, j in self.less:
            for k, l in self.less:
                if j == k and (i, l) not in self.less:
                    raise PosetError(f"relation is not transitive at {i} < {j} < {l}")
        ordered = tuple(sorted(self.less))
        object.__setattr__(self, "J", ordered)
        object.__setattr__(self, "index", {pos: k for k, pos in enumerate(ordered)})

    def lt(self, i: int, j: int) -> bool:
        return (i, j) in self.index

    def below(self, j: int) -> List[int]:
        return [i for i in range(1, j) if (i, j) in self.index]

    def above(self, i: int) -> List[int]:
        return [l for l in range(i + 1, self.n + 1) if (i, l) in self.index]

    @property
    def is_chain(self) -> bool:
        return len(self.less) == self.n * (self.n - 1) // 2

    @property
    def is_interpolating(self) -> bool:
        return self.m is not None

    def describe(self) -> str:
        if self.m is None:
            return f"P(n={self.n}, |J|={len(self.J)})"
        return f"P_({self.m}) on n={self.n}"


def chain_poset(n: int) -> PatternPoset:
    return interpolating_poset(n, 0)


def interpolating_poset(n: int, m: int) -> PatternPoset:
    """2 < 3 < ... < n together with 1 < j exactly for j > m."""
    if not 0 <= m <= n:
        raise PosetError(f"m={m} outside 0..{n}")
    less = {(i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)}
    less |= {(1, j) for j in range(max(m, 1) + 1, n + 1)}
    return PatternPoset(n=n, less=frozenset(less), m=m)


M = TypeVar("M", bound="SparseMatrix")


@dataclass(frozen=True)
class SparseMatrix:
    """Strictly upper-triangular data on J stored as a sorted (position, value) tuple."""

    poset: PatternPoset
    field: FiniteField
    entries: Tuple[Tuple[Position, int], ...] = ()

    @classmethod
    def build(
        cls: Type[M],
        poset: PatternPoset,
        fld: FiniteField,
        values: Mapping[Position, int] | Iterable[Tuple[Position, int]] = (),
        strict: bool = True,
    ) -> M:
        items = values.items() if isinstance(values, Mapping) else values
        cleaned: Dict[Position, int] = {}
        for (i, j), v in items:
            v = int(v.value if isinstance(v, FieldScalar) else v)
            if not 0 <= v < fld.q:
                raise PosetError(f"entry {v} at ({i},{j}) is not in F_{fld.q}")
            if not v:
                continue
            if (i, j) not in poset.index:
                if strict:
                    raise PosetError(f"entry at ({i},{j}) lies outside J")
                continue
            cleaned[(i, j)] = v
        return cls(poset, fld, tuple(sorted(cleaned.items())))

    @classmethod
    def zero(cls: Type[M], poset: PatternPoset, fld: FiniteField) -> M:
        return cls(poset, fld, ())

    @classmethod
    def from_vector(cls: Type[M], poset: PatternPoset, fld: FiniteField, vector: Sequence[int]) -> M:
        return cls(poset, fld, tuple((pos, v) for pos, v in zip(poset.J, vector) if v))

    def as_dict(self) -> Dict[Position, int]:
        return dict(self.entries)

    def vector(self) -> Tuple[int, ...]:
        vec = [0] * len(self.poset.J)
        for pos, v in self.entries:
            vec[self.poset.index[pos]] = v
        return tuple(vec)

    def get(self, i: int, j: int) -> int:
        for pos, v in self.entries:
            if pos == (i, j):
                return v
        return 0

    def scalar(self, i: int, j: int) -> FieldScalar:
        return FieldScalar(self.get(i, j), self.field)

    @property
    def support(self) -> Tuple[Position, ...]:
        return tuple(pos for pos, _ in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Tuple[Position, int]]:
        return iter(self.entries)

    def row(self, i: int) -> Dict[int, int]:
        return {l: v for (r, l), v in self.entries if r == i}

    def column(self, k: int) -> Dict[int, int]:
        return {r: v for (r, c), v in self.entries if c == k}

    def restricted(self: M, positions: Iterable[Position]) -> M:
        keep = set(positions)
        return type(self)(self.poset, self.field, tuple(e for e in self.entries if e[0] in keep))

    def replaced(self: M, updates: Mapping[Position, int], strict: bool = False) -> M:
        merged = self.as_dict()
        merged.update(updates)
        return type(self).build(self.poset, self.field, merged, strict=strict)

    def on(self: M, poset: PatternPoset, strict: bool = False) -> M:
        """The same entries read on another poset over 1..n (masked when not strict)."""
        return type(self).build(poset, self.field, self.entries, strict=strict)

    def to_json(self) -> Dict[str, object]:
        return {"n": self.poset.n, "entries": [[i, j, str(v)] for (i, j), v in self.entries]}


class UnipotentElement(SparseMatrix):
    """u in U_P, stored through its off-diagonal part u - 1."""

    @classmethod
    def identity(cls, poset: PatternPoset, fld: FiniteField) -> "UnipotentElement":
        return cls.zero(poset, fld)


class DualFunctional(SparseMatrix):
    """λ in n_P*, with λ_ij = λ(e_ij)."""


def _check_same(a: SparseMatrix, b: SparseMatrix) -> None:
    if a.poset != b.poset or a.field != b.field:
        raise PosetError("operands live on different posets or fields")


def _product(fld: FiniteField, x: Mapping[Position, int], y: Mapping[Position, int]) -> Dict[Position, int]:
    out: Dict[Position, int] = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            if j == k:
                out[(i, l)] = fld.add(out.get((i, l), 0), fld.mul(a, b))
    return out


def _sum(fld: FiniteField, *parts: Mapping[Position, int]) -> Dict[Position, int]:
    out: Dict[Position, int] = {}
    for part in parts:
        for pos, v in part.items():
            out[pos] = fld.add(out.get(pos, 0), v)
    return out


def group_mul(u: UnipotentElement, v: UnipotentElement) -> UnipotentElement:
    _check_same(u, v)
    fld = u.field
    x, y = u.as_dict(), v.as_dict()
    return UnipotentElement.build(u.poset, fld, _sum(fld, x, y, _product(fld, x, y)))


def group_inv(u: UnipotentElement) -> UnipotentElement:
    # (1 + X)^{-1} = 1 - X + X^2 - ...; X is nilpotent.
    fld = u.field
    minus_x = {pos: fld.neg(v) for pos, v in u.entries}
    total: Dict[Position, int] = {}
    power: Dict[Position, int] = dict(minus_x)
    while power:
        total = _sum(fld, total, power)
        power = {pos: v for pos, v in _product(fld, power, minus_x).items() if v}
    return UnipotentElement.build(u.poset, fld, total)


def eval_functional(lam: DualFunctional, u: UnipotentElement) -> FieldScalar:
    """λ(u - 1) = Σ λ_ij u_ij."""
    _check_same(lam, u)
    fld = lam.field
    x = u.as_dict()
    total = 0
    for pos, v in lam.entries:
        if pos in x:
            total = fld.add(total, fld.mul(v, x[pos]))
    return FieldScalar(total, fld)


@dataclass
class MatrixGraph:
    vertices: List[Tuple[Position, FieldScalar]]
    edges: List[Tuple[int, int]]
    components: List[List[int]]

    def component_positions(self, k: int) -> List[Position]:
        return [self.vertices[v][0] for v in self.components[k]]


def matrix_graph(matrix: SparseMatrix) -> MatrixGraph:
    """Vertices are the nonzero entries; edges join entries sharing a row or a column."""
    vertices = [(pos, FieldScalar(v, matrix.field)) for pos, v in matrix.entries]
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    edges: List[Tuple[int, int]] = []
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            (i, j), (k, l) = vertices[a][0], vertices[b][0]
            if i == k or j == l:
                edges.append((a, b))
    graph.add_edges_from(edges)
    components = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    return MatrixGraph(vertices=vertices, edges=edges, components=components)


def components(matrix: SparseMatrix) -> List[SparseMatrix]:
    """The matrix split into one sub-matrix per connected component of its graph."""
    graph = matrix_graph(matrix)
    return [matrix.restricted(graph.component_positions(k)) for k in range(len(graph.components))]


@dataclass(frozen=True)
class Move:
    """One elementary orbit generator acting on J-indexed vectors.

    ``pairs`` lists (target index, source index); applying with scalar c adds
    c·vec[source] to vec[target].
    """

    kind: str
    target: int
    source: int
    pairs: Tuple[Tuple[int, int], ...]


def class_moves(poset: PatternPoset) -> List[Move]:
    """Generators of X -> aXb on n_P: row i += c·row j (i < j), column l += c·column k (k < l)."""
    idx = poset.index
    moves = []
    for i, j in poset.J:
        pairs = tuple((idx[(i, l)], idx[(j, l)]) for l in poset.above(j))
        if pairs:
            moves.append(Move("row", i, j, pairs))
    for k, l in poset.J:
        pairs = tuple((idx[(r, l)], idx[(r, k)]) for r in poset.below(k))
        if pairs:
            moves.append(Move("col", l, k, pairs))
    return moves


def dual_moves(poset: PatternPoset, left_only: bool = False) -> List[Move]:
    """Generators of the two-sided action on n_P*, writes outside J dropped.

    Row moves (row j += c·row i, i < j) alone generate the left action.
    """
    idx = poset.index
    moves = []
    for i, j in poset.J:
        pairs = tuple((idx[(j, l)], idx[(i, l)]) for l in poset.above(i) if (j, l) in idx)
        if pairs:
            moves.append(Move("row", j, i, pairs))
    if left_only:
        return moves
    for k, l in poset.J:
        pairs = tuple((idx[(r, k)], idx[(r, l)]) for r in poset.below(l) if (r, k) in idx)
        if pairs:
            moves.append(Move("col", k, l, pairs))
    return moves


def apply_move(fld: FiniteField, vector: Sequence[int], move: Move, c: int) -> Tuple[int, ...]:
    out = list(vector)
    row = fld.mul_table[c]
    add = fld.add_table
    for target, source in move.pairs:
        s = vector[source]
        if s:
            out[target] = add[out[target]][row[s]]
    return tuple(out)
