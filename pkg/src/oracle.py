"""Brute-force ground truth: full enumeration, orbit BFS, orbit-sum characters, axioms."""
from __future__ import annotations

import itertools
import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .core import DualFunctional, PatternPoset, Position, UnipotentElement, apply_move, class_moves, dual_moves, group_inv, group_mul
from .errors import BudgetExceeded, PosetError
from .field import CycNumber, FiniteField
from .reps import CHARACTER, CLASS, Label, RepStyle, SupercharLabel, enumerate_labels

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 20
CONJUGACY_LIMIT = 1 << 12

Vector = Tuple[int, ...]


def _check_budget(poset: PatternPoset, fld: FiniteField, budget: int) -> int:
    size = fld.q ** len(poset.J)
    if size > budget:
        raise BudgetExceeded(size, budget)
    return size


def enumerate_space(poset: PatternPoset, fld: FiniteField, kind: str = CLASS, budget: int = DEFAULT_BUDGET) -> List[Vector]:
    """Every element of n_P (kind=class) or n_P* (kind=character) as a J-indexed vector."""
    if kind not in (CLASS, CHARACTER):
        raise PosetError(f"unknown kind {kind!r}")
    _check_budget(poset, fld, budget)
    return list(itertools.product(fld.elements, repeat=len(poset.J)))


def serialize(fld: FiniteField, vector: Sequence[int]) -> Tuple[int, ...]:
    """Row-major concatenation of base-p digit strings (most significant digit first)."""
    out: List[int] = []
    for v in vector:
        out.extend(reversed(fld.digits(v)))
    return tuple(out)


@dataclass
class OrbitTable:
    kind: str
    poset: PatternPoset
    field: FiniteField
    orbits: List[FrozenSet[Vector]]
    index: Dict[Vector, int]
    representatives: List[Vector]

    def __len__(self) -> int:
        return len(self.orbits)

    def orbit_of(self, vector: Sequence[int]) -> int:
        return self.index[tuple(vector)]

    def partition(self) -> FrozenSet[FrozenSet[Vector]]:
        return frozenset(self.orbits)


def _moves(poset: PatternPoset, kind: str, left_only: bool = False):
    return class_moves(poset) if kind == CLASS else dual_moves(poset, left_only=left_only)


def _bfs(fld: FiniteField, start: Vector, moves, scalars: Sequence[int]) -> List[Vector]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        vec = queue.popleft()
        for move in moves:
            for c in scalars:
                nxt = apply_move(fld, vec, move, c)
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
    return order


def orbit_bfs(
    poset: PatternPoset,
    fld: FiniteField,
    kind: str = CLASS,
    budget: int = DEFAULT_BUDGET,
    shuffle_seed: Optional[int] = None,
) -> OrbitTable:
    """Two-sided orbits under all single-move generators with all nonzero scalars."""
    space = enumerate_space(poset, fld, kind, budget)
    moves = list(_moves(poset, kind))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(moves)
    orbits: List[FrozenSet[Vector]] = []
    index: Dict[Vector, int] = {}
    reps: List[Vector] = []
    for vec in space:
        if vec in index:
            continue
        members = _bfs(fld, vec, moves, fld.nonzero)
        oid = len(orbits)
        for member in members:
            index[member] = oid
        orbits.append(frozenset(members))
        reps.append(min(members, key=lambda v: serialize(fld, v)))
    logger.info("%d %s orbits on %s over F_%d", len(orbits), kind, poset.describe(), fld.q)
    return OrbitTable(kind, poset, fld, orbits, index, reps)


@lru_cache(maxsize=256)
def class_table(poset: PatternPoset, fld: FiniteField, budget: int = DEFAULT_BUDGET) -> OrbitTable:
    return orbit_bfs(poset, fld, CLASS, budget)


@lru_cache(maxsize=4096)
def _dual_orbit(lam: DualFunctional, budget: int) -> Tuple[Vector, ...]:
    _check_budget(lam.poset, lam.field, budget)
    return tuple(_bfs(lam.field, lam.vector(), dual_moves(lam.poset), lam.field.nonzero))


@lru_cache(maxsize=4096)
def left_orbit_size(lam: DualFunctional, budget: int = DEFAULT_BUDGET) -> int:
    """|U_P λ| by BFS over the row moves."""
    _check_budget(lam.poset, lam.field, budget)
    return len(_bfs(lam.field, lam.vector(), dual_moves(lam.poset, left_only=True), lam.field.nonzero))


def definitional_row(lam: DualFunctional, elements: Sequence[Vector], budget: int = DEFAULT_BUDGET) -> List[CycNumber]:
    """χ^λ at every listed element: all pairings μ(u − 1) come from one field matmul."""
    fld = lam.field
    orbit = _dual_orbit(lam, budget)
    scale = Fraction(left_orbit_size(lam, budget), len(orbit))
    width = len(lam.poset.J)
    mus = fld.gf(np.array(orbit, dtype=np.int64).reshape(len(orbit), width))
    xs = fld.gf(np.array(elements, dtype=np.int64).reshape(len(elements), width))
    pairings = (-(mus @ xs.T)).view(np.ndarray)
    traces = np.asarray(fld.trace_table, dtype=np.int64)[pairings]
    out = []
    for column in traces.T:
        counts = np.bincount(column, minlength=fld.p).tolist()
        out.append(CycNumber.from_counts(fld.p, counts) * scale)
    return out


def definitional_char(
    lam: DualFunctional | SupercharLabel,
    u: UnipotentElement | Vector,
    poset: Optional[PatternPoset] = None,
    budget: int = DEFAULT_BUDGET,
) -> CycNumber:
    """(|U_P λ| / |U_P λ U_P|) Σ_{μ ∈ U_P λ U_P} θ(−μ(u − 1))."""
    if isinstance(lam, SupercharLabel):
        lam = lam.functional
    if poset is not None and lam.poset != poset:
        raise PosetError("λ lives on another poset")
    x = u.vector() if isinstance(u, UnipotentElement) else tuple(u)
    return definitional_row(lam, [x], budget)[0]


def inner_product(
    f: Sequence[CycNumber], g: Sequence[CycNumber], weights: Optional[Sequence[int]] = None
) -> CycNumber:
    """(1/|G|) Σ_u f(u)·conj(g(u)); with ``weights`` the entries are superclasses of those sizes."""
    if len(f) != len(g) or not f:
        raise ValueError("class functions must be listed over the same nonempty group")
    weights = weights if weights is not None else [1] * len(f)
    total = CycNumber.zero(f[0].p)
    for a, b, w in zip(f, g, weights):
        total = total + a * b.conj() * w
    return total / sum(weights)


def class_function(
    lam: DualFunctional, elements: Sequence[Vector], table: Optional[OrbitTable] = None, budget: int = DEFAULT_BUDGET
) -> List[CycNumber]:
    """χ^λ on every listed element, evaluated once per superclass."""
    table = table or class_table(lam.poset, lam.field, budget)
    oids = [table.index[vec] for vec in elements]
    wanted = sorted(set(oids))
    values = dict(zip(wanted, definitional_row(lam, [table.representatives[oid] for oid in wanted], budget)))
    return [values[oid] for oid in oids]


@lru_cache(maxsize=4096)
def _character_values(lam: DualFunctional, budget: int) -> Tuple[CycNumber, ...]:
    """χ^λ over enumerate_space(lam.poset), in that order."""
    elements = enumerate_space(lam.poset, lam.field, CLASS, budget)
    return tuple(class_function(lam, elements, class_table(lam.poset, lam.field, budget), budget))


def restriction_coefficients(
    lam: DualFunctional | SupercharLabel,
    sub_poset: PatternPoset,
    style: RepStyle | str,
    embed: Optional[Callable[[Position], Position]] = None,
    budget: int = DEFAULT_BUDGET,
) -> Dict[Label, int]:
    """c_μ = ⟨Res χ^λ, χ^μ⟩ / ⟨χ^μ, χ^μ⟩ over the labels μ of the subgroup."""
    if isinstance(lam, SupercharLabel):
        lam = lam.functional
    big, fld = lam.poset, lam.field
    embed = embed or (lambda pos: pos)
    targets = [big.index[embed(pos)] for pos in sub_poset.J]
    sub_elements = enumerate_space(sub_poset, fld, CLASS, budget)
    big_table = class_table(big, fld, budget)

    def lift(vec: Vector) -> Vector:
        out = [0] * len(big.J)
        for t, v in zip(targets, vec):
            out[t] = v
        return tuple(out)

    restricted = class_function(lam, [lift(v) for v in sub_elements], big_table, budget)
    coeffs: Dict[Label, int] = {}
    for mu in enumerate_labels(sub_poset, fld, style, CHARACTER):
        values = _character_values(mu.functional, budget)  # type: ignore[union-attr]
        num = inner_product(restricted, values).to_fraction()
        if num:
            c = num / inner_product(values, values).to_fraction()
            if c.denominator != 1:
                raise ArithmeticError(f"non-integral restriction coefficient {c}")
            coeffs[mu] = int(c)
    return coeffs


def _u3_f2_irreducibles() -> List[Callable[[Vector], int]]:
    # J = ((1,2), (1,3), (2,3)); the group is dihedral of order 8.
    def linear(s: int, t: int) -> Callable[[Vector], int]:
        return lambda x: (-1) ** (s * x[0] + t * x[2])

    def faithful(x: Vector) -> int:
        if x[0] == 0 and x[2] == 0:
            return 2 if x[1] == 0 else -2
        return 0

    return [linear(0, 0), linear(1, 0), linear(0, 1), linear(1, 1), faithful]


D4_IRREDUCIBLES = _u3_f2_irreducibles()


@dataclass
class AxiomReport:
    poset: str
    q: int
    checks: Dict[str, bool] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    norms: Dict[str, str] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    calibration: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> Dict[str, object]:
        return {
            "schema": "1",
            "poset": self.poset,
            "q": self.q,
            "passed": self.passed,
            "checks": self.checks,
            "counts": self.counts,
            "norms": self.norms,
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
            "calibration": self.calibration,
            "notes": self.notes,
        }


def regular_character_check(
    values: Sequence[Sequence[CycNumber]], identity: int, weights: Optional[Sequence[int]] = None
) -> bool:
    """Σ_λ (χ^λ(1) / ⟨χ^λ, χ^λ⟩) χ^λ is |G| at the identity and 0 elsewhere."""
    if not values:
        return False
    order = sum(weights) if weights is not None else len(values[0])
    p = values[0][identity].p
    regular = [CycNumber.zero(p)] * len(values[0])
    for row in values:
        weight = row[identity].to_fraction() / inner_product(row, row, weights).to_fraction()
        regular = [acc + val * weight for acc, val in zip(regular, row)]
    return all(val == CycNumber.rational(p, order if idx == identity else 0) for idx, val in enumerate(regular))


def _conjugation_closed(poset: PatternPoset, fld: FiniteField, table: OrbitTable) -> bool:
    gens = [
        UnipotentElement.build(poset, fld, {pos: c})
        for pos in poset.J
        for c in fld.nonzero
    ]
    for vec, oid in table.index.items():
        u = UnipotentElement.from_vector(poset, fld, vec)
        for g in gens:
            conj = group_mul(group_mul(g, u), group_inv(g))
            if table.index[conj.vector()] != oid:
                return False
    return True


def verify_axioms(poset: PatternPoset, fld: FiniteField, budget: int = DEFAULT_BUDGET) -> AxiomReport:
    """Check the four supercharacter-theory axioms by enumeration."""
    from .chars import FORMULA_CONJUGATED, TRIANGLE_BRANCH_PRECEDENCE

    report = AxiomReport(poset=poset.describe(), q=fld.q)
    report.calibration = {
        "orientation": "conjugated" if FORMULA_CONJUGATED else "as-printed",
        "triangle_branch_precedence": TRIANGLE_BRANCH_PRECEDENCE,
    }
    started = time.perf_counter()
    classes = class_table(poset, fld, budget)
    duals = orbit_bfs(poset, fld, CHARACTER, budget)
    report.timings["orbits"] = time.perf_counter() - started
    report.counts = {"group_order": len(classes.index), "superclasses": len(classes), "supercharacters": len(duals)}
    report.checks["a_counts_match"] = len(classes) == len(duals)

    started = time.perf_counter()
    if len(classes.index) <= CONJUGACY_LIMIT:
        report.checks["b_unions_of_conjugacy_classes"] = _conjugation_closed(poset, fld, classes)
    else:
        report.notes.append(f"axiom (b) skipped: |G| > {CONJUGACY_LIMIT}")
    report.timings["conjugacy"] = time.perf_counter() - started

    started = time.perf_counter()
    elements = list(classes.index)
    sizes = [len(orbit) for orbit in classes.orbits]
    chis = [DualFunctional.from_vector(poset, fld, rep) for rep in duals.representatives]
    # one value per superclass, read at its representative
    values = [definitional_row(lam, classes.representatives, budget) for lam in chis]
    constant = True
    integral = True
    for lam, row in zip(chis, values):
        integral = integral and all(value.is_algebraic_integer() for value in row)
        spread = [row[classes.index[vec]] for vec in elements]
        if definitional_row(lam, elements, budget) != spread:
            constant = False
    report.checks["d_constant_on_superclasses"] = constant
    report.checks["values_are_algebraic_integers"] = integral
    report.timings["constancy"] = time.perf_counter() - started

    started = time.perf_counter()
    norms = [inner_product(row, row, sizes).to_fraction() for row in values]
    orthogonal = all(
        inner_product(values[a], values[b], sizes).is_zero()
        for a in range(len(values))
        for b in range(a + 1, len(values))
    )
    identity = classes.index[tuple([0] * len(poset.J))]
    regular_ok = regular_character_check(values, identity, sizes)
    report.checks["c_surrogate_orthogonal"] = orthogonal
    report.checks["c_surrogate_regular_character"] = regular_ok
    for rep, norm in zip(duals.representatives, norms):
        report.norms[str(list(rep))] = str(norm)
    if poset.n == 3 and poset.is_chain and fld.q == 2:
        per_element = [[row[classes.index[vec]] for vec in elements] for row in values]
        report.checks["c_literal_u3_f2"] = _literal_axiom_c(elements, per_element)
    report.timings["axiom_c"] = time.perf_counter() - started
    logger.info("axioms on %s over F_%d: %s", poset.describe(), fld.q, "pass" if report.passed else "FAIL")
    return report


def _literal_axiom_c(elements: Sequence[Vector], values: Sequence[Sequence[CycNumber]]) -> bool:
    owners: List[int] = []
    for psi in D4_IRREDUCIBLES:
        psi_values = [CycNumber.rational(2, psi(x)) for x in elements]
        hits = [k for k, row in enumerate(values) if not inner_product(row, psi_values).is_zero()]
        if len(hits) != 1:
            return False
        owners.append(hits[0])
    # each supercharacter is a multiple of Σ ψ(1)ψ over the irreducibles it owns
    for k, row in enumerate(values):
        owned = [psi for psi, owner in zip(D4_IRREDUCIBLES, owners) if owner == k]
        if not owned:
            return False
        combo = [sum(psi(tuple([0] * 3)) * psi(x) for psi in owned) for x in elements]
        ratio = None
        for val, ref in zip(row, combo):
            if ref == 0:
                if not val.is_zero():
                    return False
                continue
            r = val.to_fraction() / ref
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True
