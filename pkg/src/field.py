from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from .errors import FieldError

logger = logging.getLogger(__name__)

MAX_DEGREE = 4

# Smallest monic irreducible polynomial (ascending coefficients) per (p, e), read as
# base-p integers.  Other (p, e) fall back to galois' minimal irreducible search.
MODULI: dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


@dataclass(frozen=True)
class FieldParams:
    """Description of F_q, q = p^e, with a fixed monic irreducible modulus."""

    p: int
    e: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def describe(self) -> str:
        return f"{self.p}^{self.e}" if self.e > 1 else str(self.p)


def default_modulus(p: int, e: int) -> Tuple[int, ...]:
    if e == 1:
        return (0, 1)
    if (p, e) in MODULI:
        return MODULI[(p, e)]
    poly = galois.irreducible_poly(p, e, method="min")
    return tuple(int(c) for c in poly.coeffs[::-1])


def make_params(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldParams:
    if not galois.is_prime(int(p)):
        raise FieldError(f"characteristic {p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise FieldError(f"extension degree {e} outside 1..{MAX_DEGREE}")
    coeffs = tuple(int(c) for c in (modulus if modulus is not None else default_modulus(p, e)))
    if len(coeffs) != e + 1 or coeffs[-1] != 1 or any(not 0 <= c < p for c in coeffs):
        raise FieldError(f"modulus {coeffs} is not a monic degree-{e} polynomial over F_{p}")
    if e > 1 and not galois.Poly(coeffs[::-1], field=galois.GF(p)).is_irreducible():
        raise FieldError(f"modulus {coeffs} is reducible over F_{p}")
    return FieldParams(p=int(p), e=int(e), modulus=coeffs)


def parse_order(text: Union[str, int]) -> Tuple[int, int]:
    """Parse ``"p^e"`` or a plain prime power such as ``"9"`` into (p, e)."""
    raw = str(text).strip().replace("**", "^")
    try:
        if "^" in raw:
            base, exp = raw.split("^", 1)
            p, e = int(base), int(exp)
        else:
            q = int(raw)
            if q < 2:
                raise FieldError(f"field order {q} is not a prime power")
            p = int(galois.factors(q)[0][0])
            e = 0
            rest = q
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1:
                raise FieldError(f"field order {q} is not a prime power")
    except ValueError as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"cannot read field order {text!r}") from exc
    return p, e


class FiniteField:
    """F_q with elements encoded as integers Σ digits[i]·p^i.

    Arithmetic runs on lookup tables built once from a galois field class, which is
    also kept (``gf``) for linear algebra.
    """

    def __init__(self, params: FieldParams) -> None:
        self.params = params
        self.p = params.p
        self.e = params.e
        self.q = params.q
        if params.e == 1:
            self.gf = galois.GF(params.p)
        else:
            poly = galois.Poly(list(params.modulus[::-1]), field=galois.GF(params.p))
            self.gf = galois.GF(params.q, irreducible_poly=poly)
        elems = self.gf.elements
        self.add_table: List[List[int]] = (elems[:, None] + elems[None, :]).view(np.ndarray).tolist()
        self.mul_table: List[List[int]] = (elems[:, None] * elems[None, :]).view(np.ndarray).tolist()
        self.neg_table: List[int] = (-elems).view(np.ndarray).tolist()
        self.inv_table: List[Optional[int]] = [None] + (elems[1:] ** -1).view(np.ndarray).tolist()
        if params.e == 1:
            self.trace_table: List[int] = list(range(params.p))
        else:
            self.trace_table = elems.field_trace().view(np.ndarray).tolist()
        self.elements: Tuple[int, ...] = tuple(range(self.q))
        self.nonzero: Tuple[int, ...] = tuple(range(1, self.q))
        logger.debug("built F_%d with modulus %s", self.q, params.modulus)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and other.params == self.params

    def __hash__(self) -> int:
        return hash(self.params)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        result = self.inv_table[a]
        if result is None:
            raise FieldError("division by zero in F_q")
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def trace(self, a: int) -> int:
        return self.trace_table[a]

    def dot(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        total = 0
        for x, y in zip(xs, ys):
            if x and y:
                total = self.add_table[total][self.mul_table[x][y]]
        return total

    def theta(self, a: int) -> "CycNumber":
        return CycNumber.zeta(self.p, self.trace_table[a])

    def digits(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def scalar(self, a: int) -> "FieldScalar":
        return FieldScalar(a, self)


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> FiniteField:
    return FiniteField(make_params(p, e))


def field_of_order(order: Union[str, int]) -> FiniteField:
    p, e = parse_order(order)
    return get_field(p, e)


@dataclass(frozen=True)
class FieldScalar:
    value: int
    field: FiniteField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not an element of F_{self.field.q}")

    @property
    def digits(self) -> Tuple[int, ...]:
        return self.field.digits(self.value)

    def _coerce(self, other: Union["FieldScalar", int]) -> int:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldError("operands live in different fields")
            return other.value
        return int(other) % self.field.p if self.field.e == 1 else int(other)

    def __add__(self, other: Union["FieldScalar", int]) -> "FieldScalar":
        return FieldScalar(self.field.add(self.value, self._coerce(other)), self.field)

    def __sub__(self, other: Union["FieldScalar", int]) -> "FieldScalar":
        return FieldScalar(self.field.sub(self.value, self._coerce(other)), self.field)

    def __mul__(self, other: Union["FieldScalar", int]) -> "FieldScalar":
        return FieldScalar(self.field.mul(self.value, self._coerce(other)), self.field)

    def __truediv__(self, other: Union["FieldScalar", int]) -> "FieldScalar":
        return FieldScalar(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self) -> "FieldScalar":
        return FieldScalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "FieldScalar":
        return FieldScalar(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)


def field_arith(a: FieldScalar, b: Optional[FieldScalar], op: str) -> FieldScalar:
    if op == "add":
        return a + b  # type: ignore[operator]
    if op == "mul":
        return a * b  # type: ignore[operator]
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise FieldError(f"unknown field operation {op!r}")


def trace_to_prime(t: FieldScalar) -> int:
    return t.field.trace(t.value)


def theta(t: FieldScalar) -> "CycNumber":
    """θ(t) = ζ_p^{Tr(t)}."""
    return t.field.theta(t.value)


Rational = Union[int, Fraction]


def _reduce(p: int, full: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    # full holds p coordinates on 1, ζ, ..., ζ^{p-1}; eliminate ζ^{p-1}.
    top = full[p - 1]
    return tuple(Fraction(full[k]) - top for k in range(p - 1))


@dataclass(frozen=True)
class CycNumber:
    """Exact element Σ c_i ζ_p^i of Q(ζ_p) in the basis 1, ζ, ..., ζ^{p-2}."""

    p: int
    coeffs: Tuple[Fraction, ...]

    @classmethod
    def from_counts(cls, p: int, counts: Sequence[Rational]) -> "CycNumber":
        """Build Σ counts[k]·ζ^k from p coordinates."""
        return cls(p, _reduce(p, [Fraction(c) for c in counts]))

    @classmethod
    def rational(cls, p: int, value: Rational) -> "CycNumber":
        coeffs = [Fraction(0)] * (p - 1)
        coeffs[0] = Fraction(value)
        return cls(p, tuple(coeffs))

    @classmethod
    def zero(cls, p: int) -> "CycNumber":
        return cls.rational(p, 0)

    @classmethod
    def one(cls, p: int) -> "CycNumber":
        return cls.rational(p, 1)

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycNumber":
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_counts(p, counts)

    def _full(self) -> List[Fraction]:
        return list(self.coeffs) + [Fraction(0)]

    def _check(self, other: "CycNumber") -> None:
        if other.p != self.p:
            raise FieldError(f"cannot combine Q(zeta_{self.p}) with Q(zeta_{other.p})")

    def __add__(self, other: Union["CycNumber", Rational]) -> "CycNumber":
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(self.p, other)
        self._check(other)
        return CycNumber(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Union["CycNumber", Rational]) -> "CycNumber":
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(self.p, other)
        return self + (-other)

    def __mul__(self, other: Union["CycNumber", Rational]) -> "CycNumber":
        if not isinstance(other, CycNumber):
            factor = Fraction(other)
            return CycNumber(self.p, tuple(a * factor for a in self.coeffs))
        self._check(other)
        p = self.p
        full = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    full[(i + j) % p] += a * b
        return CycNumber(p, _reduce(p, full))

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> "CycNumber":
        return self * (Fraction(1) / Fraction(other))

    def conj(self) -> "CycNumber":
        p = self.p
        full = self._full()
        flipped = [full[(p - k) % p] for k in range(p)]
        return CycNumber(p, _reduce(p, flipped))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return self.coeffs[0]

    def is_algebraic_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            base = "" if k == 0 else (f"z{self.p}" if k == 1 else f"z{self.p}^{k}")
            if not base:
                terms.append(str(c))
            elif c == 1:
                terms.append(base)
            elif c == -1:
                terms.append(f"-{base}")
            else:
                terms.append(f"{c}*{base}")
        return " + ".join(terms).replace("+ -", "- ")


def cyc_arith(x: CycNumber, y: Optional[CycNumber], op: str) -> Union[CycNumber, bool]:
    if op == "add":
        return x + y  # type: ignore[operator]
    if op == "mul":
        return x * y  # type: ignore[operator]
    if op == "conj":
        return x.conj()
    if op == "eq":
        return x == y
    raise FieldError(f"unknown cyclotomic operation {op!r}")
