from __future__ import annotations

from fractions import Fraction

import pytest

from src.errors import FieldError
from src.field import (
    CycNumber,
    FieldScalar,
    field_arith,
    field_of_order,
    get_field,
    parse_order,
    theta,
    trace_to_prime,
)


def test_parse_order_forms():
    assert parse_order("2") == (2, 1)
    assert parse_order("2^2") == (2, 2)
    assert parse_order("9") == (3, 2)
    assert parse_order("5**1") == (5, 1)
    for bad in ("6", "1", "abc"):
        with pytest.raises(FieldError):
            parse_order(bad)


def test_extension_degree_is_bounded():
    with pytest.raises(FieldError):
        field_of_order("2^5")


def test_prime_field_tables():
    f3 = get_field(3)
    assert f3.add(2, 2) == 1
    assert f3.mul(2, 2) == 1
    assert f3.neg(1) == 2
    assert f3.inv(2) == 2
    assert f3.sub(0, 1) == 2
    with pytest.raises(FieldError):
        f3.inv(0)


def test_f4_arithmetic_and_trace():
    f4 = field_of_order("4")
    assert (f4.p, f4.e, f4.q) == (2, 2, 4)
    # alpha = 2 with alpha^2 = alpha + 1
    assert f4.mul(2, 2) == 3
    assert f4.add(2, 3) == 1
    assert f4.inv(2) == 3
    assert [f4.trace(a) for a in f4.elements] == [0, 0, 1, 1]
    assert f4.digits(3) == (1, 1)
    assert f4.digits(2) == (0, 1)


def test_every_nonzero_element_is_invertible():
    for order in ("2", "3", "4", "5", "8", "9"):
        fld = field_of_order(order)
        for a in fld.nonzero:
            assert fld.mul(a, fld.inv(a)) == 1


def test_field_scalar_ops():
    f5 = get_field(5)
    a = FieldScalar(3, f5)
    b = FieldScalar(4, f5)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (a / b).value == 2
    assert (-a).value == 2
    assert a.inverse().value == 2
    assert not FieldScalar(0, f5)
    with pytest.raises(FieldError):
        FieldScalar(5, f5)


def test_zeta_powers_sum_to_zero():
    for p in (2, 3, 5, 7):
        total = CycNumber.zero(p)
        for k in range(p):
            total = total + CycNumber.zeta(p, k)
        assert total.is_zero()


def test_cyc_arithmetic():
    z = CycNumber.zeta(3)
    assert z * z == CycNumber.zeta(3, 2)
    assert z * z * z == CycNumber.one(3)
    assert z.conj() == CycNumber.zeta(3, 2)
    assert (z + z.conj()) == CycNumber.rational(3, -1)
    assert (z * 6 / 4).coeffs == (Fraction(0), Fraction(3, 2))
    assert not (z / 2).is_algebraic_integer()
    with pytest.raises(FieldError):
        z + CycNumber.zeta(5)


def test_cyc_rendering():
    assert str(CycNumber.rational(2, -2)) == "-2"
    assert str(CycNumber.zeta(3)) == "z3"
    assert str(CycNumber.zeta(3, 2)) == "-1 - z3"
    assert str(CycNumber.zeta(5, 2) * 4) == "4*z5^2"
    assert CycNumber.rational(3, 4).to_json() == ["4/1", "0/1"]
    with pytest.raises(FieldError):
        CycNumber.zeta(3).to_fraction()


def test_theta_is_a_character_of_the_additive_group():
    for order in ("3", "4", "9"):
        fld = field_of_order(order)
        for a in fld.elements:
            for b in fld.elements:
                assert fld.theta(fld.add(a, b)) == fld.theta(a) * fld.theta(b)
        assert theta(FieldScalar(0, fld)) == CycNumber.one(fld.p)


def test_module_level_operations():
    f4 = field_of_order("4")
    a, b = FieldScalar(2, f4), FieldScalar(3, f4)
    assert field_arith(a, b, "add").value == 1
    assert field_arith(a, b, "mul").value == 1
    assert field_arith(a, None, "inv").value == 3
    assert field_arith(a, None, "neg").value == 2
    assert [trace_to_prime(FieldScalar(v, f4)) for v in f4.elements] == [0, 0, 1, 1]
    with pytest.raises(FieldError):
        field_arith(a, b, "pow")


ORDERS_UP_TO_16 = ("2", "3", "4", "5", "7", "8", "9", "11", "13", "16")


def test_theta_sums_to_zero_over_the_field():
    for order in ORDERS_UP_TO_16:
        fld = field_of_order(order)
        total = CycNumber.zero(fld.p)
        for t in fld.elements:
            total = total + fld.theta(t)
        assert total.is_zero(), order


def _powers(fld, g):
    out = [g]
    while len(out) < fld.q - 1:
        out.append(fld.mul(out[-1], g))
    return out


def test_multiplicative_group_is_cyclic():
    for order in ORDERS_UP_TO_16:
        fld = field_of_order(order)
        orders = {g: len(set(_powers(fld, g))) for g in fld.nonzero}
        generator = max(orders, key=orders.get)
        assert orders[generator] == fld.q - 1, order
        powers = _powers(fld, generator)
        assert sorted(powers) == list(fld.nonzero)
        assert fld.mul(powers[-1], generator) == generator
