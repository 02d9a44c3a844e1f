from __future__ import annotations

import itertools

import pytest

from src import linalg
from src.chars import (
    CharValue,
    comb_char_value,
    comb_degree_exponent,
    compatibility,
    degree_exponent,
    factor_by_columns,
    factor_by_components,
    fold_path,
    general_char_value,
    parse_comb,
    path_char_value,
    path_columns,
    path_corner_drop,
    path_degree_exponent,
    un_char_value,
    un_degree_exponent,
)
from src.core import DualFunctional, UnipotentElement, chain_poset, interpolating_poset
from src.errors import StyleError
from src.field import CycNumber, get_field
from src.oracle import class_table, definitional_char, left_orbit_size
from src.reps import (
    CHARACTER,
    RepStyle,
    SupercharLabel,
    SuperclassLabel,
    distinguished_component,
    enumerate_labels,
    path_to_comb_character,
    path_to_comb_class,
)
from src.table import build_table

SWEEP = [(n, m, 2) for n in (2, 3, 4, 5) for m in range(n + 1)] + [(n, m, 3) for n in (3, 4) for m in range(n + 1)]


def _char(poset, fld, style, entries):
    return SupercharLabel(poset, style, DualFunctional.build(poset, fld, entries))


def _class(poset, fld, style, entries):
    return SuperclassLabel(poset, style, UnipotentElement.build(poset, fld, entries))


def test_arc_one_three_on_u3():
    f2 = get_field(2)
    p = chain_poset(3)
    lam = _char(p, f2, RepStyle.UN_CANONICAL, {(1, 3): 1})
    at_13 = _class(p, f2, RepStyle.UN_CANONICAL, {(1, 3): 1})
    at_12 = _class(p, f2, RepStyle.UN_CANONICAL, {(1, 2): 1})
    assert un_char_value(lam, at_13).value == CycNumber.rational(2, -2)
    assert general_char_value(lam, at_13).value == CycNumber.rational(2, -2)
    assert definitional_char(lam, at_13.element) == CycNumber.rational(2, -2)
    zero = un_char_value(lam, at_12)
    assert zero.value.is_zero() and zero.zero_reason == "un-vanishing"
    assert general_char_value(lam, at_12).value.is_zero()


def test_linear_character_orientation():
    f3 = get_field(3)
    p = chain_poset(2)
    for v in f3.nonzero:
        lam = _char(p, f3, RepStyle.UN_CANONICAL, {(1, 2): v})
        for t in f3.nonzero:
            u = _class(p, f3, RepStyle.UN_CANONICAL, {(1, 2): t})
            expected = f3.theta(f3.neg(f3.mul(t, v)))
            assert un_char_value(lam, u).value == expected
            assert definitional_char(lam, u.element) == expected


def test_char_value_zero_reason_invariant():
    with pytest.raises(ValueError):
        CharValue(CycNumber.zero(2))
    with pytest.raises(ValueError):
        CharValue(CycNumber.one(2), "no-solution")
    assert CharValue.zero(3, "no-solution").value.is_zero()


def test_degree_exponent_matches_left_orbit_bfs():
    for n, m, q in SWEEP:
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        for lam in enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER):
            assert fld.q ** degree_exponent(lam.functional) == left_orbit_size(lam.functional)


def test_closed_form_degrees():
    for n, m, q in SWEEP:
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        for lam in enumerate_labels(poset, fld, RepStyle.COMB, CHARACTER):
            assert comb_degree_exponent(lam) == degree_exponent(lam.functional)
        for lam in enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER):
            assert path_degree_exponent(lam) == degree_exponent(lam.functional)  # type: ignore[arg-type]
        if poset.is_chain:
            for lam in enumerate_labels(poset, fld, RepStyle.UN_CANONICAL, CHARACTER):
                assert un_degree_exponent(lam) == degree_exponent(lam.functional)


def test_every_evaluator_agrees_with_the_oracle():
    for n, m, q in SWEEP:
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        styles = [RepStyle.COMB, RepStyle.PATH] + ([RepStyle.UN_CANONICAL] if poset.is_chain else [])
        for style in styles:
            # raises CrossCheckMismatch on the first disagreement
            build_table(poset, fld, style, "auto", check=True)


def test_component_factorization_reproduces_the_general_value():
    for n, q in ((4, 2), (3, 3)):
        fld = get_field(q)
        p = chain_poset(n)
        lams = enumerate_labels(p, fld, RepStyle.UN_CANONICAL, CHARACTER)
        us = enumerate_labels(p, fld, RepStyle.UN_CANONICAL, "class")
        for lam, u in itertools.product(lams, us):
            plan = factor_by_components(lam, u)
            value = plan.evaluate(lambda a, b: general_char_value(a, b).value, fld)
            assert value == general_char_value(lam, u).value


def _worked_example(q, a, b, c, d, e, x, y, z):
    fld = get_field(q)
    p = interpolating_poset(7, 4)
    u = _class(p, fld, RepStyle.PATH, {(1, 5): a, (2, 6): d, (3, 4): e, (4, 5): b, (4, 6): c})
    lam = _char(p, fld, RepStyle.PATH, {(1, 7): x, (2, 7): y, (4, 5): z})
    return fld, lam, u


def _worked_expected(fld, a, b, c, d, x, y, z):
    if fld.mul(fld.mul(a, c), x) != fld.mul(fld.mul(b, d), y):
        return CycNumber.zero(fld.p)
    return fld.theta(fld.neg(fld.mul(b, z))) * fld.q**2


def test_worked_example_on_n7_m4():
    for q in (2, 3):
        fld = get_field(q)
        for a, b, c, d, e, x, y, z in itertools.product(fld.nonzero, repeat=8):
            fld, lam, u = _worked_example(q, a, b, c, d, e, x, y, z)
            expected = _worked_expected(fld, a, b, c, d, x, y, z)
            assert general_char_value(lam, u).value == expected
            assert path_char_value(lam, u).value == expected
    f5 = get_field(5)
    for a, b, x in itertools.product(f5.nonzero, repeat=3):
        fld, lam, u = _worked_example(5, a, b, 1, 1, 2, x, 1, 3)
        assert path_char_value(lam, u).value == _worked_expected(fld, a, b, 1, 1, x, 1, 3)


def test_worked_example_degree_and_compatibility():
    fld, lam, u = _worked_example(2, 1, 1, 1, 1, 1, 1, 1, 1)
    assert degree_exponent(lam.functional) == 4
    assert path_degree_exponent(lam) == 4
    p = lam.poset
    comb_part = DualFunctional.build(p, fld, {(1, 7): 1, (2, 7): 1})
    u_part = UnipotentElement.build(p, fld, {(1, 5): 1, (4, 5): 1, (4, 6): 1, (2, 6): 1})
    assert compatibility(comb_part, u_part, RepStyle.PATH).compatible
    fld3, lam3, _ = _worked_example(3, 1, 1, 1, 1, 1, 1, 2, 1)
    part3 = DualFunctional.build(lam3.poset, fld3, {(1, 7): 1, (2, 7): 2})
    u3 = UnipotentElement.build(lam3.poset, fld3, {(1, 5): 1, (4, 5): 1, (4, 6): 1, (2, 6): 1})
    verdict = compatibility(part3, u3, RepStyle.PATH)
    assert not verdict.compatible and verdict.rule.startswith("PC4")


def test_column_factorization_on_comb_labels():
    for n, m, q in [(3, m, 2) for m in range(4)] + [(4, m, 2) for m in range(5)] + [(3, 2, 3)]:
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        lams = enumerate_labels(poset, fld, RepStyle.COMB, CHARACTER)
        us = enumerate_labels(poset, fld, RepStyle.COMB, "class")
        for lam, u in itertools.product(lams, us):
            plan = factor_by_columns(lam, u)
            value = plan.evaluate(lambda a, b: general_char_value(a, b).value)
            assert value == general_char_value(lam, u).value
            assert value == comb_char_value(lam, u).value


def test_column_factorization_needs_comb_labels():
    f2 = get_field(2)
    p = interpolating_poset(4, 2)
    lam = _char(p, f2, RepStyle.PATH, {})
    u = _class(p, f2, RepStyle.PATH, {})
    with pytest.raises(StyleError):
        factor_by_columns(lam, u)


def test_weight_one_walk_offers_its_last_vertex_past_row_m():
    f2 = get_field(2)
    for m, drop in ((3, 1), (2, 2)):
        p = interpolating_poset(6, m)
        lam = _char(p, f2, RepStyle.PATH, {(1, 6): 1, (2, 6): 1, (2, 5): 1})
        u = _class(p, f2, RepStyle.PATH, {(3, 4): 1})
        assert path_corner_drop(lam, u) == drop
        assert general_char_value(lam, u).witness.rank == drop
        assert path_char_value(lam, u).value == CycNumber.rational(2, 8)
        assert general_char_value(lam, u).value == CycNumber.rational(2, 8)


def test_worked_example_corner_drop():
    fld, lam, u = _worked_example(3, 1, 1, 1, 1, 1, 1, 1, 1)
    # e and b each sit below λ_27 and left of its column
    assert path_corner_drop(lam, u) == 2


def test_path_corner_drop_against_the_rank_of_m():
    for n, m, q in [case for case in SWEEP if case[0] <= 4]:
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        lams = enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER)
        us = enumerate_labels(poset, fld, RepStyle.PATH, "class")
        for lam, u in itertools.product(lams, us):
            general = general_char_value(lam, u)
            if general.zero_reason is None:
                expected = degree_exponent(lam.functional) - general.witness.rank
                assert path_degree_exponent(lam) - path_corner_drop(lam, u) == expected, (lam, u)


def test_walk_readings_match_the_comb_conversions():
    for n, m, q in ((5, 3, 2), (5, 4, 2), (4, 2, 3), (4, 3, 3)):
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        for lam in enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER):
            part = distinguished_component(lam.functional)
            if len(part) > 1:
                comb = distinguished_component(path_to_comb_character(lam).functional)  # type: ignore[arg-type]
                assert fold_path(part) == parse_comb(comb)  # type: ignore[arg-type]
        for u in enumerate_labels(poset, fld, RepStyle.PATH, "class"):
            comb_u = path_to_comb_class(u).element  # type: ignore[arg-type]
            expected = {}
            for k in {k for _, k in comb_u.support}:
                col = comb_u.column(k)
                w = col.pop(1, 0)
                expected[k] = (w, next(iter(col.items()), None))
            assert path_columns(u.element) == expected  # type: ignore[union-attr]


def test_phase_is_the_same_for_every_solution():
    for n, m, q in ((4, 2, 3), (4, 3, 3), (5, 3, 2)):
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        lams = enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER)
        us = enumerate_labels(poset, fld, RepStyle.PATH, "class")
        for lam, u in itertools.product(lams, us):
            result = general_char_value(lam, u)
            witness = result.witness
            if witness.solution is None:
                continue
            rows = witness.matrix()
            b = witness.b_vector()
            if result.zero_reason is not None:
                assert result.zero_reason == "b-outside-row-space"
                assert any(fld.dot(vec, b) for vec in witness.null_basis)
                continue
            base = fld.dot(witness.solution, b)
            for vec in witness.null_basis:
                for c in fld.nonzero:
                    other = [fld.add(y, fld.mul(c, t)) for y, t in zip(witness.solution, vec)]
                    assert linalg.matvec(fld, rows, other) == linalg.matvec(fld, rows, witness.solution)
                    assert fld.dot(other, b) == base


def test_general_values_are_constant_on_superclasses():
    for n, m, q in ((3, 2, 3), (4, 2, 2), (4, 3, 3)):
        fld = get_field(q)
        poset = interpolating_poset(n, m)
        table = class_table(poset, fld)
        for lam in enumerate_labels(poset, fld, RepStyle.PATH, CHARACTER):
            for orbit in table.orbits:
                values = [
                    general_char_value(lam, UnipotentElement.from_vector(poset, fld, vec)).value for vec in orbit
                ]
                assert all(value == values[0] for value in values), (lam, sorted(orbit))
