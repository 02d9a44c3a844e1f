from __future__ import annotations

import pytest

from src.chars import degree_exponent
from src.core import DualFunctional, chain_poset, interpolating_poset
from src.errors import PosetError, StyleError
from src.field import get_field
from src.oracle import restriction_coefficients
from src.reps import CHARACTER, RepStyle, SupercharLabel, canonical_supercharacter_rep, enumerate_labels
from src.restrict import (
    FIRST_ROW,
    LAST_COLUMN,
    Decomposition,
    drop_first,
    lambda_down,
    restrict,
    restrict_step,
    restrict_through_chain,
    restrict_un,
    restrict_un_alt,
    star_left,
    star_right,
)
from src.utils import format_label


def _un(n, fld, entries):
    p = chain_poset(n)
    return SupercharLabel(p, RepStyle.UN_CANONICAL, DualFunctional.build(p, fld, entries))


def _terms(result: Decomposition):
    return [(format_label(label), coeff) for label, coeff in result.items()]


def test_three_rows_into_u5():
    f2 = get_field(2)
    lam = _un(6, f2, {(1, 5): 1, (2, 6): 1, (3, 4): 1})
    result = restrict_un(lam)
    assert _terms(result) == [("1~5|2~3", 2), ("1~5|2~4", 2), ("1~5|2~3~4", 2)]
    assert result.degree() == 2**6 == f2.q ** degree_exponent(lam.functional)


def test_linear_characters_keep_their_lower_rows():
    f3 = get_field(3)
    for entries in ({(1, 2): 1, (2, 3): 2, (3, 4): 1}, {(1, 2): 2}, {(2, 3): 1, (3, 4): 1}):
        lam = _un(4, f3, entries)
        result = restrict_un(lam)
        expected = drop_first(lam.functional.replaced({(1, 2): 0}))
        assert result.functionals() == {expected: 1}


def test_single_long_arc():
    for q in (2, 3):
        fld = get_field(q)
        for n in (3, 4, 5):
            result = restrict_un(_un(n, fld, {(1, n): 1}))
            expected = {DualFunctional.zero(chain_poset(n - 1), fld): 1}
            for i in range(2, n):
                for t in fld.nonzero:
                    expected[DualFunctional.build(chain_poset(n - 1), fld, {(i - 1, n - 1): t})] = 1
            assert result.functionals() == expected
            assert result.degree() == fld.q ** (n - 2)


def test_embedding_dependence():
    f2 = get_field(2)
    lam = _un(4, f2, {(1, 4): 1})
    first = restrict(lam, FIRST_ROW)
    last = restrict(lam, LAST_COLUMN)
    assert _terms(first) == [("∅", 1), ("1~3", 1), ("2~3", 1)]
    assert _terms(last) == [("∅", 1), ("1~2", 1), ("1~3", 1)]
    assert first.degree() == last.degree()


def _shift(pos):
    return (pos[0] + 1, pos[1] + 1)


def test_first_row_and_last_column_rules_match_the_oracle():
    for n, q in ((3, 2), (4, 2), (3, 3)):
        fld = get_field(q)
        sub = chain_poset(n - 1)
        for lam in enumerate_labels(chain_poset(n), fld, RepStyle.UN_CANONICAL, CHARACTER):
            got = restrict_un(lam).terms  # type: ignore[arg-type]
            assert got == restriction_coefficients(lam, sub, RepStyle.UN_CANONICAL, embed=_shift)
            alt = restrict_un_alt(lam).terms  # type: ignore[arg-type]
            assert alt == restriction_coefficients(lam, sub, RepStyle.UN_CANONICAL)


def test_restriction_preserves_degree():
    for n, q in ((5, 2), (4, 3)):
        fld = get_field(q)
        for lam in enumerate_labels(chain_poset(n), fld, RepStyle.UN_CANONICAL, CHARACTER):
            degree = fld.q ** degree_exponent(lam.functional)
            assert restrict_un(lam).degree() == degree  # type: ignore[arg-type]
            assert restrict_un_alt(lam).degree() == degree  # type: ignore[arg-type]


def test_steps_match_the_oracle():
    for n, q in ((3, 2), (4, 2), (3, 3), (5, 2), (4, 3)):
        fld = get_field(q)
        for m in range(1, n + 1):
            source = interpolating_poset(n, m - 1)
            target = interpolating_poset(n, m)
            for style in (RepStyle.PATH, RepStyle.COMB):
                for lam in enumerate_labels(source, fld, style, CHARACTER):
                    got = restrict_step(lam, m)  # type: ignore[arg-type]
                    assert got.terms == restriction_coefficients(lam, target, style), (n, m, lam.matrix.entries)
                    assert got.degree() == fld.q ** degree_exponent(lam.functional)


def test_single_vertex_component_branches_like_weight_one():
    f2 = get_field(2)
    source = interpolating_poset(3, 1)
    target = interpolating_poset(3, 2)
    lam = SupercharLabel(source, RepStyle.PATH, DualFunctional.build(source, f2, {(1, 3): 1}))
    expected = {
        canonical_supercharacter_rep(DualFunctional.build(target, f2, entries), target, RepStyle.PATH): 1
        for entries in ({(1, 3): 1}, {(1, 3): 1, (2, 3): 1})
    }
    got = restrict_step(lam, 2)
    assert got.terms == expected
    assert got.terms == restriction_coefficients(lam, target, RepStyle.PATH)
    assert got.degree() == 2


def test_single_vertex_with_a_later_entry_in_row_m():
    f2 = get_field(2)
    source = interpolating_poset(4, 1)
    target = interpolating_poset(4, 2)
    lam = SupercharLabel(source, RepStyle.PATH, DualFunctional.build(source, f2, {(1, 3): 1, (2, 4): 1}))
    got = restrict_step(lam, 2)
    down = canonical_supercharacter_rep(lam.functional.on(target), target, RepStyle.PATH)
    assert got.terms == {down: 2}
    assert got.terms == restriction_coefficients(lam, target, RepStyle.PATH)


def test_lambda_down_cases():
    f2 = get_field(2)
    p1 = interpolating_poset(3, 1)
    gone = SupercharLabel(p1, RepStyle.PATH, DualFunctional.build(p1, f2, {(1, 2): 1}))
    assert lambda_down(gone).functional.is_zero()
    kept = SupercharLabel(p1, RepStyle.PATH, DualFunctional.build(p1, f2, {(1, 3): 1}))
    down = lambda_down(kept)
    assert down.poset == interpolating_poset(3, 2)
    assert down.functional.support == ((1, 3),)


def test_comb_lambda_down_with_folded_bottom_row():
    f3 = get_field(3)
    p = interpolating_poset(5, 3)
    # head (1,5), rows 2 and 3 in column 5, tine of row 2 in column 4
    entries = {(1, 5): 1, (2, 5): 2, (3, 5): 1, (2, 4): 1}
    lam = SupercharLabel(p, RepStyle.COMB, DualFunctional.build(p, f3, entries))
    down = lambda_down(lam, 4)
    assert down.poset == interpolating_poset(5, 4)
    assert down.functional.as_dict() == {(1, 5): 1, (2, 5): 2, (3, 4): 1}


def test_lambda_down_is_the_orbit_of_the_masked_functional():
    for n, q in ((4, 2), (5, 2), (4, 3)):
        fld = get_field(q)
        for m in range(2, n + 1):
            source = interpolating_poset(n, m - 1)
            target = interpolating_poset(n, m)
            for style in (RepStyle.PATH, RepStyle.COMB):
                for lam in enumerate_labels(source, fld, style, CHARACTER):
                    masked = lam.functional.on(target)
                    assert lambda_down(lam, m) == canonical_supercharacter_rep(masked, target, style)  # type: ignore[arg-type]


def test_through_the_chain_equals_first_row():
    for n, q in ((3, 2), (4, 2), (3, 3), (5, 2), (4, 3)):
        fld = get_field(q)
        for lam in enumerate_labels(chain_poset(n), fld, RepStyle.UN_CANONICAL, CHARACTER):
            assert restrict_through_chain(lam).terms == restrict_un(lam).terms  # type: ignore[arg-type]


def test_star_products():
    f2 = get_field(2)
    spawned = star_right(_un(4, f2, {}), 2, 4)
    assert {format_label(label) for label in spawned} == {"∅", "2~4", "3~4"}
    # a longer arc in row i doubles the product from row i + 1 on
    doubled = star_right(_un(5, f2, {(2, 5): 1}), 2, 4)
    assert _terms(doubled) == [("2~5", 2), ("2~5|3~4", 2)]
    left = star_left(2, 4, _un(4, f2, {(1, 4): 1}))
    assert _terms(left) == [("1~4", 2), ("1~4|2~3", 2)]
    assert star_right(_un(3, f2, {(1, 3): 1}), 3, 3).functionals() == {_un(3, f2, {(1, 3): 1}).functional: 1}


def test_input_guards():
    f2 = get_field(2)
    with pytest.raises(PosetError):
        restrict_un(_un(1, f2, {}))
    with pytest.raises(StyleError):
        p = interpolating_poset(4, 2)
        restrict_un(SupercharLabel(p, RepStyle.PATH, DualFunctional.zero(p, f2)))
    with pytest.raises(PosetError):
        restrict_step(SupercharLabel(interpolating_poset(3, 1), RepStyle.PATH, DualFunctional.zero(interpolating_poset(3, 1), f2)), 3)
    with pytest.raises(ValueError):
        restrict(_un(3, f2, {}), "diagonal")
    with pytest.raises(ValueError):
        Decomposition().add(SupercharLabel(chain_poset(2), RepStyle.UN_CANONICAL, DualFunctional.zero(chain_poset(2), f2)), -1)
