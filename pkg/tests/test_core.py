from __future__ import annotations

import itertools

import pytest

from src.core import (
    DualFunctional,
    PatternPoset,
    UnipotentElement,
    chain_poset,
    class_moves,
    components,
    dual_moves,
    eval_functional,
    group_inv,
    group_mul,
    interpolating_poset,
    matrix_graph,
)
from src.errors import PosetError
from src.field import get_field


def test_interpolating_relations():
    p = interpolating_poset(7, 4)
    assert (1, 5) in p.index and (1, 6) in p.index and (1, 7) in p.index
    assert all((1, j) not in p.index for j in (2, 3, 4))
    assert p.lt(2, 3) and p.lt(4, 7)
    assert len(interpolating_poset(5, 4).J) == 7


def test_chain_ends_of_the_family():
    n = 5
    assert chain_poset(n).is_chain
    assert interpolating_poset(n, 1).less == chain_poset(n).less
    last = interpolating_poset(n, n)
    assert not last.below(2) and not last.above(1)
    assert len(last.J) == (n - 1) * (n - 2) // 2


def test_poset_validation():
    with pytest.raises(PosetError):
        PatternPoset(3, frozenset({(2, 1)}))
    with pytest.raises(PosetError):
        PatternPoset(3, frozenset({(1, 2), (2, 3)}))
    with pytest.raises(PosetError):
        interpolating_poset(3, 4)


def test_build_rejects_positions_outside_j():
    f2 = get_field(2)
    p = interpolating_poset(4, 2)
    with pytest.raises(PosetError):
        UnipotentElement.build(p, f2, {(1, 2): 1})
    masked = UnipotentElement.build(p, f2, {(1, 2): 1, (1, 3): 1}, strict=False)
    assert masked.support == ((1, 3),)


def _all_elements(poset, fld):
    for vec in itertools.product(fld.elements, repeat=len(poset.J)):
        yield UnipotentElement.from_vector(poset, fld, vec)


def test_group_inverse_on_every_element():
    f3 = get_field(3)
    for poset in (chain_poset(3), interpolating_poset(4, 2)):
        ident = UnipotentElement.identity(poset, f3)
        for u in _all_elements(poset, f3):
            assert group_mul(u, group_inv(u)) == ident
            assert group_mul(group_inv(u), u) == ident


def test_group_mul_is_closed_and_associative():
    f2 = get_field(2)
    p = interpolating_poset(4, 2)
    elems = list(_all_elements(p, f2))
    for u, v in itertools.product(elems[:8], repeat=2):
        w = elems[-1]
        assert group_mul(group_mul(u, v), w) == group_mul(u, group_mul(v, w))


def test_eval_functional():
    f3 = get_field(3)
    p = chain_poset(3)
    lam = DualFunctional.build(p, f3, {(1, 3): 2, (2, 3): 1})
    u = UnipotentElement.build(p, f3, {(1, 3): 2, (1, 2): 1})
    assert eval_functional(lam, u).value == 1


def test_components_split_rows_and_columns():
    f2 = get_field(2)
    p = chain_poset(6)
    lam = DualFunctional.build(p, f2, {(1, 5): 1, (2, 5): 1, (2, 6): 1, (3, 4): 1})
    graph = matrix_graph(lam)
    assert len(graph.components) == 2
    parts = components(lam)
    assert sorted(len(part) for part in parts) == [1, 3]


def test_moves_stay_inside_j():
    p = interpolating_poset(5, 3)
    size = len(p.J)
    for move in class_moves(p) + dual_moves(p):
        assert all(0 <= t < size and 0 <= s < size for t, s in move.pairs)
    assert all(m.kind == "row" for m in dual_moves(p, left_only=True))
