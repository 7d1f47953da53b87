from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from multisetcodes.core import AnticodeSpec, anticode_size
from multisetcodes.errors import BudgetExhausted
from multisetcodes.groups import AbelianGroup, abelian_groups
from multisetcodes.sidon import (
    SidonSet,
    beta,
    bh_collision,
    bose_chowla,
    bose_chowla_projective,
    phi_bounds,
    radix_set,
    search_bh,
    singer,
    verify_bh,
)

Z2xZ6 = AbelianGroup((2, 6))


def naive_bh(G, B, h):
    """Raw definition: all h-element multisets of B have distinct sums."""
    sums = set()
    for idx in combinations_with_replacement(range(len(B)), h):
        s = G.weighted_sum([1] * h, [B[i] for i in idx])
        if s in sums:
            return False
        sums.add(s)
    return True


def naive_search(G, size, h):
    els = list(G.elements())
    return any(naive_bh(G, [G.zero, *rest], h) for rest in combinations(els[1:], size - 1))


def test_verify_examples():
    assert verify_bh(Z2xZ6, [(0, 0), (1, 1), (0, 5)], 3)
    assert verify_bh(AbelianGroup((13,)), [(0,), (1,), (3,), (9,)], 2)
    assert not verify_bh(AbelianGroup((7,)), [(0,), (1,), (2,)], 2)


def test_collision_witness():
    G = AbelianGroup((7,))
    a, b = bh_collision(G, [0, 1, 2], 2)
    els = [(0,), (1,), (2,)]
    assert G.weighted_sum([1] * len(a), [els[i] for i in a]) == G.weighted_sum([1] * len(b), [els[i] for i in b])


@pytest.mark.parametrize("m,order", [(2, 7), (3, 13), (4, 21), (5, 31)])
def test_singer(m, order):
    B = singer(m)
    assert B.group.order == order and B.size == m + 1 and B.h == 2
    assert verify_bh(B.group, B.elements, 2)


def test_singer_three_is_equivalent_to_planar_set():
    target = {0, 1, 3, 9}
    B = {e[0] for e in singer(3).elements}
    hits = False
    for mult in range(1, 13):
        for shift in range(13):
            if {(mult * b + shift) % 13 for b in B} == target:
                hits = True
    assert hits


@pytest.mark.parametrize("q,h,order", [(2, 3, 7), (3, 2, 8), (4, 2, 15), (5, 2, 24), (3, 3, 26)])
def test_bose_chowla(q, h, order):
    B = bose_chowla(q, h)
    assert B.group.order == order and B.size == q
    assert naive_bh(B.group, B.elements, h)


def test_bose_chowla_needs_h_two():
    with pytest.raises(ValueError):
        bose_chowla(3, 1)


@pytest.mark.parametrize("m,h", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_projective_line(m, h):
    B = bose_chowla_projective(m, h)
    assert B.size == m + 1
    assert B.group.order == (m ** (h + 1) - 1) // (m - 1)
    assert naive_bh(B.group, B.elements, h)


@pytest.mark.parametrize("q,h", [(2, 1), (3, 2), (4, 3), (3, 4)])
def test_radix(q, h):
    B = radix_set(q, h)
    assert B.group.order == (h + 1) ** (q - 1)
    assert naive_bh(B.group, B.elements, h)


def test_search_examples():
    assert search_bh(AbelianGroup((12,)), 3, 3) is None
    B = search_bh(Z2xZ6, 3, 3)
    assert B is not None and verify_bh(Z2xZ6, B.elements, 3)
    full = search_bh(AbelianGroup((6,)), 6, 1)
    assert full is not None and full.size == 6


@pytest.mark.parametrize("moduli,size,h", [((12,), 3, 3), ((2, 6), 3, 3), ((7,), 3, 2), ((8,), 4, 2), ((3, 3), 3, 2), ((2, 2, 2), 3, 2), ((10,), 4, 2)])
def test_search_matches_naive(moduli, size, h):
    G = AbelianGroup(moduli)
    assert (search_bh(G, size, h) is not None) == naive_search(G, size, h)


def test_search_budget():
    with pytest.raises(BudgetExhausted):
        search_bh(AbelianGroup((40,)), 6, 2, budget=50)


def test_beta_values():
    assert all(beta(1, q) == q for q in range(2, 8))
    assert beta(2, 4) == 13
    assert beta(3, 3) == 12
    for q in range(2, 6):
        for h in range(1, 7):
            assert beta(h, q) == anticode_size(AnticodeSpec(q - 1, (h + 1) // 2, h // 2))


def test_phi_values():
    p = phi_bounds(3, 3)
    assert p.exact == p.lower == p.upper == 12 == p.beta
    assert verify_bh(p.witness.group, p.witness.elements, 3)
    assert phi_bounds(2, 4).exact == 13
    for q in range(2, 7):
        assert phi_bounds(1, q).exact == q


def test_phi_exceeds_beta_when_no_tiling():
    # beta(2,5) = 21 and the Singer set in Z_21 meets it
    assert phi_bounds(2, 5).exact == 21
    # beta(2,3) = 7 is met by {0,1,3}
    assert phi_bounds(2, 3).exact == 7


def test_phi_budget_reports_exhaustion():
    p = phi_bounds(2, 7, budget=30)
    assert p.budget_exhausted and p.exact is None
    assert p.beta <= p.lower <= p.upper


def test_sidonset_validation_and_json():
    with pytest.raises(ValueError):
        SidonSet(AbelianGroup((7,)), ((1,), (3,)), 2)
    with pytest.raises(ValueError):
        SidonSet(AbelianGroup((7,)), ((0,), (1,), (2,)), 2)
    B = SidonSet.normalized(AbelianGroup((13,)), [4, 5, 7, 13 + 0], 2)
    assert B.elements[0] == (0,)
    assert SidonSet.from_json(B.to_json()) == B


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(7,), (13,), (2, 6), (3, 4), (15,), (2, 2, 3)]), st.integers(1, 3), st.data())
def test_verify_agrees_with_definition(moduli, h, data):
    G = AbelianGroup(moduli)
    els = list(G.elements())
    k = data.draw(st.integers(2, min(5, len(els))))
    B = data.draw(st.lists(st.sampled_from(els), min_size=k, max_size=k, unique=True))
    assert verify_bh(G, B, h) == naive_bh(G, B, h)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([singer(2), singer(3), bose_chowla(4, 2), radix_set(3, 3)]), st.data())
def test_subsets_and_translates(B, data):
    k = data.draw(st.integers(1, B.size))
    assert B.subset(k).size == k
    shift = data.draw(st.sampled_from(list(B.group.elements())))
    moved = [B.group.add(e, shift) for e in B.elements]
    assert verify_bh(B.group, moved, B.h)


def test_every_group_of_order_twelve_checked():
    found = [str(G) for G in abelian_groups(12) if search_bh(G, 3, 3) is not None]
    assert len(found) == 1
