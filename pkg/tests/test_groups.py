import pytest
from hypothesis import given, strategies as st

from multisetcodes.groups import (
    AbelianGroup,
    FiniteField,
    abelian_groups,
    discrete_log_table,
    factorize,
    get_field,
    is_prime,
    next_prime_power,
    prime_power,
    primitive_element,
)


def test_group_arithmetic_examples():
    G = AbelianGroup.parse("Z2xZ6")
    assert G.add((1, 1), (1, 5)) == (0, 0)
    assert G.scalar_mul(2, (0, 5)) == (0, 4)
    Z13 = AbelianGroup.parse("Z13")
    assert Z13.scalar_mul(-1, (3,)) == (10,)


def test_enumerate_group():
    assert len(list(AbelianGroup.parse("Z2xZ6").elements())) == 12
    assert len(list(AbelianGroup.parse("Z13").elements())) == 13
    assert list(AbelianGroup.cyclic(2).elements()) == [(0,), (1,)]


def test_parse_and_str():
    G = AbelianGroup.parse("Z2xZ6")
    assert G.moduli == (2, 6)
    assert str(G) == "Z2xZ6"
    assert AbelianGroup.from_json(G.to_json()) == G
    with pytest.raises(ValueError):
        AbelianGroup.parse("Z0")


def test_invariant_factors():
    assert AbelianGroup((2, 6)).invariant_factors == (2, 6)
    assert AbelianGroup((4, 3)).is_isomorphic(AbelianGroup((12,)))
    assert not AbelianGroup((2, 6)).is_isomorphic(AbelianGroup((12,)))


def test_abelian_groups_counts():
    # number of abelian groups of order n is the product of partition numbers
    assert len(abelian_groups(12)) == 2
    assert len(abelian_groups(16)) == 5
    assert len(abelian_groups(72)) == 6
    assert all(G.order == 36 for G in abelian_groups(36))


def test_subgroup_order():
    G = AbelianGroup((2, 6))
    assert G.subgroup_order([(1, 1), (0, 5)]) == 12
    assert G.subgroup_order([(0, 2)]) == 3


def test_integer_helpers():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert is_prime(13) and not is_prime(1) and not is_prime(91)
    assert prime_power(9) == (3, 2) and prime_power(12) is None
    assert next_prime_power(6) == 7 and next_prime_power(8) == 8


def test_field_examples():
    F3 = get_field(3)
    assert F3.mul(2, 2) == 1
    F4 = get_field(2, 2)
    # t is encoded as 2, t + 1 as 3
    assert F4.mul(2, 2) == 3
    F9 = get_field(3, 2)
    assert all(F9.mul(F9.inv(x), x) == 1 for x in range(1, 9))


def test_primitive_examples():
    assert primitive_element(get_field(3)) == 2
    assert primitive_element(get_field(7)) == 3
    assert primitive_element(get_field(2, 2)) == 2


def test_discrete_log_examples():
    t3 = discrete_log_table(get_field(3), 2)
    assert t3[1] == 0 and t3[2] == 1
    t7 = discrete_log_table(get_field(7), 3)
    assert t7[2] == 2 and len(t7) == 6
    assert len(discrete_log_table(get_field(2, 3), primitive_element(get_field(2, 3)))) == 7


def test_discrete_log_needs_generator():
    with pytest.raises(ValueError):
        discrete_log_table(get_field(7), 2)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 2)])
def test_field_axioms_exhaustive(p, k):
    F = get_field(p, k)
    Q = F.order
    els = list(F.elements())
    assert len(els) == Q
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.inv(a) == F.inv_euclid(a)
            assert F.pow(a, Q - 1) == 1
    g = F.primitive
    assert F.multiplicative_order(g) == Q - 1
    assert FiniteField.from_json(F.to_json()).modulus == F.modulus


@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (2, 4)]), st.data())
def test_field_distributive(pk, data):
    F = get_field(*pk)
    a, b, c = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)


def test_subfield():
    F = get_field(2, 4)
    sub = F.subfield(2)
    assert len(sub) == 4
    assert all(F.pow(x, 4) == x for x in sub)


@given(st.lists(st.integers(2, 8), min_size=1, max_size=3), st.data())
def test_group_laws(moduli, data):
    G = AbelianGroup(tuple(moduli))
    pick = st.tuples(*[st.integers(0, m - 1) for m in moduli])
    a, b = data.draw(pick), data.draw(pick)
    assert G.sub(G.add(a, b), b) == a
    assert G.add(a, G.neg(a)) == G.zero
    assert G.from_index(G.index(a)) == a
    assert G.scalar_mul(G.element_order(a), a) == G.zero
