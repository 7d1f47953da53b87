import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from multisetcodes.intmat import diagonal, hermite_normal_form, left_kernel, matmul, smith_normal_form


def _det(a):
    return int(sympy.Matrix(a).det())


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150)
@given(matrices)
def test_snf_factorisation(a):
    U, D, V = smith_normal_form(a)
    assert matmul(matmul(U, a), V) == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    d = diagonal(D)
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    # non-zero invariants come first
    assert d[: len(nz)] == nz


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_matches_sympy(a):
    d = diagonal(smith_normal_form(a)[1])
    ref = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    ref_d = sorted(abs(int(ref[i, i])) for i in range(len(a)))
    assert sorted(d) == ref_d


def test_snf_example():
    U, D, V = smith_normal_form([[2, 2], [0, 6]])
    assert diagonal(D) == [2, 6]


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_hnf_same_lattice(a):
    if _det(a) == 0:
        return
    H = hermite_normal_form(a)
    n = len(a)
    assert all(H[i][j] == 0 for i in range(n) for j in range(i))
    assert all(H[i][i] > 0 for i in range(n))
    assert all(0 <= H[k][i] < H[i][i] for i in range(n) for k in range(i))
    assert abs(_det(H)) == abs(_det(a))
    # every row of H is an integer combination of the rows of a
    sol = sympy.Matrix(a).T.solve(sympy.Matrix(H).T)
    assert all(x.is_integer for x in sol)


def test_hnf_of_equivalent_bases_is_equal():
    rng = random.Random(5)
    a = [[2, 2], [0, 6]]
    for _ in range(20):
        i, j = rng.sample(range(2), 2)
        k = rng.randint(-3, 3)
        a = [row[:] for row in a]
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        assert hermite_normal_form(a) == [[2, 2], [0, 6]]


@settings(max_examples=80)
@given(matrices)
def test_left_kernel(a):
    K = left_kernel(a)
    for row in K:
        assert matmul([row], a) == [[0] * len(a[0])]
    rank = sympy.Matrix(a).rank()
    assert len(K) == len(a) - rank


def test_rejects_ragged():
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])
