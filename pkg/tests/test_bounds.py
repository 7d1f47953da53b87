import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from multisetcodes.bounds import (
    anticode_upper,
    asymptotic_estimates,
    beta,
    binary_entropy,
    c_factor,
    density_bounds,
    density_upper_bound,
    fixed_alphabet_bounds,
    growing_alphabet_upper,
    growing_alphabet_upper_best,
    pigeonhole_lower,
    rate_gap,
    seq_prefix_bound,
    stirling_log2_binom,
    growing_alphabet_upper_simple,
)
from multisetcodes.codes import exact_optimal_size
from multisetcodes.core import enumerate_simplex, simplex_size


def near_boundary_count(q, n, h):
    """Oracle for the boundary term: simplex points with some coordinate
    below ceil(h/2), i.e. |simplex(n)| - |simplex(n - q*r)|."""
    r = (h + 1) // 2
    return sum(1 for x in enumerate_simplex(q, n) if min(x) < r)


def test_beta_examples():
    assert beta(1, 5) == 5 and beta(2, 4) == 13 and beta(3, 3) == 12


def test_fixed_alphabet_example():
    rep = fixed_alphabet_bounds(3, 3, 1)
    assert rep.lower == 4
    assert rep.lower_value == Fraction(10, 3)
    # 10/3 codewords from the interior plus 9 points near the boundary
    assert near_boundary_count(3, 3, 1) == 9
    assert rep.upper_value == Fraction(10, 3) + 9
    assert rep.upper == 12
    assert rep.lower <= exact_optimal_size(3, 3, 1).size <= rep.upper


@pytest.mark.parametrize("q,n,h", [(2, 5, 1), (3, 4, 2), (3, 6, 3), (4, 4, 1), (2, 7, 4), (4, 4, 3), (3, 4, 3), (2, 4, 3)])
def test_boundary_term_matches_scan(q, n, h):
    assert anticode_upper(q, n, h) == Fraction(simplex_size(q, n), beta(h, q)) + near_boundary_count(q, n, h)


def test_growing_alphabet_examples():
    assert growing_alphabet_upper_simple(3, 3, 1) == 5
    assert growing_alphabet_upper(3, 3, 1, 0, 1) == Fraction(comb(6, 2), comb(3, 1))


@given(st.integers(2, 6), st.integers(2, 12), st.integers(1, 4))
def test_growing_bound_special_case(q, n, h):
    if n <= h:
        return
    assert growing_alphabet_upper(q, n, h, 0, 1) == growing_alphabet_upper_simple(q, n, h)
    best, r, l = growing_alphabet_upper_best(q, n, h)
    assert best <= growing_alphabet_upper_simple(q, n, h)
    assert best == growing_alphabet_upper(q, n, h, r, l)


@pytest.mark.parametrize("q,n,h", [(2, 6, 1), (2, 8, 3), (3, 3, 1), (3, 4, 1), (3, 5, 2), (4, 3, 1), (3, 6, 3)])
def test_sandwich(q, n, h):
    rep = fixed_alphabet_bounds(q, n, h)
    M = exact_optimal_size(q, n, h).size
    best = growing_alphabet_upper_best(q, n, h)[0]
    assert rep.lower <= M <= min(rep.upper, math.floor(best))


def test_growing_alphabet_rejects_bad_split():
    with pytest.raises(ValueError):
        growing_alphabet_upper(3, 5, 2, 3, 3)
    with pytest.raises(ValueError):
        growing_alphabet_upper(3, 5, 2, 2, 1)


def test_density_examples():
    for m in range(1, 6):
        assert density_upper_bound(m, 2) == Fraction(1, m + 1)
    assert density_upper_bound(2, 4) == Fraction(1, 12)
    for m in range(1, 5):
        for d in range(2, 2 * m + 2):
            b = density_bounds(m, d)
            anticode_best = min(v for k, v in b.items() if k.startswith("anticode"))
            if "balanced-relaxation" in b:
                assert anticode_best <= b["balanced-relaxation"]


def test_c_factor_examples():
    for qt in (Fraction(1, 2), 1, 3, 10):
        assert c_factor(1, qt) == 1
    assert c_factor(2, 1) == 2
    assert c_factor(2, 3) == 2


def test_stirling_ratio():
    for n in (50, 100, 200):
        exact = math.log2(comb(2 * n - 1, n - 1))
        assert abs(2 ** (stirling_log2_binom(1, n) - exact) - 1) < 0.01


def test_asymptotic_report():
    est = asymptotic_estimates(500, 2, q=3)
    assert "asymptotic" in est["tag"]
    assert est["beta_envelope"] == pytest.approx(500**2 / 14)
    est = asymptotic_estimates(100, 1, q_tilde=1)
    assert est["capacity"] == pytest.approx(2.0)
    assert abs(est["stirling_ratio"] - 1) < 0.01


def test_seq_bound_and_gap():
    assert rate_gap(1) == 2.0
    grid = [Fraction(1, 4), Fraction(1, 2), 1, 2, 4, 8, 16]
    gaps = [rate_gap(g) for g in grid]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert seq_prefix_bound(5, 4, 1) == 5**4
    assert seq_prefix_bound(3, 4, 2) == Fraction(81, 1 + 4 * 2)
    with pytest.raises(ValueError):
        seq_prefix_bound(1, 4, 1)


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == 0.0


def test_pigeonhole():
    assert pigeonhole_lower(3, 3, 3) == Fraction(10, 3)


def test_report_json():
    js = fixed_alphabet_bounds(3, 4, 1).to_json()
    assert js["upper_value"] == str(Fraction(js["upper_value"]))
    assert js["lower_method"].startswith("pigeonhole")
