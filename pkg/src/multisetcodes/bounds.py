"""Cardinality and density bounds for multiset codes, in exact arithmetic.

Finite-n bounds are returned as :class:`fractions.Fraction` (or integers
after outward rounding).  Asymptotic envelopes are plain floats and are
always reported under keys tagged ``asymptotic``; they are estimates of a
limit, never certificates at finite n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .core import AnticodeSpec, anticode_size, simplex_size
from .sidon import PhiBounds, beta, phi_bounds

__all__ = [
    "BoundReport",
    "asymptotic_estimates",
    "beta",
    "c_factor",
    "density_bounds",
    "density_upper_bound",
    "fixed_alphabet_bounds",
    "growing_alphabet_upper",
    "growing_alphabet_upper_best",
    "log2_binom",
    "rate_gap",
    "seq_prefix_bound",
    "growing_alphabet_upper_simple",
]


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


@dataclass(frozen=True)
class BoundReport:
    """Lower and upper bounds on an optimal code size, with how each was got."""

    params: dict
    lower: int | None
    upper: int | None
    lower_value: Fraction | None = None
    upper_value: Fraction | None = None
    lower_method: str = ""
    upper_method: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"inconsistent bounds {self.lower} > {self.upper}")

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v

        return {
            "params": self.params,
            "lower": self.lower,
            "upper": self.upper,
            "lower_value": enc(self.lower_value),
            "upper_value": enc(self.upper_value),
            "lower_method": self.lower_method,
            "upper_method": self.upper_method,
            "extras": {k: enc(v) for k, v in self.extras.items()},
        }


def pigeonhole_lower(q: int, n: int, group_order: int) -> Fraction:
    """Some coset of a size-q B_h set in a group of this order has at least
    ``|simplex| / order`` codewords."""
    return Fraction(simplex_size(q, n), group_order)


def anticode_upper(q: int, n: int, h: int) -> Fraction:
    """Code-anticode count on the interior plus every point near the boundary."""
    r = (h + 1) // 2
    # terms with a negative top vanish: the inner simplex is then empty
    boundary = sum(comb(n + q - 1 - j, q - 2) for j in range(1, q * r + 1) if n + q - 1 - j >= 0)
    return Fraction(simplex_size(q, n), beta(h, q)) + boundary


def fixed_alphabet_bounds(q: int, n: int, h: int, phi: PhiBounds | None = None) -> BoundReport:
    if not (q >= 2 and n > h >= 1):
        raise ValueError("need q >= 2 and n > h >= 1")
    if phi is None:
        phi = phi_bounds(h, q)
    order = phi.exact if phi.exact is not None else phi.upper
    low = pigeonhole_lower(q, n, order)
    up = anticode_upper(q, n, h)
    return BoundReport(
        {"q": q, "n": n, "h": h},
        _ceil(low),
        _floor(up),
        low,
        up,
        "pigeonhole/phi.exact" if phi.exact is not None else "pigeonhole/phi.upper",
        "code-anticode+boundary",
        {"phi_used": order, "beta": beta(h, q)},
    )


def growing_alphabet_upper(q: int, n: int, h: int, r: int, l: int) -> Fraction:
    """Bound from disjoint r-deletion/(h-r)-insertion output sets of codewords
    with at least l non-zero coordinates, plus all words with fewer."""
    if not (q >= 2 and n > h >= 1):
        raise ValueError("need q >= 2 and n > h >= 1")
    if not (0 <= r <= h and r <= l <= q):
        raise ValueError(f"need 0 <= r <= h and r <= l <= q, got r={r}, l={l}")
    top = q - 1 + h - 2 * r
    if top < h - r:
        raise ValueError(f"r={r} leaves no room for {h - r} insertions over {q} symbols")
    first = Fraction(comb(n + h - 2 * r + q - 1, q - 1), comb(l, r) * comb(top, h - r))
    rest = sum(comb(q, i) * comb(n - 1, i - 1) for i in range(1, l))
    return first + rest


def growing_alphabet_upper_simple(q: int, n: int, h: int) -> Fraction:
    """The ``r = 0, l = 1`` case: ``C(n+h+q-1, q-1) / C(q-1+h, h)``."""
    return Fraction(comb(n + h + q - 1, q - 1), comb(q - 1 + h, h))


def growing_alphabet_upper_best(q: int, n: int, h: int) -> tuple[Fraction, int, int]:
    """Minimum over the whole (r, l) grid; returns (value, r, l)."""
    best = None
    for r in range(h + 1):
        if q - 1 + h - 2 * r < h - r:
            continue
        for l in range(r, q + 1):
            v = growing_alphabet_upper(q, n, h, r, l)
            if best is None or v < best[0]:
                best = (v, r, l)
    return best


def density_bounds(m: int, d: int) -> dict[str, Fraction]:
    """Every applicable upper bound on the density of a distance-d code in
    ``(Z^m, d_a)``, keyed by method."""
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    out = {}
    for rp in range(d):
        out[f"anticode({rp},{d - 1 - rp})"] = Fraction(1, anticode_size(AnticodeSpec(m, rp, d - 1 - rp)))
    if d <= 2 * m + 1:
        a, b = d // 2, (d - 1) // 2
        out["balanced-relaxation"] = Fraction(factorial(a) * factorial(b)) / Fraction(m + 1 - a) ** (d - 1)
    if m < d:
        out["large-distance"] = Fraction(2**m * factorial(m) ** 3, factorial(2 * m) * (d - m) ** m)
    return out


def density_upper_bound(m: int, d: int) -> Fraction:
    return min(density_bounds(m, d).values())


def c_factor(h: int, q_tilde) -> Fraction:
    """``min_r (h-r)! r! (1+q~)^r`` over ``0 <= r <= h``."""
    if h < 1:
        raise ValueError("h must be at least 1")
    qt = Fraction(q_tilde)
    if qt <= 0:
        raise ValueError("q_tilde must be positive")
    return min(factorial(h - r) * factorial(r) * (1 + qt) ** r for r in range(h + 1))


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def log2_binom(n: int, k: int) -> float:
    return math.log2(comb(n, k))


def stirling_log2_binom(q_tilde: float, n: int) -> float:
    """log2 of the Stirling form of ``C(n + floor(q~ n) - 1, floor(q~ n) - 1)``."""
    qt = float(q_tilde)
    rn = math.floor(Fraction(q_tilde) * n) - qt * n
    return (
        n * (1 + qt) * binary_entropy(1 / (1 + qt))
        - 0.5 * math.log2(2 * math.pi * n)
        + (rn - 0.5) * math.log2(1 + 1 / qt)
    )


def asymptotic_estimates(
    n: int, h: int, q: int | None = None, q_tilde=None, phi: PhiBounds | None = None
) -> dict:
    """Large-n envelopes.  Every float here is an asymptotic estimate."""
    out: dict = {"tag": "asymptotic, not a bound at finite n", "n": n, "h": h}
    if q is not None:
        b = beta(h, q)
        scale = n ** (q - 1) / factorial(q - 1)
        out.update(q=q, beta=b, beta_envelope=scale / b)
        if phi is None:
            phi = phi_bounds(h, q)
        order = phi.exact if phi.exact is not None else phi.upper
        out.update(phi=order, phi_envelope=scale / order)
    if q_tilde is not None:
        qt = Fraction(q_tilde)
        alphabet = math.floor(qt * n)
        exact = comb(n + alphabet - 1, alphabet - 1)
        log_exact = math.log2(exact)
        log_stirling = stirling_log2_binom(qt, n)
        log_scale = h * math.log2(float(qt) * n)
        cap = (1 + float(qt)) * binary_entropy(1 / (1 + float(qt)))
        out.update(
            q_tilde=str(qt),
            alphabet=alphabet,
            log2_binom_exact=log_exact,
            log2_binom_stirling=log_stirling,
            stirling_ratio=2.0 ** (log_stirling - log_exact),
            log2_lower_envelope=log_exact - log_scale,
            log2_upper_envelope=log_exact - log_scale + math.log2(c_factor(h, qt)),
            capacity=cap,
            log_term_coefficient=h + 0.5,
            rate_estimate=cap - (h + 0.5) * math.log2(n) / n,
        )
    return out


def seq_prefix_bound(q_tilde: int, n: int, h: int) -> Fraction:
    """Hamming sphere-packing bound on codes with distance above h."""
    if q_tilde < 2:
        raise ValueError("the inner alphabet needs at least two symbols")
    radius = h // 2
    ball = sum(comb(n, j) * (q_tilde - 1) ** j for j in range(radius + 1))
    return Fraction(q_tilde**n, ball)


def rate_gap(q_tilde) -> float:
    """Asymptotic rate lost by sequence-number prefixes: ``(1+q~) log2(1 + 1/q~)``."""
    qt = float(q_tilde)
    if qt <= 0:
        raise ValueError("q_tilde must be positive")
    return (1 + qt) * math.log2(1 + 1 / qt)
