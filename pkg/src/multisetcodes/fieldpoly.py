"""Univariate polynomials over a :class:`FiniteField` and their factorisation.

A polynomial is a list of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import random
from typing import Sequence

from .groups import FiniteField

Poly = list[int]


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence[int]) -> int:
    return len(a) - 1


def add(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def sub(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> Poly:
    return add(F, a, [F.neg(c) for c in b])


def scale(F: FiniteField, a: Sequence[int], c: int) -> Poly:
    return trim(F.mul(x, c) for x in a)


def mul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_poly(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    inv_lead = F.inv(b[-1])
    q = [0] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, y))
        r = trim(r)
    return trim(q), r


def mod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> Poly:
    return divmod_poly(F, a, b)[1]


def monic(F: FiniteField, a: Sequence[int]) -> Poly:
    a = trim(a)
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F: FiniteField, a: Sequence[int], e: int, m: Sequence[int]) -> Poly:
    result: Poly = [1]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def derivative(F: FiniteField, a: Sequence[int]) -> Poly:
    return trim(_int_mul(F, i, c) for i, c in enumerate(a) if i > 0)


def _int_mul(F: FiniteField, k: int, c: int) -> int:
    return F.mul(F.from_int(k), c)


def evaluate(F: FiniteField, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(F: FiniteField, roots: Sequence[int]) -> Poly:
    """``prod (x - u)`` over the given roots."""
    out: Poly = [1]
    for u in roots:
        out = mul(F, out, [F.neg(u), 1])
    return out


def _pth_root(F: FiniteField, a: Sequence[int]) -> Poly:
    """Inverse of the Frobenius on a polynomial in ``x^p``."""
    p = F.p
    # a^(p^(k-1)) is the p-th root of a field element
    e = p ** (F.k - 1)
    return trim(F.pow(a[i], e) for i in range(0, len(a), p))


def squarefree_factorization(F: FiniteField, f: Sequence[int]) -> list[tuple[Poly, int]]:
    """Pairs ``(g, e)`` with ``monic(f) = prod g^e``, each g squarefree and
    the g pairwise coprime."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    out = []
    df = derivative(F, f)
    if not df:
        # f is a polynomial in x^p
        return [(g, e * F.p) for g, e in squarefree_factorization(F, _pth_root(F, f))]
    c = gcd(F, f, df)
    w = divmod_poly(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        fac = divmod_poly(F, w, y)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = divmod_poly(F, c, y)[0]
        i += 1
    if len(c) > 1:
        out += [(g, e * F.p) for g, e in squarefree_factorization(F, _pth_root(F, c))]
    return sorted(out, key=lambda t: t[1])


def distinct_degree_factorization(F: FiniteField, f: Sequence[int]) -> list[tuple[Poly, int]]:
    """For squarefree monic f: pairs ``(g_d, d)`` where g_d is the product of
    all degree-d irreducible factors."""
    Q = F.order
    f = monic(F, f)
    out = []
    xpow: Poly = [0, 1]
    d = 0
    while 2 * (d + 1) <= degree(f):
        d += 1
        xpow = powmod(F, xpow, Q, f)
        g = gcd(F, f, sub(F, xpow, [0, 1]))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_poly(F, f, g)[0]
            xpow = mod(F, xpow, f)
    if len(f) > 1:
        out.append((f, degree(f)))
    return out


def equal_degree_factorization(
    F: FiniteField, f: Sequence[int], d: int, rng: random.Random | None = None
) -> list[Poly]:
    """Split a squarefree monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    f = monic(F, f)
    n = degree(f)
    if n == d:
        return [f]
    rng = rng or random.Random(0)
    Q = F.order
    while True:
        a = trim(rng.randrange(Q) for _ in range(n))
        if len(a) <= 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1)) splits in characteristic 2
            t, term = list(a), list(a)
            for _ in range(F.k * d - 1):
                term = mod(F, mul(F, term, term), f)
                t = add(F, t, term)
            g = gcd(F, f, t)
        else:
            g = gcd(F, f, sub(F, powmod(F, a, (Q**d - 1) // 2, f), [1]))
        if 0 < degree(g) < n:
            q = divmod_poly(F, f, g)[0]
            return equal_degree_factorization(F, g, d, rng) + equal_degree_factorization(F, q, d, rng)


def factor(F: FiniteField, f: Sequence[int]) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted canonically."""
    rng = random.Random(0)
    out = []
    for g, e in squarefree_factorization(F, f):
        for h, d in distinct_degree_factorization(F, g):
            for irr in equal_degree_factorization(F, h, d, rng):
                out.append((irr, e))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def roots(F: FiniteField, f: Sequence[int]) -> list[int]:
    """Roots of f in F with multiplicity, sorted."""
    out = []
    for g, e in factor(F, f):
        if len(g) == 2:
            out += [F.neg(g[0])] * e
    return sorted(out)


def roots_bruteforce(F: FiniteField, f: Sequence[int]) -> list[int]:
    """Roots with multiplicity by scanning every field element."""
    f = trim(f)
    out = []
    for x in F.elements():
        while len(f) > 1 and evaluate(F, f, x) == 0:
            out.append(x)
            f = divmod_poly(F, f, [F.neg(x), 1])[0]
    return sorted(out)
