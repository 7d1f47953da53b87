"""Two simpler multiset code families.

* Sequence-number prefixes: tag each symbol of a classical block codeword
  with its position, so order is recoverable and deletions become erasures.
* Root multisets: a monic polynomial whose top h non-leading coefficients
  are zero is determined by any ``n - h`` of its roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Protocol, Sequence

from . import fieldpoly as fp
from .bounds import rate_gap, seq_prefix_bound, growing_alphabet_upper_simple
from .core import simplex_size
from .errors import BudgetExhausted, DecodingError
from .groups import FIELD_BUDGET, FiniteField, get_field, is_prime, lcm, next_prime_power

# --------------------------------------------------------------------------
# inner block codes


class BlockCode(Protocol):
    alphabet: int
    length: int
    dimension: int
    distance: int

    def encode(self, message: Sequence[int]) -> tuple[int, ...]: ...

    def decode_erasures(self, word: Sequence[int | None]) -> tuple[int, ...]: ...


def _check_message(code, message: Sequence[int]) -> list[int]:
    msg = [int(s) for s in message]
    if len(msg) != code.dimension:
        raise ValueError(f"message length {len(msg)} != code dimension {code.dimension}")
    if any(not 0 <= s < code.alphabet for s in msg):
        raise ValueError(f"message symbols must lie in [0, {code.alphabet})")
    return msg


@dataclass(frozen=True)
class IdentityCode:
    alphabet: int
    length: int

    @property
    def dimension(self) -> int:
        return self.length

    @property
    def distance(self) -> int:
        return 1

    def encode(self, message):
        return tuple(_check_message(self, message))

    def decode_erasures(self, word):
        if any(s is None for s in word):
            raise DecodingError("the identity code cannot fill erasures")
        return tuple(word)


@dataclass(frozen=True)
class SingleParityCode:
    """Last symbol makes the sum vanish mod the alphabet size."""

    alphabet: int
    length: int

    @property
    def dimension(self) -> int:
        return self.length - 1

    @property
    def distance(self) -> int:
        return 2

    def encode(self, message):
        msg = _check_message(self, message)
        return tuple(msg + [-sum(msg) % self.alphabet])

    def decode_erasures(self, word):
        missing = [i for i, s in enumerate(word) if s is None]
        if len(missing) > 1:
            raise DecodingError(f"{len(missing)} erasures; single parity fills only one")
        w = list(word)
        if missing:
            w[missing[0]] = -sum(s for s in w if s is not None) % self.alphabet
        elif sum(w) % self.alphabet:
            raise DecodingError("parity check failed")
        return tuple(w[: self.dimension])


@dataclass(frozen=True)
class ReedSolomonCode:
    """Evaluations of a degree < k polynomial at ``0, 1, ..., n-1`` over GF(p)."""

    alphabet: int
    length: int
    dimension: int

    def __post_init__(self):
        if not is_prime(self.alphabet):
            raise ValueError("Reed-Solomon alphabet must be a prime here")
        if not 1 <= self.dimension <= self.length <= self.alphabet:
            raise ValueError("need 1 <= k <= n <= p")

    @classmethod
    def for_params(cls, q_tilde: int, n: int, h: int) -> "ReedSolomonCode":
        p = max(n, q_tilde, 2)
        while not is_prime(p):
            p += 1
        return cls(p, n, n - h)

    @property
    def distance(self) -> int:
        return self.length - self.dimension + 1

    def encode(self, message):
        msg = _check_message(self, message)
        p = self.alphabet
        out = []
        for x in range(self.length):
            acc = 0
            for c in reversed(msg):
                acc = (acc * x + c) % p
            out.append(acc)
        return tuple(out)

    def _interpolate(self, points: list[tuple[int, int]]) -> list[int]:
        """Coefficients of the unique degree < len(points) interpolant."""
        p = self.alphabet
        coeffs = [0] * len(points)
        for j, (xj, yj) in enumerate(points):
            # Lagrange basis polynomial for xj
            basis = [1]
            denom = 1
            for m, (xm, _) in enumerate(points):
                if m != j:
                    basis = [(a - xm * b) % p for a, b in zip([0] + basis, basis + [0])]
                    denom = denom * (xj - xm) % p
            scale_ = yj * pow(denom, p - 2, p) % p
            for i, c in enumerate(basis):
                coeffs[i] = (coeffs[i] + scale_ * c) % p
        return coeffs

    def decode_erasures(self, word):
        known = [(x, int(s)) for x, s in enumerate(word) if s is not None]
        k = self.dimension
        if len(known) < k:
            raise DecodingError(f"only {len(known)} symbols survive; {k} are needed")
        coeffs = self._interpolate(known[:k])
        cw = self.encode(coeffs)
        if any(s != cw[x] for x, s in known):
            raise DecodingError("surviving symbols are inconsistent with any codeword")
        return tuple(coeffs)


# --------------------------------------------------------------------------
# sequence-number prefixes


@dataclass(frozen=True)
class IndexedCodeParams:
    """Outer alphabet: pairs (position 1..n, inner symbol)."""

    q_tilde: int
    n: int
    h: int
    inner: BlockCode | None = None

    def __post_init__(self):
        if self.inner is None:
            object.__setattr__(self, "inner", ReedSolomonCode.for_params(self.q_tilde, self.n, self.h))
        if self.inner.length != self.n:
            raise ValueError("inner code length must equal n")
        if self.inner.distance < self.h + 1:
            raise ValueError(f"inner distance {self.inner.distance} cannot absorb {self.h} deletions")

    @property
    def symbol_alphabet(self) -> int:
        return self.inner.alphabet

    @property
    def outer_alphabet(self) -> int:
        return self.n * self.symbol_alphabet

    def to_multiplicity(self, word: Sequence[tuple[int, int]]) -> tuple[int, ...]:
        """Multiplicity vector over the outer alphabet ``(i-1)*q + s``."""
        x = [0] * self.outer_alphabet
        for i, s in word:
            x[(i - 1) * self.symbol_alphabet + s] += 1
        return tuple(x)


def seq_encode(params: IndexedCodeParams, message: Sequence[int]) -> tuple[tuple[int, int], ...]:
    symbols = params.inner.encode(message)
    return tuple((i + 1, s) for i, s in enumerate(symbols))


def seq_decode(params: IndexedCodeParams, received: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    word: list[int | None] = [None] * params.n
    for i, s in received:
        if not 1 <= i <= params.n:
            raise DecodingError(f"sequence number {i} out of range")
        if word[i - 1] is not None:
            raise DecodingError(f"sequence number {i} received twice")
        word[i - 1] = s
    missing = word.count(None)
    if missing > params.h:
        raise DecodingError(f"{missing} packets missing; at most {params.h} recoverable")
    return params.inner.decode_erasures(word)


def seq_code_size(params: IndexedCodeParams) -> int:
    return params.inner.alphabet ** params.inner.dimension


def _phi_upper_estimate(h: int, q: int) -> int:
    """Order of the smallest constructible group with a size-q B_h set
    (numeric only; nothing is built)."""
    cands = [(h + 1) ** (q - 1)]
    if h == 1:
        cands.append(q)
    m = next_prime_power(max(q - 1, 2))
    cands.append((m ** (h + 1) - 1) // (m - 1))
    if h >= 2:
        cands.append(next_prime_power(q) ** h - 1)
    return min(cands)


def compare_rates(q_tilde: int, n: int, h: int) -> dict:
    """Rates (bits per symbol) of prefix codes against general multiset codes
    over the same ``q~ n``-symbol alphabet."""
    q = q_tilde * n
    # a one-symbol inner alphabet admits a single block, so one codeword
    seq_upper = seq_prefix_bound(q_tilde, n, h) if q_tilde >= 2 else Fraction(1)
    general_lower = Fraction(simplex_size(q, n), _phi_upper_estimate(h, q))
    general_upper = growing_alphabet_upper_simple(q, n, h)
    r_seq = math.log2(seq_upper) / n
    r_low = math.log2(general_lower) / n
    return {
        "q_tilde": q_tilde,
        "n": n,
        "h": h,
        "alphabet": q,
        "seq_upper": str(seq_upper),
        "general_lower": str(general_lower),
        "general_upper": str(general_upper),
        "rate_seq_upper": r_seq,
        "rate_general_lower": r_low,
        "rate_general_upper": math.log2(general_upper) / n,
        "rate_difference_lower": r_low - r_seq,
        "asymptotic_gap": rate_gap(q_tilde),
    }


# --------------------------------------------------------------------------
# polynomial roots


@dataclass(frozen=True)
class PolyCodeParams:
    p: int
    m: int
    n: int
    h: int

    def __post_init__(self):
        if not is_prime(self.p) or self.m < 1:
            raise ValueError("need a prime p and m >= 1")
        if not 0 <= self.h < self.n:
            raise ValueError("need 0 <= h < n")

    @property
    def base_field(self) -> FiniteField:
        return get_field(self.p, self.m)

    @property
    def message_length(self) -> int:
        return self.n - self.h

    @property
    def cardinality(self) -> int:
        return self.p ** (self.m * (self.n - self.h))

    def polynomial(self, message: Sequence[int]) -> fp.Poly:
        F = self.base_field
        if len(message) != self.message_length:
            raise ValueError(f"message needs {self.message_length} coefficients")
        coeffs = [F.check(int(s)) for s in message] + [0] * self.h + [1]
        return coeffs

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "n": self.n, "h": self.h}


@dataclass(frozen=True)
class VietaCodeword:
    """Root multiset inside ``GF(p^K)``; the field travels with the roots."""

    field: FiniteField
    roots: tuple[int, ...]

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "roots": list(self.roots)}

    @classmethod
    def from_json(cls, obj: dict) -> "VietaCodeword":
        return cls(FiniteField.from_json(obj["field"]), tuple(obj["roots"]))


@lru_cache(maxsize=None)
def embedding(p: int, m: int, K: int) -> tuple[int, ...]:
    """Field homomorphism ``GF(p^m) -> GF(p^K)`` as a lookup table.

    The generator ``t`` of the small field goes to the numerically smallest
    root of its defining polynomial inside the order-``p^m`` subfield (the
    identity when ``K == m``).
    """
    if K % m:
        raise ValueError(f"GF({p}^{m}) does not embed in GF({p}^{K})")
    small = get_field(p, m)
    if K == m:
        return tuple(small.elements())
    big = get_field(p, K)
    modulus = list(small.modulus)  # coefficients already in the prime field
    alpha = min(a for a in big.subfield(m) if fp.evaluate(big, modulus, a) == 0)
    table = []
    for a in small.elements():
        acc = 0
        for c in reversed(small.coeffs(a)):
            acc = big.add(big.mul(acc, alpha), c)
        table.append(acc)
    return tuple(table)


def splitting_degree(params: PolyCodeParams, message: Sequence[int]) -> int:
    """K = m * lcm of the irreducible factor degrees over the base field."""
    factors = fp.factor(params.base_field, params.polynomial(message))
    return params.m * lcm(*(fp.degree(g) for g, _ in factors))


def vieta_encode(params: PolyCodeParams, message: Sequence[int]) -> VietaCodeword:
    F = params.base_field
    poly = params.polynomial(message)
    factors = fp.factor(F, poly)
    K = params.m * lcm(*(fp.degree(g) for g, _ in factors))
    if params.p**K > FIELD_BUDGET:
        raise BudgetExhausted(f"splitting field GF({params.p}^{K}) exceeds the field budget")
    E = get_field(params.p, K)
    emb = embedding(params.p, params.m, K)
    roots: list[int] = []
    for g, e in factors:
        lifted = [emb[c] for c in g]
        # g splits into distinct linear factors over E
        for lin in fp.equal_degree_factorization(E, lifted, 1):
            roots += [E.neg(lin[0])] * e
    if len(roots) != params.n:
        raise AssertionError("polynomial failed to split in its splitting field")
    return VietaCodeword(E, tuple(sorted(roots)))


def elementary_symmetric(E: FiniteField, values: Sequence[int]) -> list[int]:
    """``[e_0, e_1, ..., e_len]`` of the given field elements."""
    e = [1] + [0] * len(values)
    for v in values:
        for k in range(len(values), 0, -1):
            e[k] = E.add(e[k], E.mul(e[k - 1], v))
    return e


def vieta_decode(params: PolyCodeParams, received: VietaCodeword) -> tuple[int, ...]:
    """Recover the message from any ``n - t`` roots, ``t <= h``."""
    E = received.field
    known = list(received.roots)
    t = params.n - len(known)
    if not 0 <= t <= params.h:
        raise DecodingError(f"{t} roots missing; at most {params.h} recoverable")
    ek = elementary_symmetric(E, known)
    # e_j(all) = 0 for 1 <= j <= h, so the missing roots' symmetric values
    # follow from prod(1 + u z) over all roots = 1 up to degree h
    em = [1]
    for j in range(1, t + 1):
        acc = 0
        for i in range(j):
            if j - i < len(ek):
                acc = E.add(acc, E.mul(em[i], ek[j - i]))
        em.append(E.neg(acc))
    # prod (x - u) = sum_k (-1)^k e_k x^(t-k)
    missing_poly = [0] * (t + 1)
    for k in range(t + 1):
        c = em[k] if k % 2 == 0 else E.neg(em[k])
        missing_poly[t - k] = c
    missing = fp.roots_bruteforce(E, missing_poly)
    if len(missing) != t:
        raise DecodingError("the missing roots do not lie in the declared field")
    full = fp.from_roots(E, known + missing)
    emb = embedding(params.p, params.m, E.k)
    inverse = {v: i for i, v in enumerate(emb)}
    try:
        coeffs = [inverse[c] for c in full[: params.n]]
    except KeyError:
        raise DecodingError("recovered coefficients fall outside the base field") from None
    if any(coeffs[params.n - params.h :]):
        raise DecodingError("recovered polynomial has nonzero reserved coefficients")
    return tuple(coeffs[: params.message_length])


def vieta_messages(params: PolyCodeParams):
    F = params.base_field
    return product(range(F.order), repeat=params.message_length)
