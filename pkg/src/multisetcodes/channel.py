"""Permutation-channel impairments: random simulation and exhaustive
reachable-output enumeration used as a ground-truth oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .core import MultiplicityVector, enumerate_simplex, multiplicity_vector
from .errors import BudgetExhausted

OUTPUT_LIMIT = 10**6


@dataclass(frozen=True)
class ErrorPattern:
    h_ins: int = 0
    h_del: int = 0
    h_sub: int = 0
    h_ers: int = 0

    def __post_init__(self):
        if min(self.h_ins, self.h_del, self.h_sub, self.h_ers) < 0:
            raise ValueError("error counts must be non-negative")

    @property
    def budget(self) -> int:
        """Equivalent number of deletions (a substitution costs two)."""
        return self.h_ins + self.h_del + 2 * self.h_sub + self.h_ers

    @property
    def removed(self) -> int:
        """Transmitted elements touched by deletions, erasures or substitutions."""
        return self.h_del + self.h_sub + self.h_ers

    @classmethod
    def parse(cls, text: str) -> "ErrorPattern":
        parts = [int(v) for v in text.split(",")]
        if len(parts) != 4:
            raise ValueError("pattern must be ins,del,sub,ers")
        return cls(*parts)

    def to_json(self) -> dict:
        return {"ins": self.h_ins, "del": self.h_del, "sub": self.h_sub, "ers": self.h_ers}


@dataclass(frozen=True)
class ChannelOutput:
    """Received multiset: symbol counts plus the number of ``?`` symbols."""

    counts: MultiplicityVector
    erasures: int = 0

    @property
    def cardinality(self) -> int:
        return sum(self.counts) + self.erasures

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "erasures": self.erasures}


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator, so draws are reproducible across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def apply_pattern(x: Sequence[int], pattern: ErrorPattern, seed: int = 0) -> ChannelOutput:
    """Apply exactly the given numbers of each impairment, chosen at random."""
    x = multiplicity_vector(x)
    q, n = len(x), sum(x)
    if pattern.removed > n:
        raise ValueError(f"pattern touches {pattern.removed} elements of a length-{n} multiset")
    if pattern.h_sub and q < 2:
        raise ValueError("substitutions need at least two symbols")
    rng = make_rng(seed)
    symbols = np.repeat(np.arange(q), x)
    picked = rng.permutation(n)[: pattern.removed]
    out = list(x)
    for s in symbols[picked]:
        out[s] -= 1
    subs = symbols[picked[pattern.h_del + pattern.h_ers :]]
    for s in subs:
        new = int(rng.integers(q - 1))
        out[new + (new >= s)] += 1
    for s in rng.integers(q, size=pattern.h_ins):
        out[int(s)] += 1
    return ChannelOutput(tuple(out), pattern.h_ers)


def _sub_vectors(x: Sequence[int], k: int) -> Iterator[tuple[int, ...]]:
    """Sub-multisets of ``x`` with exactly k elements."""
    if not x:
        if k == 0:
            yield ()
        return
    for first in range(min(x[0], k) + 1):
        for rest in _sub_vectors(x[1:], k - first):
            yield (first,) + rest


def _substitution_images(S: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Multisets obtainable by changing every element of S to another symbol.

    Such a relabelling exists iff no symbol could be forced onto itself,
    i.e. ``S[a] + T[a] <= |S|`` for every symbol a (Hall's condition).
    """
    s = sum(S)
    for T in enumerate_simplex(len(S), s):
        if all(a + b <= s for a, b in zip(S, T)):
            yield T


def _exact_outputs(x: MultiplicityVector, p: ErrorPattern, acc: set, limit: int):
    q = len(x)
    inserts = list(enumerate_simplex(q, p.h_ins))
    for R in _sub_vectors(x, p.removed):
        base = [a - b for a, b in zip(x, R)]
        for S in _sub_vectors(R, p.h_sub):
            for T in _substitution_images(S):
                mid = [a + b for a, b in zip(base, T)]
                for ins in inserts:
                    acc.add(ChannelOutput(tuple(a + b for a, b in zip(mid, ins)), p.h_ers))
                    if len(acc) > limit:
                        raise BudgetExhausted(f"more than {limit} channel outputs")


def enumerate_outputs(
    x: Sequence[int], pattern: ErrorPattern, at_most: bool = False, limit: int = OUTPUT_LIMIT
) -> frozenset[ChannelOutput]:
    """Every multiset the channel can deliver from ``x``.

    With ``at_most`` each count is an upper limit (impairments that would
    touch more elements than exist are clipped); otherwise counts are exact
    and an infeasible pattern yields the empty set.
    """
    x = multiplicity_vector(x)
    n = sum(x)
    acc: set[ChannelOutput] = set()
    if not at_most:
        if pattern.removed <= n and not (pattern.h_sub and len(x) < 2):
            _exact_outputs(x, pattern, acc, limit)
        return frozenset(acc)
    for i, d, s, e in product(
        range(pattern.h_ins + 1),
        range(pattern.h_del + 1),
        range(pattern.h_sub + 1),
        range(pattern.h_ers + 1),
    ):
        sub = ErrorPattern(i, d, s, e)
        if sub.removed <= n and not (s and len(x) < 2):
            _exact_outputs(x, sub, acc, limit)
    return frozenset(acc)


def confusable(x: Sequence[int], y: Sequence[int], pattern: ErrorPattern, at_most: bool = False) -> bool:
    """Can x and y produce a common channel output?"""
    return not enumerate_outputs(x, pattern, at_most).isdisjoint(enumerate_outputs(y, pattern, at_most))


def _pairwise_disjoint(code, outputs_of) -> bool:
    owner: dict[ChannelOutput, int] = {}
    for i, c in enumerate(code.codewords):
        for out in outputs_of(c):
            j = owner.setdefault(out, i)
            if j != i:
                return False
    return True


def verify_correction_capability(code, pattern: ErrorPattern) -> bool:
    """No two codewords share an output when each impairment count is at most
    the pattern's."""
    return _pairwise_disjoint(code, lambda c: enumerate_outputs(c, pattern, at_most=True))


def corrects_deletions_bruteforce(code, h: int) -> bool:
    """Oracle: exactly ``min(h, n)`` deletions never confuse two codewords.

    For equal-length words this is equivalent to correcting up to h.
    """
    k = min(h, code.n)
    return _pairwise_disjoint(code, lambda c: enumerate_outputs(c, ErrorPattern(h_del=k)))


def detects_substitutions_bruteforce(code, h: int) -> bool:
    """Oracle: no codeword turns into another under at most h substitutions."""
    k = min(h, code.n)
    words = set(code.codewords)
    for c in code.codewords:
        for out in enumerate_outputs(c, ErrorPattern(h_sub=k), at_most=True):
            if out.counts != c and out.counts in words:
                return False
    return True
