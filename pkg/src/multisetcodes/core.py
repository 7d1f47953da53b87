"""Multiplicity vectors, the simplex code space, the two metrics and anticodes.

A multiset over the alphabet ``{0, ..., q-1}`` is stored as the tuple of
multiplicities ``x`` with ``x[i]`` copies of symbol ``i``.  Its length is
``sum(x)``.  All multisets of a fixed length ``n`` form the discrete simplex,
which is a translate of the lattice ``A_{q-1}`` (integer vectors with zero
coordinate sum) cut down to the non-negative orthant.

Orders
------
The simplex is enumerated in *colexicographic* order: ``x`` precedes ``y``
when, at the last coordinate where they differ, ``x`` is smaller.  For
``q = 2, n = 3`` that is ``(3,0), (2,1), (1,2), (0,3)``.  :func:`simplex_rank`
and :func:`simplex_unrank` are the matching ranking functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterable, Iterator, Sequence

MultiplicityVector = tuple[int, ...]
SignedVector = tuple[int, ...]


def multiplicity_vector(counts: Iterable[int], n: int | None = None) -> MultiplicityVector:
    """Validate and freeze a multiplicity vector; optionally check its length."""
    x = tuple(int(c) for c in counts)
    if any(c < 0 for c in x):
        raise ValueError(f"multiplicities must be non-negative: {x}")
    if n is not None and sum(x) != n:
        raise ValueError(f"vector {x} has length {sum(x)}, expected {n}")
    return x


def d1(x: Sequence[int], y: Sequence[int]) -> int:
    """Half the l1 distance; the graph distance on the simplex."""
    if len(x) != len(y):
        raise ValueError(f"alphabet sizes differ: {len(x)} vs {len(y)}")
    if sum(x) != sum(y):
        raise ValueError(f"lengths differ: {sum(x)} vs {sum(y)}")
    total = sum(abs(a - b) for a, b in zip(x, y))
    if total % 2:
        # cannot happen for equal entry sums; guards against caller mixups
        raise ValueError("l1 distance is odd")
    return total // 2


def da(u: Sequence[int], v: Sequence[int]) -> int:
    """Asymmetric-channel distance: the larger of the up- and down-moves."""
    if len(u) != len(v):
        raise ValueError(f"dimensions differ: {len(u)} vs {len(v)}")
    up = down = 0
    for a, b in zip(u, v):
        if a > b:
            up += a - b
        else:
            down += b - a
    return max(up, down)


def da_norm(u: Sequence[int]) -> int:
    up = sum(c for c in u if c > 0)
    down = -sum(c for c in u if c < 0)
    return max(up, down)


def drop_coordinate(x: Sequence[int]) -> SignedVector:
    """Map a point of ``A_m`` to ``Z^m`` by forgetting coordinate 0.

    This is an isometry from ``(A_m, d1)`` onto ``(Z^m, da)``.
    """
    if sum(x) != 0:
        raise ValueError(f"{tuple(x)} is not in A_m (entry sum {sum(x)})")
    return tuple(x[1:])


def lift_coordinate(x: Sequence[int]) -> SignedVector:
    """Inverse of :func:`drop_coordinate`."""
    return (-sum(x), *x)


def simplex_size(q: int, n: int) -> int:
    if n < 0 or q < 1:
        return 0
    return comb(n + q - 1, q - 1)


def enumerate_simplex(q: int, n: int) -> Iterator[MultiplicityVector]:
    """Yield every length-``n`` multiplicity vector over ``q`` symbols, colex order."""
    if q < 1 or n < 0:
        return
    if q == 1:
        yield (n,)
        return
    for last in range(n + 1):
        for head in enumerate_simplex(q - 1, n - last):
            yield head + (last,)


def simplex_rank(x: Sequence[int]) -> int:
    """Position of ``x`` in :func:`enumerate_simplex` order."""
    x = multiplicity_vector(x)
    rank = 0
    remaining = sum(x)
    for i in range(len(x) - 1, 0, -1):
        # vectors agreeing above i with a smaller i-th count come first
        for v in range(x[i]):
            rank += simplex_size(i, remaining - v)
        remaining -= x[i]
    return rank


def simplex_unrank(q: int, n: int, rank: int) -> MultiplicityVector:
    if not 0 <= rank < simplex_size(q, n):
        raise IndexError(f"rank {rank} out of range for q={q}, n={n}")
    out = [0] * q
    remaining = n
    for i in range(q - 1, 0, -1):
        v = 0
        while True:
            block = simplex_size(i, remaining - v)
            if rank < block:
                break
            rank -= block
            v += 1
        out[i] = v
        remaining -= v
    out[0] = remaining
    return tuple(out)


def colex_key(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(x))


@dataclass(frozen=True)
class AnticodeSpec:
    """The anticode ``S_m(r+, r-)`` of integer vectors in ``Z^m`` whose
    positive entries sum to at most ``r_plus`` and whose negative entries sum
    to at most ``r_minus`` in absolute value."""

    m: int
    r_plus: int
    r_minus: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("anticode dimension must be positive")
        if self.r_plus < 0 or self.r_minus < 0:
            raise ValueError("anticode radii must be non-negative")

    @property
    def diameter(self) -> int:
        return self.r_plus + self.r_minus

    def to_json(self) -> dict:
        return {"m": self.m, "r_plus": self.r_plus, "r_minus": self.r_minus}

    @classmethod
    def from_json(cls, obj: dict) -> "AnticodeSpec":
        return cls(int(obj["m"]), int(obj["r_plus"]), int(obj["r_minus"]))


def anticode_members(spec: AnticodeSpec) -> frozenset[SignedVector]:
    """Brute-force enumeration of the anticode by scanning its bounding box."""
    box = range(-spec.r_minus, spec.r_plus + 1)
    members = set()
    for x in product(box, repeat=spec.m):
        up = sum(c for c in x if c > 0)
        if up > spec.r_plus:
            continue
        if -sum(c for c in x if c < 0) <= spec.r_minus:
            members.add(x)
    return frozenset(members)


def anticode_size(spec: AnticodeSpec) -> int:
    """Closed-form cardinality of the anticode.

    The ``j``-th term counts vectors with exactly ``j`` positive coordinates.
    """
    m, rp, rm = spec.m, spec.r_plus, spec.r_minus
    return sum(
        comb(m, j) * comb(rp, j) * comb(rm + m - j, m - j)
        for j in range(min(m, rp) + 1)
    )
