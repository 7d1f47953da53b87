"""Full-rank sublattices of Z^m, the B_h set / lattice correspondence and
packing checks against anticodes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial, prod
from typing import Iterator, Sequence

from .core import AnticodeSpec, SignedVector, anticode_members, anticode_size, da_norm
from .groups import AbelianGroup
from .intmat import diagonal, hermite_normal_form, left_kernel, smith_normal_form, vecmat
from .sidon import SidonSet


@dataclass(frozen=True)
class IntegerLattice:
    """Lattice spanned by the rows of a square non-singular integer matrix."""

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in row) for row in self.generators)
        object.__setattr__(self, "generators", gens)
        m = len(gens)
        if m == 0 or any(len(r) != m for r in gens):
            raise ValueError("generator matrix must be square and non-empty")
        if self.determinant == 0:
            raise ValueError("generators are not full rank")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerLattice":
        """Lattice spanned by any generating set of full rank (reduced to HNF)."""
        H = hermite_normal_form(rows)
        if not H or len(H) != len(H[0]):
            raise ValueError("rows do not span a full-rank lattice")
        return cls(tuple(map(tuple, H)))

    @property
    def m(self) -> int:
        return len(self.generators)

    @cached_property
    def _snf(self):
        return smith_normal_form([list(r) for r in self.generators])

    @cached_property
    def invariants(self) -> tuple[int, ...]:
        """Smith diagonal; ``Z^m / L`` is the product of these cyclic groups."""
        return tuple(diagonal(self._snf[1]))

    @property
    def determinant(self) -> int:
        return prod(self.invariants)

    @property
    def density(self) -> Fraction:
        return Fraction(1, self.determinant)

    @cached_property
    def quotient(self) -> AbelianGroup:
        moduli = tuple(d for d in self.invariants if d > 1)
        if not moduli:
            raise ValueError("the lattice is all of Z^m; its quotient is trivial")
        return AbelianGroup(moduli)

    def coset_reduce(self, point: Sequence[int]) -> tuple[int, ...]:
        """Canonical label of ``point + L``, an element of :attr:`quotient`."""
        if len(point) != self.m:
            raise ValueError(f"point has dimension {len(point)}, lattice {self.m}")
        y = vecmat(point, self._snf[2])
        return tuple(v % d for v, d in zip(y, self.invariants) if d > 1)

    def contains(self, point: Sequence[int]) -> bool:
        return not any(self.coset_reduce(point))

    def hnf(self) -> "IntegerLattice":
        return IntegerLattice.from_rows(self.generators)

    def to_json(self) -> dict:
        return {"m": self.m, "generators": [list(r) for r in self.generators]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntegerLattice":
        lat = cls(tuple(tuple(r) for r in obj["generators"]))
        if "m" in obj and int(obj["m"]) != lat.m:
            raise ValueError("lattice 'm' disagrees with the generator matrix")
        return lat


def lattice_from_sidon(B: SidonSet) -> IntegerLattice:
    """Kernel of ``x -> sum_i x_i b_i`` from ``Z^m`` onto the group (HNF basis)."""
    G = B.group
    m = B.size - 1
    if m < 1:
        raise ValueError("need at least two elements")
    # x M + y diag(moduli) = 0, then project onto x
    stacked = [list(b) for b in B.elements[1:]]
    k = G.rank
    stacked += [[G.moduli[j] if j == i else 0 for j in range(k)] for i in range(k)]
    kernel = left_kernel(stacked)
    return IntegerLattice.from_rows([row[:m] for row in kernel])


def generated_subgroup_order(B: SidonSet) -> int:
    return lattice_from_sidon(B).determinant


def _shell(m: int, r: int) -> Iterator[SignedVector]:
    """Integer vectors of da-norm exactly ``r``."""

    def rec(i, up, down):
        if i == m:
            if max(up, down) == r:
                yield ()
            return
        for v in range(-(r - down), r - up + 1):
            nu = up + v if v > 0 else up
            nd = down - v if v < 0 else down
            for tail in rec(i + 1, nu, nd):
                yield (v,) + tail

    yield from rec(0, 0, 0)


def shortest_vector_da(lattice: IntegerLattice, bound: int | None = None) -> SignedVector | None:
    """A shortest nonzero lattice vector under the da-norm, searching shells
    of increasing norm up to ``bound`` (default ``det + 1``; ``det * e_1``
    always lies in the lattice).  None when nothing is that short."""
    if bound is None:
        bound = lattice.determinant + 1
    for r in range(1, bound + 1):
        for v in _shell(lattice.m, r):
            if lattice.contains(v):
                return v
    return None


def min_distance_da(lattice: IntegerLattice, bound: int | None = None) -> int | None:
    """Minimum da-distance of the lattice, or None if it exceeds ``bound``."""
    v = shortest_vector_da(lattice, bound)
    return None if v is None else da_norm(v)


def sidon_from_lattice(lattice: IntegerLattice, h: int) -> SidonSet:
    """Images of ``0, e_1, ..., e_m`` in ``Z^m / L``; a B_h set when d_a(L) > h.

    The images always generate the quotient, since the unit vectors generate
    ``Z^m``.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    short = shortest_vector_da(lattice, h)
    if short is not None:
        raise ValueError(f"lattice vector {short} has da-norm <= {h}")
    G = lattice.quotient
    m = lattice.m
    elems = [G.zero] + [lattice.coset_reduce([int(i == j) for j in range(m)]) for i in range(m)]
    return SidonSet(G, tuple(elems), h)


@dataclass(frozen=True)
class TilingVerdict:
    is_packing: bool
    is_tiling: bool
    anticode_size: int
    determinant: int
    witness: tuple[SignedVector, SignedVector] | None = field(default=None)

    def __post_init__(self):
        if self.is_tiling and not self.is_packing:
            raise ValueError("a tiling is always a packing")

    def to_json(self) -> dict:
        return {
            "packing": self.is_packing,
            "tiling": self.is_tiling,
            "anticode_size": self.anticode_size,
            "determinant": self.determinant,
            "witness": None if self.witness is None else [list(w) for w in self.witness],
        }


def packing_check(spec: AnticodeSpec, lattice: IntegerLattice) -> TilingVerdict:
    """Do the lattice translates of the anticode stay pairwise disjoint?

    Equivalent to all anticode points landing in different cosets.
    """
    if spec.m != lattice.m:
        raise ValueError(f"anticode dimension {spec.m} != lattice dimension {lattice.m}")
    size = anticode_size(spec)
    det = lattice.determinant
    seen: dict[tuple[int, ...], SignedVector] = {}
    for x in sorted(anticode_members(spec)):
        label = lattice.coset_reduce(x)
        other = seen.get(label)
        if other is not None:
            return TilingVerdict(False, False, size, det, (other, x))
        seen[label] = x
    return TilingVerdict(True, False, size, det)


def tiling_check(spec: AnticodeSpec, lattice: IntegerLattice) -> TilingVerdict:
    v = packing_check(spec, lattice)
    if v.is_packing and v.anticode_size == v.determinant:
        return TilingVerdict(True, True, v.anticode_size, v.determinant)
    return v


def vol_cube(m: int, r: int) -> int:
    """Lattice-point count of the body where both one-sided sums are <= r."""
    return anticode_size(AnticodeSpec(m, r, r))


def vol_conv(m: int, r: int) -> Fraction:
    """Euclidean volume of the same body scaled by r: ``r^m / m! * C(2m, m)``."""
    if m < 1 or r < 0:
        raise ValueError("need m >= 1 and r >= 0")
    return Fraction(r**m, factorial(m)) * comb(2 * m, m)
