"""B_h (Sidon) sets in finite Abelian groups.

A set ``B = {0, b_1, ..., b_m}`` is a B_h set when all sums
``b_{i_1} + ... + b_{i_u}`` with ``u <= h`` and ``1 <= i_1 <= ... <= i_u <= m``
are distinct (the empty sum is 0).  Any set can be brought to this form by
translating its first element to 0, and translation preserves the property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .core import AnticodeSpec, anticode_size
from .errors import Budget, BudgetExhausted, as_budget
from .groups import (
    FIELD_BUDGET,
    AbelianGroup,
    GroupElement,
    abelian_groups,
    get_field,
    next_prime_power,
    prime_power,
)

_ADD_TABLE_LIMIT = 1024


def _normalize(group: AbelianGroup, elements: Sequence[Sequence[int]]) -> list[GroupElement]:
    elems = [group.check(group.element(e) if isinstance(e, int) else e) for e in elements]
    if not elems:
        raise ValueError("a B_h set needs at least one element")
    shift = group.neg(elems[0])
    return [group.add(e, shift) for e in elems]


def bh_collision(
    group: AbelianGroup, elements: Sequence[Sequence[int]], h: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two distinct index multisets with equal sums, or None for a B_h set.

    Indices refer to positions in ``elements`` after translating
    ``elements[0]`` to 0; index 0 itself never appears (it adds nothing).
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    elems = _normalize(group, elements)
    nonzero = list(range(1, len(elems)))
    seen: dict[GroupElement, tuple[int, ...]] = {group.zero: ()}
    for u in range(1, h + 1):
        for idx in combinations_with_replacement(nonzero, u):
            s = group.weighted_sum([1] * u, [elems[i] for i in idx])
            other = seen.get(s)
            if other is not None:
                return other, idx
            seen[s] = idx
    return None


def verify_bh(group: AbelianGroup, elements: Sequence[Sequence[int]], h: int) -> bool:
    return bh_collision(group, elements, h) is None


@dataclass(frozen=True)
class SidonSet:
    """A B_h set with ``elements[0]`` the group identity."""

    group: AbelianGroup
    elements: tuple[GroupElement, ...]
    h: int

    def __post_init__(self):
        elems = tuple(self.group.check(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems or elems[0] != self.group.zero:
            raise ValueError("the first element of a normalised B_h set must be 0")
        if len(set(elems)) != len(elems):
            raise ValueError("B_h set elements must be distinct")
        if not verify_bh(self.group, elems, self.h):
            raise ValueError(f"{elems} is not a B_{self.h} set in {self.group}")

    @classmethod
    def normalized(cls, group: AbelianGroup, elements, h: int) -> "SidonSet":
        """Translate so the smallest element (mixed-radix order) becomes 0."""
        elems = [group.element(e) for e in elements]
        base = min(elems, key=group.index)
        shifted = sorted((group.sub(e, base) for e in elems), key=group.index)
        return cls(group, tuple(shifted), h)

    @property
    def size(self) -> int:
        return len(self.elements)

    def subset(self, size: int) -> "SidonSet":
        """The first ``size`` elements; any subset of a B_h set is one too."""
        if not 1 <= size <= self.size:
            raise ValueError(f"cannot take {size} of {self.size} elements")
        return SidonSet(self.group, self.elements[:size], self.h)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "h": self.h,
            "elements": [list(e) for e in self.elements],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SidonSet":
        group = AbelianGroup.from_json(obj["group"])
        elems = [group.element(e) for e in obj["elements"]]
        return cls(group, tuple(elems), int(obj["h"]))


# --------------------------------------------------------------------------
# algebraic constructions


def _line_logs(m: int, h: int) -> tuple[int, list[int]]:
    """Logs, mod ``v = (m^{h+1}-1)/(m-1)``, of the projective points on the
    GF(m)-line through 1 and a primitive element of ``GF(m^{h+1})``."""
    pk = prime_power(m)
    if pk is None:
        raise ValueError(f"{m} is not a prime power")
    p, k = pk
    if m ** (h + 1) > FIELD_BUDGET:
        raise BudgetExhausted(f"GF({m}^{h + 1}) exceeds the field budget")
    F = get_field(p, k * (h + 1))
    theta = F.primitive
    small = F.subfield(k)
    line = {F.add(c, F.mul(d, theta)) for c in small for d in small}
    v = (m ** (h + 1) - 1) // (m - 1)
    logs = set()
    x = 1
    for a in range(F.order - 1):
        if x in line:
            logs.add(a % v)
        x = F.mul(x, theta)
    return v, sorted(logs)


def singer(m: int) -> SidonSet:
    """Singer difference set: a B_2 set of size m+1 in ``Z_{m^2+m+1}``."""
    v, logs = _line_logs(m, 2)
    return SidonSet.normalized(AbelianGroup.cyclic(v), logs, 2)


def bose_chowla_projective(m: int, h: int) -> SidonSet:
    """B_h set of size m+1 in ``Z_v``, ``v = m^h + ... + m + 1`` (m a prime power).

    Same line-in-projective-space construction as Singer's, one dimension up
    per extra summand; ``h = 2`` recovers :func:`singer`.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    v, logs = _line_logs(m, h)
    return SidonSet.normalized(AbelianGroup.cyclic(v), logs, h)


def bose_chowla(q_sym: int, h: int) -> SidonSet:
    """B_h set ``{log(theta + a) : a in GF(q)}`` of size q in ``Z_{q^h - 1}``."""
    pk = prime_power(q_sym)
    if pk is None:
        raise ValueError(f"{q_sym} is not a prime power")
    if h < 2:
        # theta + a would hit 0 and the group Z_{q-1} is smaller than the set
        raise ValueError("the affine Bose-Chowla construction needs h >= 2")
    p, k = pk
    if q_sym**h > FIELD_BUDGET:
        raise BudgetExhausted(f"GF({q_sym}^{h}) exceeds the field budget")
    F = get_field(p, k * h)
    theta = F.primitive
    log = F.log_table
    logs = [log[F.add(theta, a)] for a in F.subfield(k)]
    return SidonSet.normalized(AbelianGroup.cyclic(F.order - 1), logs, h)


def radix_set(q: int, h: int) -> SidonSet:
    """``{0, 1, h+1, ..., (h+1)^{q-2}}`` in ``Z_{(h+1)^{q-1}}``: digits never carry."""
    v = (h + 1) ** (q - 1)
    elems = [0] + [(h + 1) ** i for i in range(q - 1)]
    return SidonSet(AbelianGroup.cyclic(v), tuple((e,) for e in elems), h)


# --------------------------------------------------------------------------
# exhaustive search


class _Arith:
    """Integer-indexed group arithmetic for the search inner loop."""

    def __init__(self, group: AbelianGroup):
        self.group = group
        self.order = group.order
        self._table = None
        if group.rank > 1 and self.order <= _ADD_TABLE_LIMIT:
            elems = list(group.elements())
            self._table = [[group.index(group.add(a, b)) for b in elems] for a in elems]

    def add(self, a: int, b: int) -> int:
        if self.group.rank == 1:
            return (a + b) % self.order
        if self._table is not None:
            return self._table[a][b]
        g = self.group
        return g.index(g.add(g.from_index(a), g.from_index(b)))


def search_bh(group: AbelianGroup, size: int, h: int, budget: Budget | int | None = None) -> SidonSet | None:
    """Depth-first search for a B_h set of the given size containing 0.

    Candidates are taken in increasing mixed-radix rank, so the witness is
    the lexicographically first one.  Returns None only after the whole
    space was exhausted; raises :class:`BudgetExhausted` otherwise.
    """
    budget = as_budget(budget)
    if size < 1 or h < 1:
        raise ValueError("size and h must be positive")
    # the C(size-1+h, h) sums must all be different group elements
    if comb(size - 1 + h, h) > group.order:
        return None
    if size == 1:
        return SidonSet(group, (group.zero,), h)
    ar = _Arith(group)
    order = group.order
    need = size - 1

    # levels[u] holds the sums of the u-element sub-multisets chosen so far
    def extend(chosen, levels, allsums, start):
        if len(chosen) == need:
            return chosen
        remaining = need - len(chosen)
        for c in range(start, order - remaining + 1):
            budget.tick()
            multiples = [0]
            for _ in range(h):
                multiples.append(ar.add(multiples[-1], c))
            fresh: list[list[int]] = [[] for _ in range(h + 1)]
            fresh_set = set()
            ok = True
            for u in range(h, 0, -1):
                for j in range(1, u + 1):
                    mj = multiples[j]
                    for s in levels[u - j]:
                        t = ar.add(s, mj)
                        if t in allsums or t in fresh_set:
                            ok = False
                            break
                        fresh_set.add(t)
                        fresh[u].append(t)
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                continue
            new_levels = [levels[u] + fresh[u] for u in range(h + 1)]
            found = extend(chosen + [c], new_levels, allsums | fresh_set, c + 1)
            if found is not None:
                return found
        return None

    zero = 0
    levels0 = [[zero]] + [[] for _ in range(h)]
    found = extend([], levels0, {zero}, 1)
    if found is None:
        return None
    elems = (group.zero,) + tuple(group.from_index(i) for i in found)
    return SidonSet(group, elems, h)


# --------------------------------------------------------------------------
# phi(h, q)


def beta(h: int, q: int) -> int:
    """Size of the diameter-h anticode ``S_{q-1}(ceil(h/2), floor(h/2))``."""
    if h < 1 or q < 2:
        raise ValueError("need h >= 1 and q >= 2")
    return anticode_size(AnticodeSpec(q - 1, (h + 1) // 2, h // 2))


@dataclass(frozen=True)
class PhiBounds:
    """Bounds on the order of the smallest Abelian group holding a B_h set of size q.

    ``lower`` starts at the anticode bound ``beta`` and is raised past every
    order the exhaustive sweep has ruled out.  ``upper`` is the order of the
    best explicit construction.
    """

    h: int
    q: int
    lower: int
    upper: int
    exact: int | None = None
    beta: int = 0
    upper_method: str = ""
    witness: SidonSet | None = field(default=None, compare=False)
    budget_exhausted: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("phi lower bound exceeds upper bound")
        if self.exact is not None and not self.lower == self.exact == self.upper:
            raise ValueError("an exact phi must equal both bounds")

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "q": self.q,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "beta": self.beta,
            "upper_method": self.upper_method,
            "budget_exhausted": self.budget_exhausted,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def phi_constructions(h: int, q: int) -> list[tuple[int, str, SidonSet]]:
    """Every explicit construction of a size-q B_h set we know how to build.

    Larger sets are cut down to q elements.  Sorted by group order.
    """
    out = []
    if h == 1:
        full = SidonSet(AbelianGroup.cyclic(q), tuple((i,) for i in range(q)), 1) if q >= 2 else None
        out.append((q, "full-group", full))
    out.append(((h + 1) ** (q - 1), "radix", radix_set(q, h)))
    m = next_prime_power(max(q - 1, 2))
    try:
        s = bose_chowla_projective(m, h)
        out.append((s.group.order, f"projective-line(m={m})", s.subset(q)))
    except BudgetExhausted:
        pass
    if h >= 2:
        Q = next_prime_power(q)
        try:
            s = bose_chowla(Q, h)
            out.append((s.group.order, f"bose-chowla(q={Q})", s.subset(q)))
        except BudgetExhausted:
            pass
    out.sort(key=lambda t: t[0])
    return out


def phi_bounds(h: int, q: int, budget: Budget | int | None = None) -> PhiBounds:
    """Certified bounds on phi(h, q), exact when the group sweep finishes.

    Every Abelian group (one per isomorphism class) whose order lies between
    the anticode bound and the best construction is searched in increasing
    order; the first success fixes phi.
    """
    budget = as_budget(budget)
    b = beta(h, q)
    upper, method, witness = phi_constructions(h, q)[0]
    lower = b
    exhausted = False
    exact = None
    if lower == upper:
        exact = upper
    else:
        try:
            for order in range(lower, upper):
                hit = None
                for G in abelian_groups(order):
                    hit = search_bh(G, q, h, budget)
                    if hit is not None:
                        break
                if hit is not None:
                    upper, method, witness = order, f"search({hit.group})", hit
                    exact = order
                    break
                lower = order + 1
            else:
                exact = upper
        except BudgetExhausted:
            exhausted = True
    if exact is not None:
        lower = upper = exact
    return PhiBounds(h, q, lower, upper, exact, b, method, witness, exhausted)
