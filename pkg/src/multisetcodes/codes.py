"""Multiset codes: the B_h coset construction, distances, decoders and
exact optimal code sizes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import ceil
from typing import Iterable, Sequence

from .core import MultiplicityVector, colex_key, d1, enumerate_simplex, multiplicity_vector, simplex_size
from .errors import Budget, BudgetExhausted, DecodingError, DegenerateCodeError, as_budget
from .groups import AbelianGroup, GroupElement
from .sidon import SidonSet


@dataclass(frozen=True)
class SidonCodeParams:
    """All length-n multisets whose symbol-weighted sum equals ``target``."""

    sidon_set: SidonSet
    target: GroupElement
    n: int

    def __post_init__(self):
        object.__setattr__(self, "target", self.group.check(self.group.element(self.target)))
        if self.n < 1:
            raise ValueError("code length must be positive")

    @property
    def group(self) -> AbelianGroup:
        return self.sidon_set.group

    @property
    def q(self) -> int:
        return self.sidon_set.size

    @property
    def h(self) -> int:
        return self.sidon_set.h

    def syndrome(self, x: Sequence[int]) -> GroupElement:
        """``target - sum_i x_i b_i``; zero exactly on codewords."""
        G = self.group
        return G.sub(self.target, G.weighted_sum(x, self.sidon_set.elements))

    def to_json(self) -> dict:
        return {"sidon_set": self.sidon_set.to_json(), "target": list(self.target), "n": self.n}

    @classmethod
    def from_json(cls, obj: dict) -> "SidonCodeParams":
        B = SidonSet.from_json(obj["sidon_set"])
        return cls(B, B.group.element(obj["target"]), int(obj["n"]))


@dataclass(frozen=True)
class ExplicitCode:
    """A set of at least two equal-length multisets, kept in colex order."""

    q: int
    n: int
    codewords: tuple[MultiplicityVector, ...]

    def __post_init__(self):
        words = {multiplicity_vector(c, self.n) for c in self.codewords}
        if any(len(w) != self.q for w in words):
            raise ValueError(f"codewords must have {self.q} coordinates")
        if len(words) < 2:
            raise DegenerateCodeError(f"a code needs two codewords, got {len(words)}")
        object.__setattr__(self, "codewords", tuple(sorted(words, key=colex_key)))

    def __len__(self) -> int:
        return len(self.codewords)

    def __contains__(self, x) -> bool:
        return tuple(x) in self._index

    @cached_property
    def _index(self) -> dict[MultiplicityVector, int]:
        return {c: i for i, c in enumerate(self.codewords)}

    @cached_property
    def min_distance(self) -> int:
        words = self.codewords
        best = None
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                d = d1(words[i], words[j])
                if best is None or d < best:
                    best = d
                    if best == 1:
                        return 1
        return best

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "codewords": [list(c) for c in self.codewords]}

    @classmethod
    def from_json(cls, obj: dict) -> "ExplicitCode":
        if "sidon_params" in obj:
            return build_sidon_code(SidonCodeParams.from_json(obj["sidon_params"]))
        return cls(int(obj["q"]), int(obj["n"]), tuple(tuple(c) for c in obj["codewords"]))


@dataclass(frozen=True)
class DecodeResult:
    codeword: MultiplicityVector
    cost: int
    unique: bool

    def to_json(self) -> dict:
        return {"codeword": list(self.codeword), "cost": self.cost, "unique": self.unique}


def build_sidon_code(params: SidonCodeParams) -> ExplicitCode:
    words = [x for x in enumerate_simplex(params.q, params.n) if not any(params.syndrome(x))]
    if len(words) < 2:
        raise DegenerateCodeError(
            f"coset {params.target} of length {params.n} has {len(words)} codeword(s)"
        )
    return ExplicitCode(params.q, params.n, tuple(words))


def min_distance(code: ExplicitCode) -> int:
    return code.min_distance


def can_correct_deletions(code: ExplicitCode, h: int) -> bool:
    """Any h deletions can be undone iff the minimum distance exceeds h."""
    return code.min_distance > h


def can_detect_substitutions(code: ExplicitCode, h: int) -> bool:
    """No h or fewer substitutions turn one codeword into another."""
    return code.min_distance > h


def _counts(received) -> MultiplicityVector:
    # a channel output's erased symbols carry no information; drop them
    counts = getattr(received, "counts", received)
    return multiplicity_vector(counts)


@lru_cache(maxsize=64)
def _syndrome_table(B: SidonSet) -> dict[tuple[int, GroupElement], MultiplicityVector]:
    G = B.group
    q = B.size
    table = {}
    for t in range(B.h + 1):
        for combo in combinations_with_replacement(range(q), t):
            x = [0] * q
            for i in combo:
                x[i] += 1
            s = G.weighted_sum(x, B.elements)
            table[(t, s)] = tuple(x)
    return table


def syndrome_decode(params: SidonCodeParams, received) -> DecodeResult:
    """Undo up to h deletions (erasures count as deletions) by table lookup."""
    r = _counts(received)
    if len(r) != params.q:
        raise ValueError(f"received vector has {len(r)} coordinates, expected {params.q}")
    t = params.n - sum(r)
    if not 0 <= t <= params.h:
        raise DecodingError(f"{t} symbols missing; only 0..{params.h} deletions are correctable")
    missing = _syndrome_table(params.sidon_set).get((t, params.syndrome(r)))
    if missing is None:
        raise DecodingError("syndrome matches no deletion pattern; too many errors")
    return DecodeResult(tuple(a + b for a, b in zip(r, missing)), t, True)


def edit_cost(x: Sequence[int], received: Sequence[int]) -> int:
    """Insertions plus deletions needed to turn ``x`` into ``received``."""
    return sum(abs(a - b) for a, b in zip(x, received))


def nearest_decode(code: ExplicitCode, received) -> DecodeResult:
    """Codeword of minimum insertion+deletion cost; ``unique`` flags ties."""
    r = _counts(received)
    if len(r) != code.q:
        raise ValueError(f"received vector has {len(r)} coordinates, expected {code.q}")
    best_cost = None
    best = None
    ties = 0
    for c in code.codewords:
        cost = edit_cost(c, r)
        if best_cost is None or cost < best_cost:
            best_cost, best, ties = cost, c, 1
        elif cost == best_cost:
            ties += 1
    return DecodeResult(best, best_cost, ties == 1)


# --------------------------------------------------------------------------
# optimal codes


@dataclass(frozen=True)
class OptimalCodeResult:
    size: int
    witness: tuple[MultiplicityVector, ...]
    exact: bool

    def to_json(self) -> dict:
        return {"M": self.size, "exact": self.exact, "witness": [list(w) for w in self.witness]}


def _max_clique(adj: list[int], budget: Budget) -> tuple[list[int], bool]:
    """Maximum clique over bitset adjacency; vertex i is bit i.

    Greedy colouring bounds each branch.  Returns (clique, finished).
    """
    nv = len(adj)
    best: list[int] = []
    # greedy seed
    cand = (1 << nv) - 1
    while cand:
        v = (cand & -cand).bit_length() - 1
        best.append(v)
        cand &= adj[v]

    def colour(P: int) -> list[tuple[int, int]]:
        out = []
        k = 0
        uncoloured = P
        while uncoloured:
            k += 1
            Q = uncoloured
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~(1 << v) & ~adj[v]
                uncoloured &= ~(1 << v)
                out.append((v, k))
        return out

    def expand(R: list[int], P: int):
        nonlocal best
        budget.tick()
        for v, k in reversed(colour(P)):
            if len(R) + k <= len(best):
                return
            newP = P & adj[v]
            R.append(v)
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    try:
        expand([], (1 << nv) - 1)
    except BudgetExhausted:
        return best, False
    return best, True


def exact_optimal_size(q: int, n: int, h: int, budget: Budget | int | None = None) -> OptimalCodeResult:
    """Largest code in the length-n simplex with minimum distance above h."""
    budget = as_budget(budget)
    points = list(enumerate_simplex(q, n))
    if h <= 0:
        return OptimalCodeResult(len(points), tuple(points), True)
    if len(points) > 20000:
        raise BudgetExhausted(f"{len(points)} simplex points exceed the search size limit")
    nv = len(points)
    compat = [0] * nv
    for i in range(nv):
        for j in range(i + 1, nv):
            if d1(points[i], points[j]) > h:
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    # high-degree vertices in the conflict graph go first
    order = sorted(range(nv), key=lambda v: (-(nv - 1 - bin(compat[v]).count("1")), v))
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * nv
    for v in range(nv):
        bits = 0
        row = compat[v]
        while row:
            u = (row & -row).bit_length() - 1
            bits |= 1 << pos[u]
            row &= row - 1
        adj[pos[v]] = bits
    clique, finished = _max_clique(adj, budget)
    witness = tuple(sorted((points[order[i]] for i in clique), key=colex_key))
    return OptimalCodeResult(len(witness), witness, finished)


def coset_sizes(B: SidonSet, n: int) -> dict[GroupElement, int]:
    """Number of length-n multisets in every coset, by dynamic programming."""
    G = B.group
    order = G.order
    els = [G.from_index(i) for i in range(order)]
    shift = [[G.index(G.add(e, b)) for e in els] for b in B.elements]
    # f[s] = multisets of the current length over the symbols seen so far
    # with weighted sum s; unbounded-knapsack recurrence per symbol
    rows = [[0] * order for _ in range(n + 1)]
    rows[0][G.index(G.zero)] = 1
    for sh in shift:
        for length in range(1, n + 1):
            prev = rows[length - 1]
            cur = rows[length]
            for s in range(order):
                if prev[s]:
                    cur[sh[s]] += prev[s]
    return {els[i]: rows[n][i] for i in range(order)}


def best_coset(B: SidonSet, n: int) -> tuple[GroupElement, int]:
    """The coset target with the most codewords (smallest index on ties)."""
    sizes = coset_sizes(B, n)
    G = B.group
    target = max(sizes, key=lambda g: (sizes[g], -G.index(g)))
    return target, sizes[target]


def pigeonhole_size(q: int, n: int, group_order: int) -> int:
    return ceil(simplex_size(q, n) / group_order)


def rank_encode(code: ExplicitCode, index: int) -> MultiplicityVector:
    if not 0 <= index < len(code):
        raise IndexError(f"message index {index} out of range for {len(code)} codewords")
    return code.codewords[index]


def rank_decode(code: ExplicitCode, codeword: Iterable[int]) -> int:
    x = tuple(codeword)
    try:
        return code._index[x]
    except KeyError:
        raise ValueError(f"{x} is not a codeword") from None
