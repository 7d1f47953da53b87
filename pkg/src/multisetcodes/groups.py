"""Finite Abelian groups as products of cyclic groups, and small finite fields.

Group elements are tuples of residues, one per cyclic factor.  Field elements
are plain integers: the polynomial ``c_0 + c_1 t + ... + c_{k-1} t^{k-1}``
over ``GF(p)`` is stored as ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  That
integer is also the canonical element order used when a "smallest" element
is requested.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from itertools import product
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExhausted

GroupElement = tuple[int, ...]

DEFAULT_GROUP_BUDGET = 1 << 20
FIELD_BUDGET = 1 << 20


# --------------------------------------------------------------------------
# integer helpers


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (desk-scale inputs)."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` or None if n is not a prime power."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


def next_prime_power(n: int) -> int:
    while prime_power(n) is None:
        n += 1
    return n


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


# --------------------------------------------------------------------------
# Abelian groups


_GROUP_RE = re.compile(r"^\s*Z(\d+)((?:\s*[x×*]\s*Z\d+)*)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z_{v1} x ... x Z_{vk}`` with every ``v_i >= 2``."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(v) for v in self.moduli))
        if not self.moduli:
            raise ValueError("a group needs at least one cyclic factor")
        if any(v < 2 for v in self.moduli):
            raise ValueError(f"cyclic factors must have order >= 2: {self.moduli}")

    @classmethod
    def cyclic(cls, v: int) -> "AbelianGroup":
        return cls((v,))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse ``Z13`` or ``Z2xZ6`` notation."""
        m = _GROUP_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse group {text!r}; expected e.g. Z13 or Z2xZ6")
        return cls(tuple(int(v) for v in re.findall(r"\d+", text)))

    def __str__(self) -> str:
        return "x".join(f"Z{v}" for v in self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def zero(self) -> GroupElement:
        return (0,) * len(self.moduli)

    def element(self, value: int | Sequence[int]) -> GroupElement:
        """Reduce an integer (cyclic groups only) or a residue vector."""
        if isinstance(value, int):
            if self.rank != 1:
                raise ValueError(f"integer element needs a cyclic group, not {self}")
            value = (value,)
        value = tuple(int(c) for c in value)
        if len(value) != self.rank:
            raise ValueError(f"element {value} does not match group {self}")
        return tuple(c % v for c, v in zip(value, self.moduli))

    def check(self, g: Sequence[int]) -> GroupElement:
        g = tuple(g)
        if len(g) != self.rank or any(not 0 <= c < v for c, v in zip(g, self.moduli)):
            raise ValueError(f"{g} is not a canonical element of {self}")
        return g

    def add(self, *elements: Sequence[int]) -> GroupElement:
        acc = [0] * self.rank
        for g in elements:
            g = self.check(g)
            for i, c in enumerate(g):
                acc[i] += c
        return tuple(c % v for c, v in zip(acc, self.moduli))

    def neg(self, g: Sequence[int]) -> GroupElement:
        g = self.check(g)
        return tuple(-c % v for c, v in zip(g, self.moduli))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> GroupElement:
        return self.add(a, self.neg(b))

    def scalar_mul(self, c: int, g: Sequence[int]) -> GroupElement:
        g = self.check(g)
        return tuple(c * e % v for e, v in zip(g, self.moduli))

    def weighted_sum(self, coeffs: Sequence[int], elements: Sequence[Sequence[int]]) -> GroupElement:
        """``sum_i coeffs[i] * elements[i]`` in the group."""
        if len(coeffs) != len(elements):
            raise ValueError("coefficient and element counts differ")
        acc = [0] * self.rank
        for c, g in zip(coeffs, elements):
            for i, e in enumerate(g):
                acc[i] += c * e
        return tuple(a % v for a, v in zip(acc, self.moduli))

    def elements(self, budget: int = DEFAULT_GROUP_BUDGET) -> Iterator[GroupElement]:
        """All elements in mixed-radix order (last factor varies fastest)."""
        if self.order > budget:
            raise BudgetExhausted(f"group of order {self.order} exceeds budget {budget}")
        return product(*(range(v) for v in self.moduli))

    def index(self, g: Sequence[int]) -> int:
        """Mixed-radix rank of an element, matching :meth:`elements`."""
        r = 0
        for c, v in zip(self.check(g), self.moduli):
            r = r * v + c
        return r

    def from_index(self, r: int) -> GroupElement:
        out = []
        for v in reversed(self.moduli):
            r, c = divmod(r, v)
            out.append(c)
        return tuple(reversed(out))

    def element_order(self, g: Sequence[int]) -> int:
        g = self.check(g)
        return lcm(*(v // gcd(c, v) for c, v in zip(g, self.moduli)))

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors ``d_1 | d_2 | ... | d_r`` (all > 1)."""
        # gather prime-power parts of every cyclic factor
        parts: dict[int, list[int]] = {}
        for v in self.moduli:
            for p, e in factorize(v).items():
                parts.setdefault(p, []).append(p**e)
        for p in parts:
            parts[p].sort(reverse=True)
        length = max(len(v) for v in parts.values())
        factors = []
        for i in range(length):
            factors.append(prod(ps[i] for ps in parts.values() if i < len(ps)))
        return tuple(reversed(factors))

    def is_isomorphic(self, other: "AbelianGroup") -> bool:
        return self.invariant_factors == other.invariant_factors

    def subgroup_order(self, generators: Iterable[Sequence[int]]) -> int:
        """Order of the subgroup generated by the given elements."""
        # closure by BFS over the Cayley graph; desk-scale groups only
        gens = [self.check(g) for g in generators]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.add(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return len(seen)

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(tuple(obj["moduli"]))


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_groups(order: int) -> list[AbelianGroup]:
    """Every Abelian group of the given order, once each up to isomorphism.

    Groups are produced in invariant-factor form from one integer partition
    per prime exponent.  Cyclic first, then increasingly split groups.
    """
    if order < 2:
        return []
    primes = sorted(factorize(order).items())
    groups = []
    for choice in product(*(list(_partitions(e)) for _, e in primes)):
        length = max(len(part) for part in choice)
        factors = []
        for i in range(length):
            factors.append(prod(p ** part[i] for (p, _), part in zip(primes, choice) if i < len(part)))
        groups.append(AbelianGroup(tuple(reversed(factors))))
    groups.sort(key=lambda g: (g.rank, g.moduli))
    return groups


# --------------------------------------------------------------------------
# finite fields


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zip_pad(a: Sequence[int], b: Sequence[int]):
    n = max(len(a), len(b))
    return ((a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def _mul_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _divmod_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    rem = list(a)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] * inv_lead % p
        quot[i - db] = c
        if c:
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
    return _trim(quot), _trim(rem[:db])


def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of coefficient lists (low degree first) over GF(p)."""
    return _divmod_mod_p(a, b, p)[1]


def _int_to_coeffs(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, c = divmod(a, p)
        out.append(c)
    return out


def _coeffs_to_int(coeffs: Sequence[int], p: int) -> int:
    r = 0
    for c in reversed(coeffs):
        r = r * p + c
    return r


def _monics(p: int, d: int) -> Iterator[list[int]]:
    """Monic degree-d polynomials over GF(p) in increasing integer encoding."""
    for low in range(p**d):
        yield _int_to_coeffs(low, p, d) + [1]


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg/2."""
    poly = list(poly)
    k = len(poly) - 1
    if k < 1 or poly[-1] % p == 0:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monics(p, d):
            if not _poly_mod_p(poly, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over GF(p) by integer encoding."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k == 1:
        return (0, 1)
    for cand in _monics(p, k):
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True, eq=False)
class FiniteField:
    """``GF(p^k) = GF(p)[t] / (modulus)`` with integer-encoded elements.

    Multiplication goes through exp/log tables built on first use; the table
    generator is the canonical primitive element.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be positive")
        if self.p**self.k > FIELD_BUDGET:
            raise BudgetExhausted(f"GF({self.p}^{self.k}) exceeds the field budget {FIELD_BUDGET}")
        if not self.modulus:
            object.__setattr__(self, "modulus", canonical_modulus(self.p, self.k))
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.k + 1 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not is_irreducible_mod_p(mod, self.p):
                raise ValueError(f"modulus {mod} is reducible over GF({self.p})")
            object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int) -> "FiniteField":
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        return get_field(*pk)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    @property
    def order(self) -> int:
        return self.p**self.k

    def elements(self) -> range:
        return range(self.order)

    def coeffs(self, a: int) -> list[int]:
        return _int_to_coeffs(a, self.p, self.k)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        c = list(int(x) % self.p for x in coeffs)
        if len(c) > self.k:
            c = _poly_mod_p(c, list(self.modulus), self.p)
        return _coeffs_to_int(c, self.p)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of {self}")
        return a

    # -- additive structure ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return _coeffs_to_int([(x + y) % self.p for x, y in zip(ca, cb)], self.p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _coeffs_to_int([-x % self.p for x in self.coeffs(a)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    # -- multiplicative structure ------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prodc = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prodc[i + j] = (prodc[i + j] + x * y) % self.p
        return _coeffs_to_int(_poly_mod_p(prodc, list(self.modulus), self.p), self.p)

    def _order_of_slow(self, a: int) -> int:
        n = self.order - 1
        order = n
        for prime in factorize(n):
            while order % prime == 0 and self._pow_slow(a, order // prime) == 1:
                order //= prime
        return order

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    @cached_property
    def primitive(self) -> int:
        """Smallest element (integer order) of multiplicative order ``p^k - 1``."""
        if self.order == 2:
            return 1
        for a in range(2, self.order):
            if self._order_of_slow(a) == self.order - 1:
                return a
        raise AssertionError("every finite field has a primitive element")

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        """exp table (doubled so log sums index directly) and log table."""
        g = self.primitive
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        return exp, log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def inv_euclid(self, a: int) -> int:
        """Inverse via the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        p = self.p
        r0, r1 = list(self.modulus), _trim(self.coeffs(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quot, rem = _divmod_mod_p(r0, r1, p)
            s_new = _trim([(x - y) % p for x, y in _zip_pad(s0, _mul_mod_p(quot, s1, p))])
            r0, r1, s0, s1 = r1, rem, s1, s_new
        c = pow(r1[0], p - 2, p)
        return self.from_coeffs([x * c % p for x in s1])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        exp, log = self._tables
        return exp[log[a] * e % (self.order - 1)]

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.order - 1
        order = n
        for prime in factorize(n):
            while order % prime == 0 and self.pow(a, order // prime) == 1:
                order //= prime
        return order

    def from_int(self, c: int) -> int:
        """Image of an integer under ``Z -> GF(p)``, inside this field."""
        return c % self.p

    @cached_property
    def log_table(self) -> dict[int, int]:
        return discrete_log_table(self, self.primitive)

    def subfield(self, d: int) -> list[int]:
        """Elements of the unique subfield of order ``p^d`` (d must divide k)."""
        if self.k % d:
            raise ValueError(f"GF({self.p}^{d}) is not a subfield of {self}")
        if d == self.k:
            return list(self.elements())
        step = (self.order - 1) // (self.p**d - 1)
        g = self.primitive
        return [0] + sorted(self.pow(g, i * step) for i in range(self.p**d - 1))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteField":
        return cls(int(obj["p"]), int(obj["k"]), tuple(obj.get("modulus", ())))


@lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> FiniteField:
    """Shared canonical instance of ``GF(p^k)`` (tables are built once)."""
    return FiniteField(p, k)


def primitive_element(F: FiniteField) -> int:
    return F.primitive


def discrete_log_table(F: FiniteField, theta: int) -> dict[int, int]:
    """Map every nonzero element ``theta^a`` to ``a`` in ``[0, p^k - 2]``."""
    if theta == 0 or F.multiplicative_order(theta) != F.order - 1:
        raise ValueError(f"{theta} is not primitive in {F}")
    table = {}
    x = 1
    for a in range(F.order - 1):
        table[x] = a
        x = F.mul(x, theta)
    return table
