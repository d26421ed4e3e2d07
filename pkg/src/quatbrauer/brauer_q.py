"""Br(Q) as finitely supported local invariant vectors.

A class is a map from places of Q to exact fractions in [0, 1) summing to 0
mod 1, with the real invariant restricted to {0, 1/2}.  Quaternion algebras
over Q land here through their Hilbert symbols; the same-maximal-subfields
and same-subgroup predicates compare local invariant orders.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DomainError
from .exact_arith import factor_rational
from .local_symbols import REAL, PlaceQ, hilbert

QUATERNION_SEARCH_BUDGET = 10**5


@dataclass(frozen=True)
class QuaternionQ:
    """The quaternion algebra (a, b / Q)."""

    a: Fraction
    b: Fraction

    @staticmethod
    def make(a, b) -> "QuaternionQ":
        a, b = Fraction(a), Fraction(b)
        if a == 0 or b == 0:
            raise DomainError("quaternion entries must be nonzero")
        return QuaternionQ(a, b)

    def __str__(self) -> str:
        return f"({self.a}, {self.b} / Q)"


@dataclass(frozen=True)
class BrauerClassQ:
    """Local invariant vector; entries sorted, no zero invariants stored."""

    invariants: tuple[tuple[PlaceQ, Fraction], ...]

    @staticmethod
    def make(entries) -> "BrauerClassQ":
        inv: dict[PlaceQ, Fraction] = {}
        for place, val in dict(entries).items():
            v = Fraction(val) % 1
            if v:
                inv[place] = v
        real = inv.get(REAL, Fraction(0))
        if real not in (Fraction(0), Fraction(1, 2)):
            raise DomainError(f"real invariant must be 0 or 1/2, got {real}")
        if sum(inv.values(), Fraction(0)) % 1 != 0:
            raise DomainError("local invariants must sum to 0 mod 1")
        return BrauerClassQ(tuple(sorted(inv.items(), key=lambda kv: kv[0].sort_key())))

    @staticmethod
    def zero() -> "BrauerClassQ":
        return BrauerClassQ(())

    def inv_at(self, place: PlaceQ) -> Fraction:
        for q, v in self.invariants:
            if q == place:
                return v
        return Fraction(0)

    def support(self) -> tuple[PlaceQ, ...]:
        return tuple(p for p, _ in self.invariants)

    def is_zero(self) -> bool:
        return not self.invariants

    def __add__(self, other: "BrauerClassQ") -> "BrauerClassQ":
        acc = {p: v for p, v in self.invariants}
        for p, v in other.invariants:
            acc[p] = acc.get(p, Fraction(0)) + v
        return BrauerClassQ.make(acc)

    def neg(self) -> "BrauerClassQ":
        return BrauerClassQ.make({p: -v for p, v in self.invariants})

    def scale(self, m: int) -> "BrauerClassQ":
        return BrauerClassQ.make({p: m * v for p, v in self.invariants})

    def exponent(self) -> int:
        return lcm(*(v.denominator for _, v in self.invariants)) if self.invariants else 1

    def index(self) -> int:
        # index equals exponent over number fields (AHBN)
        return self.exponent()

    def local_orders(self) -> tuple[tuple[PlaceQ, int], ...]:
        return tuple((p, v.denominator) for p, v in self.invariants)

    def to_json(self) -> dict:
        return {"invariants": [{"place": str(p), "inv": str(v)}
                               for p, v in self.invariants]}

    @staticmethod
    def from_json(data: dict) -> "BrauerClassQ":
        entries = {}
        for item in data["invariants"]:
            place = PlaceQ.parse(str(item["place"]))
            entries[place] = Fraction(str(item["inv"]))
        return BrauerClassQ.make(entries)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return "{" + ", ".join(f"{p}: {v}" for p, v in self.invariants) + "}"


def class_of_quaternion(q: QuaternionQ) -> BrauerClassQ:
    """Invariant 1/2 exactly where the Hilbert symbol is -1.

    Only the real place and primes dividing 2 or one of the entries can
    carry a nontrivial symbol (unit criterion), so the scan is finite.
    """
    primes = {2}
    primes.update(factor_rational(q.a).primes())
    primes.update(factor_rational(q.b).primes())
    support = {}
    for place in [REAL] + [PlaceQ(p) for p in sorted(primes)]:
        if hilbert(q.a, q.b, place) == -1:
            support[place] = Fraction(1, 2)
    cls = BrauerClassQ.make(support)
    assert len(cls.invariants) % 2 == 0, "quaternion support must have even size"
    return cls


def same_maximal_subfields_q(c1: BrauerClassQ, c2: BrauerClassQ) -> bool:
    """Equal local index vectors; defined for classes of equal index only."""
    if c1.index() != c2.index():
        raise DomainError(
            f"classes have different degrees (index {c1.index()} vs {c2.index()})")
    places = set(c1.support()) | set(c2.support())
    return all(c1.inv_at(p).denominator == c2.inv_at(p).denominator for p in places)


def same_subgroup(c1: BrauerClassQ, c2: BrauerClassQ) -> bool:
    """Whether the two classes generate the same cyclic subgroup of Br(Q)."""
    def generates(a: BrauerClassQ, b: BrauerClassQ) -> bool:
        return any(a.scale(m) == b for m in range(a.exponent() + 1))
    return generates(c1, c2) and generates(c2, c1)


def example_6_5(n: int, places: tuple[PlaceQ, PlaceQ, PlaceQ, PlaceQ]
                ) -> tuple[BrauerClassQ, BrauerClassQ]:
    """The pair of degree-n classes supported on four finite places with
    invariant patterns (1, 1, -1, -1)/n and (1, -1, 1, -1)/n."""
    if n < 2:
        raise DomainError("need n >= 2")
    if len(places) != 4 or len(set(places)) != 4:
        raise DomainError("need four distinct places")
    if any(p.is_real for p in places):
        raise DomainError("need finite places")
    u = Fraction(1, n)
    c1 = BrauerClassQ.make(dict(zip(places, [u, u, -u, -u])))
    c2 = BrauerClassQ.make(dict(zip(places, [u, -u, u, -u])))
    return c1, c2


def scale_class(c: BrauerClassQ, m: int) -> BrauerClassQ:
    """m * c componentwise; preserves local orders when gcd(m, index) = 1."""
    return c.scale(m)


def quaternion_of_class(c: BrauerClassQ,
                        rng: random.Random | None = None,
                        budget: int = QUATERNION_SEARCH_BUDGET) -> QuaternionQ:
    """A quaternion presentation of an exponent <= 2 class, by randomized
    search over small squarefree entries built from the support primes.
    Every candidate is verified by recomputing its invariant vector."""
    if c.exponent() > 2:
        raise DomainError("class has exponent > 2, not quaternion")
    if len(c.invariants) % 2 != 0:
        raise DomainError("odd support size violates the parity invariant")
    if c.is_zero():
        return QuaternionQ.make(1, 1)
    rng = rng or random.Random(0xABD)
    base = [p.p for p in c.support() if not p.is_real]
    pool = sorted(set(base) | {2, 3, 5, 7})

    def candidate() -> Fraction:
        v = Fraction(rng.choice([1, -1]))
        for p in pool:
            if rng.random() < 0.5:
                v *= p
        return v

    for _ in range(budget):
        a, b = candidate(), candidate()
        q = QuaternionQ.make(a, b)
        if class_of_quaternion(q) == c:
            return q
    raise DomainError(
        f"no quaternion presentation found within {budget} candidates")
