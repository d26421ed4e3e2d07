"""Seeded property suites behind the `selftest` CLI command.

Each suite draws its own cases from a single seed so a run is reproducible
bit for bit; the CLI exits 0 iff every suite passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .brauer_q import QuaternionQ, class_of_quaternion
from .exact_arith import PolyFp, PolyQ, factor_poly_fp, factor_poly_q, factor_rational
from .funcfield_fp import FactoredFuncFp, class_fp
from .local_symbols import REAL, NumberFieldElem, PlaceQ, hilbert, is_square_in_number_field


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_rational(rng: random.Random, bound: int = 10**4) -> Fraction:
    n = rng.randint(1, bound) * rng.choice([1, -1])
    d = rng.randint(1, bound)
    return Fraction(n, d)


def _support_places(a: Fraction, b: Fraction) -> list[PlaceQ]:
    primes = {2}
    primes.update(factor_rational(a).primes())
    primes.update(factor_rational(b).primes())
    return [REAL] + [PlaceQ(p) for p in sorted(primes)]


def suite_product_formula(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        a, b = _random_rational(rng), _random_rational(rng)
        prod = 1
        for v in _support_places(a, b):
            prod *= hilbert(a, b, v)
        if prod != 1:
            failures.append(f"product formula fails for ({a}, {b})")
    return SuiteResult("hilbert product formula", cases, failures)


def suite_steinberg(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        a = _random_rational(rng, 100)
        if a in (0, 1):
            continue
        for v in _support_places(a, a * (1 - a) if a != 1 else a):
            if hilbert(a, -a, v) != 1:
                failures.append(f"(a, -a) != 1 at {v} for a = {a}")
            if a != 1 and hilbert(a, 1 - a, v) != 1:
                failures.append(f"(a, 1-a) != 1 at {v} for a = {a}")
    return SuiteResult("steinberg relations", cases, failures)


def suite_fp_reciprocity(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        p = rng.choice([3, 5, 7, 11])
        f = PolyFp.make(p, [rng.randrange(p) for _ in range(rng.randint(1, 6))] + [1])
        g = PolyFp.make(p, [rng.randrange(p) for _ in range(rng.randint(1, 6))] + [1])
        try:
            cls = class_fp(FactoredFuncFp.from_poly(f, rng),
                           FactoredFuncFp.from_poly(g, rng))
        except AssertionError:
            failures.append(f"reciprocity violated for ({f}, {g}) over F_{p}")
            continue
        del cls
    return SuiteResult("F_p(x) reciprocity", cases, failures)


def suite_factor_roundtrip(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        nfac = rng.randint(2, 4)
        prod = PolyQ.const(rng.choice([1, 2, -3, Fraction(1, 2)]))
        for _ in range(nfac):
            d = rng.randint(1, 3)
            prod = prod * PolyQ.make([rng.randint(-4, 4) for _ in range(d)] + [1])
        fz = factor_poly_q(prod)
        if fz.value() != prod:
            failures.append(f"round-trip failed for {prod}")
    return SuiteResult("Q[x] factorization round-trip", cases, failures)


def suite_fp_factor_roundtrip(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        p = rng.choice([3, 5, 7, 13])
        f = PolyFp.make(p, [rng.randrange(p) for _ in range(rng.randint(2, 8))] + [1])
        unit, facs = factor_poly_fp(f, rng)
        prod = PolyFp.const(p, unit)
        for h, m in facs:
            for _ in range(m):
                prod = prod * h
        if prod != f:
            failures.append(f"CZ round-trip failed for {f} over F_{p}")
    return SuiteResult("F_p[x] factorization round-trip", cases, failures)


def suite_square_tester(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    pi = PolyQ.make([1, 0, 1])  # x^2 + 1
    for _ in range(cases):
        r = PolyQ.make([rng.randint(-9, 9), rng.randint(-9, 9)])
        if r.is_zero():
            continue
        c = NumberFieldElem.make(pi, (r * r) % pi)
        verdict = is_square_in_number_field(c, rng=rng)
        if not verdict.is_square:
            failures.append(f"square {r}^2 mod {pi} not recognized")
    return SuiteResult("number-field square recognition", cases, failures)


def suite_quaternion_parity(rng: random.Random, cases: int) -> SuiteResult:
    failures = []
    for _ in range(cases):
        a, b = _random_rational(rng, 100), _random_rational(rng, 100)
        cls = class_of_quaternion(QuaternionQ.make(a, b))
        if len(cls.invariants) % 2:
            failures.append(f"odd ramification support for ({a}, {b})")
    return SuiteResult("quaternion support parity", cases, failures)


def run_selftest(seed: int = 0, cases: int = 50) -> list[SuiteResult]:
    rng = random.Random(seed)
    return [
        suite_product_formula(random.Random(rng.random()), cases),
        suite_steinberg(random.Random(rng.random()), max(10, cases // 5)),
        suite_fp_reciprocity(random.Random(rng.random()), cases),
        suite_factor_roundtrip(random.Random(rng.random()), max(10, cases // 2)),
        suite_fp_factor_roundtrip(random.Random(rng.random()), cases),
        suite_square_tester(random.Random(rng.random()), max(5, cases // 10)),
        suite_quaternion_parity(random.Random(rng.random()), cases),
    ]
