"""Tests for integer/rational factoring and polynomial arithmetic."""

import random
from fractions import Fraction

import pytest

from quatbrauer.errors import DomainError
from quatbrauer.exact_arith import (
    FactoredRational,
    PolyFp,
    PolyQ,
    discriminant,
    factor_int,
    factor_poly_fp,
    factor_poly_q,
    factor_rational,
    is_irreducible_fp,
    is_irreducible_q,
    is_prime,
    poly_from_string,
    poly_gcd,
    poly_to_string,
    ratfunc_from_string,
    resultant,
    sqrt_fraction,
)


class TestPrimality:
    def test_small(self):
        primes = [n for n in range(60) if is_prime(n)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                          47, 53, 59]

    def test_mersenne(self):
        assert is_prime(2**31 - 1)
        assert not is_prime(2**32 - 1)

    def test_carmichael(self):
        assert not is_prime(561)
        assert not is_prime(41041)


class TestFactorInt:
    def test_twelve(self):
        fz = factor_int(12)
        assert fz.sign == 1
        assert fz.factors == ((2, 2), (3, 1))
        assert not fz.probable

    def test_negative(self):
        fz = factor_int(-45)
        assert fz.sign == -1 and fz.factors == ((3, 2), (5, 1))

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            factor_int(0)

    def test_rational_mixed_exponents(self):
        fz = factor_rational(Fraction(12, 35))
        assert fz.factors == ((2, 2), (3, 1), (5, -1), (7, -1))
        assert fz.value() == Fraction(12, 35)

    def test_roundtrip_random(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(2, 10**9) * rng.choice([1, -1])
            fz = factor_int(n)
            assert fz.value() == n
            assert all(is_prime(p) for p, _ in fz.factors)

    def test_product(self):
        a, b = factor_int(12), factor_rational(Fraction(5, 9))
        assert (a * b).value() == Fraction(12 * 5, 9)


class TestPolyQ:
    def test_trim_and_degree(self):
        assert PolyQ.make([1, 2, 0, 0]).degree == 1
        assert PolyQ.make([]).degree == -1
        assert PolyQ.make([0]).is_zero()

    def test_divmod_identity(self):
        rng = random.Random(3)
        for _ in range(40):
            f = PolyQ.make([Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                            for _ in range(rng.randint(0, 7))])
            g = PolyQ.make([rng.randint(-9, 9) for _ in range(rng.randint(1, 5))])
            if g.is_zero():
                continue
            q, r = f.divmod(g)
            assert q * g + r == f
            assert r.is_zero() or r.degree < g.degree

    def test_gcd(self):
        f = PolyQ.make([1, 1]) * PolyQ.make([2, 0, 1])
        g = PolyQ.make([1, 1]) * PolyQ.make([-3, 1])
        assert poly_gcd(f, g) == PolyQ.make([1, 1])

    def test_resultant_common_factor(self):
        f = PolyQ.make([1, 1]) * PolyQ.make([1, 0, 1])
        g = PolyQ.make([1, 1]) * PolyQ.make([5, 1])
        assert resultant(f, g) == 0
        assert resultant(PolyQ.make([1, 0, 1]), PolyQ.make([5, 1])) != 0

    def test_discriminant_quadratic(self):
        rng = random.Random(5)
        for _ in range(20):
            b, c = rng.randint(-9, 9), rng.randint(-9, 9)
            assert discriminant(PolyQ.make([c, b, 1])) == b * b - 4 * c

    def test_discriminant_depressed_cubic(self):
        for p, q in [(-1, 0), (2, 3), (0, 1), (-4, 1)]:
            assert discriminant(PolyQ.make([q, p, 0, 1])) == -4 * p**3 - 27 * q * q

    def test_evaluate(self):
        f = PolyQ.make([1, -2, 1])  # (x-1)^2
        assert f.evaluate(3) == 4
        assert f.evaluate(Fraction(1, 2)) == Fraction(1, 4)


class TestParsing:
    def test_poly_from_string(self):
        assert poly_from_string("x^4 + 1") == PolyQ.make([1, 0, 0, 0, 1])
        assert poly_from_string("2*x^2 + 2*x") == PolyQ.make([0, 2, 2])
        assert poly_from_string("x**2 - 1/2") == PolyQ.make([Fraction(-1, 2), 0, 1])

    def test_string_roundtrip(self):
        rng = random.Random(9)
        for _ in range(25):
            f = PolyQ.make([Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                            for _ in range(rng.randint(1, 6))])
            assert poly_from_string(poly_to_string(f)) == f

    def test_ratfunc(self):
        num, den = ratfunc_from_string("(x^2 - 1)/(x + 2)")
        assert num == PolyQ.make([-1, 0, 1])
        assert den == PolyQ.make([2, 1])

    def test_ratfunc_constant(self):
        num, den = ratfunc_from_string("3/5")
        assert num.degree == 0 and den.degree == 0
        assert num.coeffs[0] / den.coeffs[0] == Fraction(3, 5)


class TestFactorPolyQ:
    def test_unit_and_factors(self):
        fz = factor_poly_q(poly_from_string("2*x^2 + 2*x"))
        assert fz.unit == 2
        assert fz.factors == ((PolyQ.x(), 1), (PolyQ.make([1, 1]), 1))

    def test_x4_plus_1_irreducible(self):
        assert is_irreducible_q(poly_from_string("x^4 + 1"))

    def test_multiplicities(self):
        f = PolyQ.make([1, 1]) ** 3 * PolyQ.make([2, 0, 1])
        fz = factor_poly_q(f)
        assert dict((str(g), m) for g, m in fz.factors) == {"x + 1": 3,
                                                            "x^2 + 2": 1}

    def test_roundtrip_random(self):
        rng = random.Random(17)
        for _ in range(40):
            f = PolyQ.const(Fraction(rng.randint(1, 5), rng.randint(1, 3))
                            * rng.choice([1, -1]))
            for _ in range(rng.randint(1, 4)):
                f = f * PolyQ.make([rng.randint(-4, 4)
                                    for _ in range(rng.randint(1, 3))] + [1])
            assert factor_poly_q(f).value() == f


class TestPolyFp:
    def test_reduction(self):
        assert PolyFp.make(5, [7, -1]).coeffs == (2, 4)

    def test_char_two_rejected(self):
        with pytest.raises(DomainError):
            PolyFp.make(2, [1, 1])

    def test_factor_x2_plus_1_mod5(self):
        unit, facs = factor_poly_fp(PolyFp.make(5, [1, 0, 1]))
        assert unit == 1
        assert facs == ((PolyFp.make(5, [2, 1]), 1), (PolyFp.make(5, [3, 1]), 1))

    def test_x2_plus_1_mod3_irreducible(self):
        assert is_irreducible_fp(PolyFp.make(3, [1, 0, 1]))
        assert not is_irreducible_fp(PolyFp.make(5, [1, 0, 1]))

    def test_x_cubed(self):
        unit, facs = factor_poly_fp(PolyFp.make(7, [0, 0, 0, 1]))
        assert unit == 1 and facs == ((PolyFp.x(7), 3),)

    def test_char_p_multiplicity(self):
        g = PolyFp.make(3, [1, 1])
        f = g * g * g
        unit, facs = factor_poly_fp(f)
        assert facs == ((PolyFp.make(3, [1, 1]), 3),)

    def test_roundtrip_random(self):
        rng = random.Random(23)
        for _ in range(100):
            p = rng.choice([3, 5, 7, 13])
            f = PolyFp.make(p, [rng.randrange(p)
                                for _ in range(rng.randint(1, 9))] + [1])
            unit, facs = factor_poly_fp(f, rng)
            prod = PolyFp.const(p, unit)
            for h, m in facs:
                assert is_irreducible_fp(h) and h.is_monic()
                for _ in range(m):
                    prod = prod * h
            assert prod == f


def test_sqrt_fraction():
    assert sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_fraction(Fraction(0)) == 0
    assert sqrt_fraction(Fraction(2)) is None
    assert sqrt_fraction(Fraction(-1)) is None
