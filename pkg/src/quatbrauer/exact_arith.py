"""Exact integer, rational and polynomial arithmetic with factorization.

Everything downstream (Hilbert symbols, tame residues, Brauer classes) works
with values produced here: reduced rationals, certified prime factorizations,
and monic irreducible polynomial factorizations over Q and over F_p.

Canonical forms are used throughout so that equality of values is structural
equality: rationals are reduced with positive denominator, polynomial
factorizations carry monic irreducible factors sorted by (degree, coeffs).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .errors import DomainError, ParseError

# Factorization over Q is rejected above this degree unless the caller
# raises the cap explicitly; recombination cost is unbounded in general.
DEFAULT_DEGREE_CAP = 24

_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ---------------------------------------------------------------------------
# primality and integer factorization
# ---------------------------------------------------------------------------

def is_prime(n: int, rounds: int = 64, rng: random.Random | None = None) -> bool:
    """Miller-Rabin.  Deterministic below 2**64, probabilistic above.

    Use `is_certified_prime` if the distinction matters.
    """
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x in (1, n - 1):
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < 2**64:
        return not any(witness(a) for a in _MR_BASES_64)
    rng = rng or random.Random(0xC0FFEE ^ n)
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(rounds))


def is_certified_prime(n: int) -> bool:
    """True iff `is_prime(n)` holds deterministically (n < 2**64)."""
    return n < 2**64 and is_prime(n)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_positive(n: int, rng: random.Random) -> dict[int, int]:
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    while d * d <= n and d < 10**6:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        g = _pollard_brent(m, rng)
        stack.extend((g, m // g))
    return factors


@dataclass(frozen=True)
class FactoredRational:
    """A nonzero rational in certified factored form: sign * prod p**e.

    `probable` lists primes too large for the deterministic Miller-Rabin
    certificate (only reachable with inputs beyond 2**64).
    """

    sign: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending
    probable: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        assert self.sign in (-1, 1)
        assert all(e != 0 for _, e in self.factors)

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        exps = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        facs = tuple(sorted((p, e) for p, e in exps.items() if e != 0))
        return FactoredRational(self.sign * other.sign, facs,
                                tuple(sorted(set(self.probable + other.probable))))

    def to_json(self) -> dict:
        out = {"sign": self.sign, "factors": [[p, e] for p, e in self.factors]}
        if self.probable:
            out["probable_primes"] = list(self.probable)
        return out


def factor_int(n: int, rng: random.Random | None = None) -> FactoredRational:
    """Factor a nonzero integer into certified primes."""
    if n == 0:
        raise DomainError("cannot factor zero")
    rng = rng or random.Random(0x5EED)
    facs = _factor_positive(abs(n), rng)
    probable = tuple(sorted(p for p in facs if not is_certified_prime(p)))
    return FactoredRational(1 if n > 0 else -1, tuple(sorted(facs.items())), probable)


def factor_rational(q: Fraction | int, rng: random.Random | None = None) -> FactoredRational:
    """Factor a nonzero rational; denominator primes get negative exponents."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("cannot factor zero")
    num = factor_int(q.numerator, rng)
    if q.denominator == 1:
        return num
    den = factor_int(q.denominator, rng)
    inv = FactoredRational(den.sign, tuple((p, -e) for p, e in den.factors), den.probable)
    return num * inv


# ---------------------------------------------------------------------------
# polynomials over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyQ:
    """Dense polynomial over Q, coefficients low degree first, trimmed."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs) -> "PolyQ":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return PolyQ(tuple(cs))

    @staticmethod
    def const(c) -> "PolyQ":
        return PolyQ.make([c])

    @staticmethod
    def x() -> "PolyQ":
        return PolyQ.make([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def lc(self) -> Fraction:
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == 1

    def monic(self) -> "PolyQ":
        c = self.lc()
        return self if c == 1 else PolyQ.make([a / c for a in self.coeffs])

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return PolyQ.make(a)

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        if self.is_zero() or other.is_zero():
            return PolyQ(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ.make(out)

    def scale(self, c) -> "PolyQ":
        return PolyQ.make([a * Fraction(c) for a in self.coeffs])

    def __pow__(self, n: int) -> "PolyQ":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        r, b = PolyQ.const(1), self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d, lc = other.degree, other.lc()
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            c = r[-1] / lc
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] -= c * b
        return PolyQ.make(q), PolyQ.make(r)

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return self.divmod(other)[1]

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ.make([i * c for i, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        return poly_to_string(self)


def poly_gcd(f: PolyQ, g: PolyQ) -> PolyQ:
    """Monic gcd over Q (monic of the nonzero one if the other is zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f if f.is_zero() else f.monic()


def poly_divmod(f: PolyQ, g: PolyQ) -> tuple[PolyQ, PolyQ]:
    return f.divmod(g)


def resultant(f: PolyQ, g: PolyQ) -> Fraction:
    """Resultant over Q via the Euclidean recursion."""
    if f.is_zero() or g.is_zero():
        raise DomainError("resultant of the zero polynomial")
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    r = f % g
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (f.degree * g.degree) % 2 else 1
    return sign * g.lc() ** (f.degree - r.degree) * resultant(g, r)


def discriminant(f: PolyQ) -> Fraction:
    d = f.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc()


# -- text and sympy boundary -------------------------------------------------

_X = sympy.symbols("x")


def _to_sympy(f: PolyQ) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(c) for c in reversed(f.coeffs)] or [0], _X, domain="QQ")


def _from_sympy(p: sympy.Poly) -> PolyQ:
    return PolyQ.make([Fraction(int(c.numerator), int(c.denominator))
                       for c in reversed(p.all_coeffs())])


def poly_from_string(s: str) -> PolyQ:
    """Parse `3*x^2 - 1/2*x + 7` style input (also accepts `**` powers)."""
    try:
        expr = sympy.parse_expr(s.replace("^", "**"), local_dict={"x": _X})
        p = sympy.Poly(sympy.together(expr), _X, domain="QQ")
    except Exception as exc:
        raise ParseError(f"cannot parse polynomial {s!r}: {exc}") from None
    return _from_sympy(p)


def ratfunc_from_string(s: str) -> tuple[PolyQ, PolyQ]:
    """Parse an element of Q(x) as a (numerator, denominator) pair."""
    try:
        expr = sympy.parse_expr(s.replace("^", "**"), local_dict={"x": _X})
        num_e, den_e = sympy.fraction(sympy.together(expr))
        num = sympy.Poly(num_e, _X, domain="QQ")
        den = sympy.Poly(den_e, _X, domain="QQ")
    except Exception as exc:
        raise ParseError(f"cannot parse rational function {s!r}: {exc}") from None
    return _from_sympy(num), _from_sympy(den)


def poly_to_string(f: PolyQ) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c) if c > 0 else f"- {-c}" if parts else str(c)
        else:
            xpow = "x" if i == 1 else f"x^{i}"
            if abs(c) == 1:
                mag = xpow
            else:
                mag = f"{abs(c)}*{xpow}"
            term = mag if c > 0 else (f"- {mag}" if parts else f"-{mag}")
        if parts and c > 0:
            parts.append("+ " + term)
        else:
            parts.append(term)
    return " ".join(parts)


# -- factorization over Q ----------------------------------------------------

@dataclass(frozen=True)
class FactorizationQ:
    """unit * prod(factor ** mult), factors monic irreducible over Q."""

    unit: Fraction
    factors: tuple[tuple[PolyQ, int], ...]

    def value(self) -> PolyQ:
        prod = PolyQ.const(self.unit)
        for f, m in self.factors:
            prod = prod * f**m
        return prod

    def to_json(self) -> dict:
        return {"unit": str(self.unit),
                "factors": [[poly_to_string(f), m] for f, m in self.factors]}


def _factor_key(fm: tuple[PolyQ, int]):
    f, _ = fm
    return (f.degree, tuple(f.coeffs))


def factor_poly_q(f: PolyQ, degree_cap: int = DEFAULT_DEGREE_CAP) -> FactorizationQ:
    """Exact factorization into monic irreducibles over Q.

    Delegates to sympy's Zassenhaus-style machinery (squarefree split,
    mod-p factorization, Hensel lifting, recombination) and re-verifies the
    product before returning.
    """
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    if f.degree > degree_cap:
        raise DomainError(
            f"degree {f.degree} exceeds the factorization cap {degree_cap}")
    if f.degree == 0:
        return FactorizationQ(f.coeffs[0], ())
    unit_s, facs_s = _to_sympy(f).factor_list()
    unit = Fraction(int(unit_s.numerator), int(unit_s.denominator))
    factors = []
    for g, m in facs_s:
        gq = _from_sympy(g)
        if not gq.is_monic():
            unit *= gq.lc() ** m
            gq = gq.monic()
        factors.append((gq, int(m)))
    factors.sort(key=_factor_key)
    result = FactorizationQ(unit, tuple(factors))
    assert result.value() == f, "factorization failed to reconstruct input"
    return result


def is_irreducible_q(f: PolyQ) -> bool:
    if f.degree < 1:
        return False
    return len(factor_poly_q(f).factors) == 1 and factor_poly_q(f).factors[0][1] == 1


# ---------------------------------------------------------------------------
# polynomials over F_p
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyFp:
    """Dense polynomial over F_p (p an odd prime), trimmed, reduced mod p."""

    p: int
    coeffs: tuple[int, ...]

    @staticmethod
    def make(p: int, coeffs) -> "PolyFp":
        if p == 2:
            raise DomainError("characteristic 2 is unsupported")
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return PolyFp(p, tuple(cs))

    @staticmethod
    def const(p: int, c: int) -> "PolyFp":
        return PolyFp.make(p, [c])

    @staticmethod
    def x(p: int) -> "PolyFp":
        return PolyFp.make(p, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        if self.is_zero():
            raise DomainError("zero polynomial")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == 1

    def monic(self) -> "PolyFp":
        inv = pow(self.lc(), -1, self.p)
        return PolyFp.make(self.p, [c * inv for c in self.coeffs])

    def _chk(self, other: "PolyFp") -> None:
        if self.p != other.p:
            raise DomainError("characteristic mismatch")

    def __add__(self, other: "PolyFp") -> "PolyFp":
        self._chk(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return PolyFp.make(self.p, a)

    def __neg__(self) -> "PolyFp":
        return PolyFp.make(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        return self + (-other)

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        self._chk(other)
        if self.is_zero() or other.is_zero():
            return PolyFp(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyFp.make(self.p, out)

    def divmod(self, other: "PolyFp") -> tuple["PolyFp", "PolyFp"]:
        self._chk(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        p = self.p
        inv = pow(other.lc(), -1, p)
        q = [0] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d = other.degree
        while True:
            while r and r[-1] % p == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            c = r[-1] * inv % p
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] = (r[k + i] - c * b) % p
        return PolyFp.make(p, q), PolyFp.make(p, r)

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return self.divmod(other)[1]

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def derivative(self) -> "PolyFp":
        return PolyFp.make(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                parts.append(xpow if c == 1 else f"{c}*{xpow}")
        return " + ".join(parts)


def polyfp_gcd(f: PolyFp, g: PolyFp) -> PolyFp:
    while not g.is_zero():
        f, g = g, f % g
    return f if f.is_zero() else f.monic()


def polyfp_pow_mod(base: PolyFp, n: int, modulus: PolyFp) -> PolyFp:
    r = PolyFp.const(base.p, 1)
    b = base % modulus
    while n:
        if n & 1:
            r = (r * b) % modulus
        b = (b * b) % modulus
        n >>= 1
    return r


def polyfp_from_polyq(f: PolyQ, p: int) -> PolyFp:
    """Reduce mod p; fails if p divides a coefficient denominator."""
    cs = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise DomainError(f"prime {p} divides a denominator of {f}")
        cs.append(c.numerator * pow(c.denominator, -1, p) % p)
    return PolyFp.make(p, cs)


def _pth_root_fp(f: PolyFp) -> PolyFp:
    """p-th root of a polynomial of the form g(x**p) over F_p."""
    return PolyFp.make(f.p, [f.coeffs[i] for i in range(0, len(f.coeffs), f.p)])


def _squarefree_parts_fp(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Squarefree decomposition over F_p, handling p-th power collapse."""
    p = f.p
    out: list[tuple[PolyFp, int]] = []
    if f.degree < 1:
        return out
    d = f.derivative()
    if d.is_zero():
        return [(g, p * m) for g, m in _squarefree_parts_fp(_pth_root_fp(f))]
    c = polyfp_gcd(f, d)
    w = f.divmod(c)[0]
    i = 1
    while not w.degree == 0:
        y = polyfp_gcd(w, c)
        z = w.divmod(y)[0]
        if z.degree > 0:
            out.append((z.monic(), i))
        w, c = y, c.divmod(y)[0]
        i += 1
    if c.degree > 0:
        # c is the p-th power part left over after the Yun loop
        out.extend((g, p * m) for g, m in _squarefree_parts_fp(_pth_root_fp(c)))
    return out


def _ddf(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Distinct-degree factorization of a monic squarefree f."""
    p = f.p
    out = []
    xq = PolyFp.x(p)
    d = 0
    rest = f
    while rest.degree > 2 * d + 1:
        d += 1
        xq = polyfp_pow_mod(xq, p, rest)
        g = polyfp_gcd(xq - PolyFp.x(p), rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.divmod(g)[0]
            xq = xq % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _edf(f: PolyFp, d: int, rng: random.Random) -> list[PolyFp]:
    """Cantor-Zassenhaus equal-degree splitting: f = product of irreducibles of degree d."""
    p = f.p
    if f.degree == d:
        return [f.monic()]
    e = (p**d - 1) // 2
    while True:
        r = PolyFp.make(p, [rng.randrange(p) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        g = polyfp_gcd(r, f)
        if 0 < g.degree < f.degree:
            break
        h = polyfp_pow_mod(r, e, f) - PolyFp.const(p, 1)
        g = polyfp_gcd(h, f)
        if 0 < g.degree < f.degree:
            break
    other = f.divmod(g)[0]
    return _edf(g, d, rng) + _edf(other, d, rng)


def factor_poly_fp(f: PolyFp, rng: random.Random | None = None
                   ) -> tuple[int, tuple[tuple[PolyFp, int], ...]]:
    """Cantor-Zassenhaus factorization; returns (unit, monic factors with multiplicity)."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    rng = rng or random.Random(0xCA2A)
    unit = f.lc()
    f = f.monic()
    factors: list[tuple[PolyFp, int]] = []
    for sqf, mult in _squarefree_parts_fp(f):
        for part, d in _ddf(sqf):
            for irr in _edf(part, d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return unit, tuple(factors)


def is_irreducible_fp(f: PolyFp) -> bool:
    """Irreducibility via gcds with x**(p**d) - x."""
    if f.degree < 1:
        return False
    p, n = f.p, f.degree
    f = f.monic()
    xq = PolyFp.x(p)
    for _ in range(n):
        xq = polyfp_pow_mod(xq, p, f)
    if xq != PolyFp.x(p) % f:
        return False
    for d in {n // q for q in factor_int(n).primes()} if n > 1 else set():
        xq = PolyFp.x(p)
        for _ in range(d):
            xq = polyfp_pow_mod(xq, p, f)
        if polyfp_gcd(xq - PolyFp.x(p), f).degree > 0:
            return False
    return True


def polyfp_from_string(s: str, p: int) -> PolyFp:
    return polyfp_from_polyq(poly_from_string(s), p)


def sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact rational square root, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None
