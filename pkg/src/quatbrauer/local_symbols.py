"""Local computations over Q and over number fields Q[x]/(pi).

Provides Legendre and Hilbert symbols at every place of Q, canonical square
classes of rationals, and a certified square test in number fields.  The
square test is Las Vegas: it races p-adic square-root reconstruction against
a search for a witness prime where Euler's criterion fails, and every verdict
it returns carries an exactly re-verifiable certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import BudgetError, DomainError
from .exact_arith import (
    PolyFp,
    PolyQ,
    factor_poly_fp,
    factor_rational,
    is_prime,
    poly_gcd,
    polyfp_from_polyq,
    polyfp_pow_mod,
    resultant,
    sqrt_fraction,
)

WITNESS_PRIME_LIMIT = 10**5
MAX_LIFT_EXPONENT = 1024


# ---------------------------------------------------------------------------
# places of Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PlaceQ:
    """A place of Q: a finite prime, or the real place (p is None)."""

    p: int | None

    @staticmethod
    def real() -> "PlaceQ":
        return PlaceQ(None)

    @staticmethod
    def finite(p: int) -> "PlaceQ":
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return PlaceQ(p)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def sort_key(self) -> tuple:
        return (1, 0) if self.is_real else (0, self.p)

    def __str__(self) -> str:
        return "real" if self.is_real else str(self.p)

    @staticmethod
    def parse(s: str) -> "PlaceQ":
        s = s.strip().lower()
        if s in ("real", "oo", "inf"):
            return PlaceQ.real()
        return PlaceQ.finite(int(s))


REAL = PlaceQ.real()


# ---------------------------------------------------------------------------
# Legendre and Hilbert symbols
# ---------------------------------------------------------------------------

def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; 0 iff p | a."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def _val_unit(a: Fraction, p: int) -> tuple[int, int, int]:
    """(v_p(a), numerator of unit part, denominator of unit part)."""
    n, d = a.numerator, a.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v, n, d


def hilbert(a, b, place: PlaceQ) -> int:
    """Hilbert symbol (a, b) at a place of Q; +1 iff z^2 = a x^2 + b y^2
    has a nontrivial solution over the completion."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, an, ad = _val_unit(a, p)
    beta, bn, bd = _val_unit(b, p)
    if p != 2:
        eps = (p - 1) // 2
        s = (alpha * beta * eps) % 2
        sym = -1 if s else 1
        if beta % 2:
            sym *= legendre(an * pow(ad, -1, p) % p, p)
        if alpha % 2:
            sym *= legendre(bn * pow(bd, -1, p) % p, p)
        return sym
    # p = 2: epsilon/omega formula on the unit parts
    u = an * pow(ad, -1, 8) % 8
    w = bn * pow(bd, -1, 8) % 8
    eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
    om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
    e = (eps_u * eps_w + alpha * om_w + beta * om_u) % 2
    return -1 if e else 1


def square_class_q(a) -> int:
    """The unique squarefree integer t with a/t a rational square."""
    a = Fraction(a)
    if a == 0:
        raise DomainError("zero has no square class")
    fr = factor_rational(a)
    t = fr.sign
    for p, e in fr.factors:
        if e % 2:
            t *= p
    return t


# ---------------------------------------------------------------------------
# number field elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberFieldElem:
    """An element of Q[x]/(pi), pi monic irreducible, value reduced mod pi."""

    modulus: PolyQ
    value: PolyQ

    @staticmethod
    def make(modulus: PolyQ, value: PolyQ) -> "NumberFieldElem":
        if not modulus.is_monic() or modulus.degree < 1:
            raise DomainError("modulus must be monic of positive degree")
        return NumberFieldElem(modulus, value % modulus)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __mul__(self, other: "NumberFieldElem") -> "NumberFieldElem":
        assert self.modulus == other.modulus
        return NumberFieldElem(self.modulus, (self.value * other.value) % self.modulus)

    def inverse(self) -> "NumberFieldElem":
        """Extended Euclid in Q[x]; requires the value to be a unit mod pi."""
        if self.is_zero():
            raise DomainError("zero is not invertible")
        r0, r1 = self.modulus, self.value
        s0, s1 = PolyQ.make([]), PolyQ.const(1)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise DomainError("value shares a factor with the modulus")
        return NumberFieldElem(self.modulus, s0.scale(1 / r0.coeffs[0]) % self.modulus)

    def __pow__(self, n: int) -> "NumberFieldElem":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = NumberFieldElem(self.modulus, PolyQ.const(1))
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


# ---------------------------------------------------------------------------
# certified square testing in Q[x]/(pi)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NonsquareWitness:
    """A prime p and an irreducible factor of pi mod p where the image of the
    tested element fails Euler's criterion."""

    prime: int
    factor: PolyFp


@dataclass(frozen=True)
class SquareClassVerdict:
    is_square: bool
    root: PolyQ | None = None              # square root mod pi, when square
    witness: NonsquareWitness | None = None
    verified: bool = False

    def to_json(self) -> dict:
        out = {"is_square": self.is_square, "verified": self.verified}
        if self.root is not None:
            out["root"] = str(self.root)
        if self.witness is not None:
            out["witness"] = {"prime": self.witness.prime,
                              "factor": str(self.witness.factor)}
        return out


def _fq_sqrt(val: PolyFp, h: PolyFp, rng: random.Random) -> PolyFp | None:
    """Square root in F_{p^d} = F_p[x]/(h), or None for a nonresidue."""
    p, d = h.p, h.degree
    q = p**d
    one = PolyFp.const(p, 1)
    if val.is_zero():
        return val
    if polyfp_pow_mod(val, (q - 1) // 2, h) != one:
        return None
    if q % 4 == 3:
        return polyfp_pow_mod(val, (q + 1) // 4, h)
    qq, s = q - 1, 0
    while qq % 2 == 0:
        qq //= 2
        s += 1
    while True:
        z = PolyFp.make(p, [rng.randrange(p) for _ in range(d)])
        if not z.is_zero() and polyfp_pow_mod(z, (q - 1) // 2, h) != one:
            break
    m = s
    c = polyfp_pow_mod(z, qq, h)
    t = polyfp_pow_mod(val, qq, h)
    r = polyfp_pow_mod(val, (qq + 1) // 2, h)
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = (t2 * t2) % h
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = (b * b) % h
        m = i
        c = (b * b) % h
        t = (t * c) % h
        r = (r * b) % h
    return r


def _polyfp_inverse(a: PolyFp, mod: PolyFp) -> PolyFp:
    r0, r1 = mod, a % mod
    s0, s1 = PolyFp.const(a.p, 0), PolyFp.const(a.p, 1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise DomainError("not invertible")
    inv = pow(r0.coeffs[0], -1, a.p)
    return (s0 * PolyFp.const(a.p, inv)) % mod


def _crt_polyfp(residues: list[PolyFp], moduli: list[PolyFp], product: PolyFp) -> PolyFp:
    p = product.p
    acc = PolyFp.const(p, 0)
    for r, h in zip(residues, moduli):
        cof = product.divmod(h)[0]
        acc = acc + (r * cof * _polyfp_inverse(cof % h, h)) % product
    return acc % product


def _poly_coeffs_mod(f: PolyQ, m: int, length: int) -> list[int]:
    out = []
    for i in range(length):
        c = f.coeffs[i] if i < len(f.coeffs) else Fraction(0)
        out.append(c.numerator * pow(c.denominator, -1, m) % m)
    return out


def _zx_mulmod(a: list[int], b: list[int], pi: list[int], m: int) -> list[int]:
    """Multiply in (Z/m)[x] / (pi), pi monic of degree d = len(pi) - 1."""
    d = len(pi) - 1
    out = [0] * (2 * d - 1 if d > 0 else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for i in range(d):
                out[k - d + i] = (out[k - d + i] - c * pi[i]) % m
    return [x % m for x in out[:d]]


def _zx_sub(a, b, m):
    return [(x - y) % m for x, y in zip(a, b)]


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Balanced rational reconstruction of a mod m (|num|,|den| <= sqrt(m/2))."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def _good_primes(pi: PolyQ, value: PolyQ, start: int = 3):
    """Odd primes where pi stays squarefree and the value stays a unit."""
    r1 = resultant(pi, pi.derivative())
    r2 = resultant(pi, value) if value.degree >= 0 else Fraction(1)
    screen = (abs(r1.numerator) * r1.denominator *
              abs(r2.numerator) * r2.denominator)
    for c in pi.coeffs + value.coeffs:
        screen *= c.denominator
    p = start - 1
    while True:
        p += 1
        if p < 3 or not is_prime(p) or p == 2:
            continue
        if screen % p != 0:
            yield p


class _LiftState:
    """Per-sign-pattern Newton lifting of a square root mod (p^e, pi)."""

    def __init__(self, root: PolyFp, pi: PolyQ, value: PolyQ):
        self.p = root.p
        self.pi = pi
        self.value = value
        self.exp = 1
        d = pi.degree
        self.r = list(root.coeffs) + [0] * (d - len(root.coeffs))
        pi_p = _poly_coeffs_mod(pi, self.p, d + 1)
        two_r = [2 * c % self.p for c in self.r]
        pimod = polyfp_from_polyq(pi, self.p)
        inv = _polyfp_inverse(PolyFp.make(self.p, two_r), pimod)
        self.i = list(inv.coeffs) + [0] * (d - len(inv.coeffs))
        del pi_p

    def lift_to(self, exp: int) -> None:
        d = self.pi.degree
        while self.exp < exp:
            self.exp = min(2 * self.exp, exp)
            m = self.p ** self.exp
            pim = _poly_coeffs_mod(self.pi, m, d + 1)
            cm = _poly_coeffs_mod(self.value, m, d)
            # r <- r - (r^2 - c) * i  (i accurate to half precision suffices)
            r2 = _zx_mulmod(self.r, self.r, pim, m)
            err = _zx_sub(r2, cm, m)
            corr = _zx_mulmod(err, self.i, pim, m)
            self.r = _zx_sub(self.r, corr, m)
            # i <- i * (2 - 2r * i)
            two_r = [2 * c % m for c in self.r]
            t = _zx_mulmod(two_r, self.i, pim, m)
            two = [(2 if k == 0 else 0) - t[k] for k in range(d)]
            self.i = _zx_mulmod(self.i, [x % m for x in two], pim, m)

    def reconstruct(self) -> PolyQ | None:
        m = self.p ** self.exp
        coeffs = []
        for c in self.r:
            f = _rational_reconstruct(c, m)
            if f is None:
                return None
            coeffs.append(f)
        return PolyQ.make(coeffs)


def _euler_verdict(value: PolyQ, p: int, h: PolyFp) -> int:
    """Euler criterion for the image of value in F_p[x]/(h): +1, -1."""
    vm = polyfp_from_polyq(value, p) % h
    q = p**h.degree
    t = polyfp_pow_mod(vm, (q - 1) // 2, h)
    if t == PolyFp.const(p, 1):
        return 1
    if t == PolyFp.const(p, p - 1):
        return -1
    raise AssertionError("Euler criterion on a non-unit")


def verify_square_certificate(c: NumberFieldElem, root: PolyQ) -> bool:
    return (root * root - c.value) % c.modulus == PolyQ.make([])


def verify_nonsquare_certificate(c: NumberFieldElem, w: NonsquareWitness) -> bool:
    """Recompute the reduction and Euler's criterion at the witness."""
    p, h = w.prime, w.factor
    pim = polyfp_from_polyq(c.modulus, p)
    if not (pim % h).is_zero():
        return False
    return _euler_verdict(c.value, p, h) == -1


def is_square_in_number_field(
    c: NumberFieldElem,
    rng: random.Random | None = None,
    max_exp: int | None = None,
    witness_limit: int | None = None,
) -> SquareClassVerdict:
    """Decide whether c is a square in Q[x]/(pi), with a certificate.

    Alternates between (i) p-adic square-root reconstruction over all residue
    sign patterns of a fixed good prime and (ii) Euler-criterion witness
    search over further good primes.  Raises BudgetError if neither side
    certifies within the budget.
    """
    if c.is_zero():
        raise DomainError("square test needs a nonzero element")
    if max_exp is None:
        max_exp = MAX_LIFT_EXPONENT
    if witness_limit is None:
        witness_limit = WITNESS_PRIME_LIMIT
    rng = rng or random.Random(0x5C1A55)
    pi, value = c.modulus, c.value

    # constants that are already rational squares need no p-adic work
    if value.degree == 0:
        r = sqrt_fraction(value.coeffs[0])
        if r is not None:
            return SquareClassVerdict(True, root=PolyQ.const(r), verified=True)

    # degree-1 fast path: the residue field is Q itself
    if pi.degree == 1:
        v = value.coeffs[0] if value.coeffs else Fraction(0)
        root = sqrt_fraction(v)
        if root is not None:
            return SquareClassVerdict(True, root=PolyQ.const(root), verified=True)
        # fall through: witness search below certifies the nonsquare

    prime_iter = _good_primes(pi, value)
    states: list[_LiftState] | None = None
    exp = 16
    witnesses_exhausted = False

    while True:
        # witness batch
        for _ in range(12):
            try:
                p = next(prime_iter)
            except StopIteration:
                witnesses_exhausted = True
                break
            if p > witness_limit:
                witnesses_exhausted = True
                break
            _, facs = factor_poly_fp(polyfp_from_polyq(pi, p), rng)
            for h, _mult in facs:
                if _euler_verdict(value, p, h) == -1:
                    w = NonsquareWitness(p, h)
                    assert verify_nonsquare_certificate(c, w)
                    return SquareClassVerdict(False, witness=w, verified=True)

        # set up reconstruction states at the first good prime
        if states is None:
            p0 = next(_good_primes(pi, value))
            pim = polyfp_from_polyq(pi, p0)
            _, facs = factor_poly_fp(pim, rng)
            moduli = [h for h, _m in facs]
            roots = []
            for h in moduli:
                r = _fq_sqrt(polyfp_from_polyq(value, p0) % h, h, rng)
                if r is None:
                    w = NonsquareWitness(p0, h)
                    assert verify_nonsquare_certificate(c, w)
                    return SquareClassVerdict(False, witness=w, verified=True)
                roots.append(r)
            states = []
            # global sign is free: fix the first factor's sign
            for mask in range(1 << max(0, len(moduli) - 1)):
                sroots = [roots[0]]
                for j in range(1, len(moduli)):
                    rj = roots[j]
                    if (mask >> (j - 1)) & 1:
                        rj = -rj
                    sroots.append(rj)
                combined = _crt_polyfp(sroots, moduli, pim)
                states.append(_LiftState(combined, pi, value))

        # lift and attempt rational reconstruction
        for st in states:
            st.lift_to(exp)
            cand = st.reconstruct()
            if cand is not None and verify_square_certificate(c, cand):
                return SquareClassVerdict(True, root=cand, verified=True)

        if exp >= max_exp and witnesses_exhausted:
            raise BudgetError(
                "square test undecided within precision/prime budget")
        if exp < max_exp:
            exp *= 2


def is_square_verdict_q(a: Fraction) -> bool:
    """Squareness over Q, for cross-checks against degree-1 residue fields."""
    return square_class_q(a) == 1
