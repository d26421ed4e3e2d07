"""Quaternion classes over F_p(x), p an odd prime.

Over a finite constant field the unramified 2-torsion is trivial, so a
quaternion class IS its residue vector: tame residue characters at the
finite places plus the place at infinity, with values +-1 computed through
Euler's criterion in the residue fields F_{p^d}.  Reciprocity (product of
all residues = +1) is asserted on every constructed class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError
from .exact_arith import (
    PolyFp,
    factor_poly_fp,
    is_prime,
    polyfp_pow_mod,
)

MAX_CHAR = 2**31
MAX_DEGREE = 64


@dataclass(frozen=True)
class PlaceFFp:
    """A place of F_p(x): a monic irreducible polynomial, or infinity."""

    p: int
    modulus: PolyFp | None  # None = the degree place at infinity

    @staticmethod
    def finite(modulus: PolyFp) -> "PlaceFFp":
        return PlaceFFp(modulus.p, modulus)

    @staticmethod
    def infinity(p: int) -> "PlaceFFp":
        return PlaceFFp(p, None)

    @property
    def is_infinite(self) -> bool:
        return self.modulus is None

    def residue_degree(self) -> int:
        return 1 if self.is_infinite else self.modulus.degree

    def sort_key(self):
        if self.is_infinite:
            return (1, 0, ())
        return (0, self.modulus.degree, self.modulus.coeffs)

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.modulus)


@dataclass(frozen=True)
class FactoredFuncFp:
    """A nonzero element of F_p(x)^x in factored form."""

    p: int
    constant: int  # in [1, p)
    factors: tuple[tuple[PolyFp, int], ...]

    @staticmethod
    def from_poly(f: PolyFp, rng: random.Random | None = None) -> "FactoredFuncFp":
        if f.is_zero():
            raise DomainError("zero is not a unit of F_p(x)")
        _check_char(f.p)
        unit, facs = factor_poly_fp(f, rng)
        return FactoredFuncFp(f.p, unit, facs)

    @staticmethod
    def from_constant(p: int, c: int) -> "FactoredFuncFp":
        _check_char(p)
        if c % p == 0:
            raise DomainError("zero is not a unit of F_p(x)")
        return FactoredFuncFp(p, c % p, ())

    def __mul__(self, other: "FactoredFuncFp") -> "FactoredFuncFp":
        if self.p != other.p:
            raise DomainError("characteristic mismatch")
        exps = dict(self.factors)
        for f, m in other.factors:
            exps[f] = exps.get(f, 0) + m
        facs = tuple(sorted(((f, m) for f, m in exps.items() if m != 0),
                            key=lambda fm: (fm[0].degree, fm[0].coeffs)))
        return FactoredFuncFp(self.p, self.constant * other.constant % self.p, facs)

    def valuation(self, v: PlaceFFp) -> int:
        if v.is_infinite:
            return -sum(f.degree * m for f, m in self.factors)
        for f, m in self.factors:
            if f == v.modulus:
                return m
        return 0

    def reduce_finite(self, v: PlaceFFp) -> PolyFp:
        """Image of a v-unit in F_p[x]/(modulus)."""
        h = v.modulus
        acc = PolyFp.const(self.p, self.constant)
        for f, m in self.factors:
            if f == h:
                raise DomainError("not a unit at the place")
            fm = f % h
            if m >= 0:
                acc = (acc * polyfp_pow_mod(fm, m, h)) % h
            else:
                q = self.p ** h.degree
                # inverse via a^(q-2) in the residue field
                acc = (acc * polyfp_pow_mod(fm, (-m) * (q - 2), h)) % h
        return acc

    def __str__(self) -> str:
        parts = [str(self.constant)]
        for f, m in self.factors:
            parts.append(f"({f})^{m}" if m != 1 else f"({f})")
        return " * ".join(parts)


def _check_char(p: int) -> None:
    if p == 2:
        raise DomainError("characteristic 2 is unsupported")
    if p >= MAX_CHAR or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime below 2^31")


def _euler_fq(val: PolyFp, h: PolyFp) -> int:
    q = h.p ** h.degree
    t = polyfp_pow_mod(val % h, (q - 1) // 2, h)
    if t == PolyFp.const(h.p, 1):
        return 1
    if t == PolyFp.const(h.p, h.p - 1):
        return -1
    raise AssertionError("Euler criterion on a non-unit")


def residue_fp(f: FactoredFuncFp, g: FactoredFuncFp, v: PlaceFFp) -> int:
    """Tame residue character value at v: the Euler criterion of
    (-1)^(v(f)v(g)) f^v(g) g^(-v(f)) in the residue field."""
    if f.p != g.p or f.p != v.p:
        raise DomainError("characteristic mismatch")
    p = f.p
    vf, vg = f.valuation(v), g.valuation(v)
    if vf == 0 and vg == 0 and not v.is_infinite:
        if all(fac != v.modulus for fac, _ in f.factors + g.factors):
            return 1  # unit criterion: symbol is a residue-field unit power
    if v.is_infinite:
        # reduction at infinity of a valuation-0 function is its leading
        # coefficient, which for monic factorizations is the constant
        sign = -1 if (vf * vg) % 2 else 1
        t = (sign * pow(f.constant, vg, p) * pow(g.constant, -vf, p)) % p
        return _euler_fq(PolyFp.const(p, t), PolyFp.x(p))  # F_p Euler criterion
    h = v.modulus
    f1 = FactoredFuncFp(p, f.constant,
                        tuple((q, m) for q, m in f.factors if q != h))
    g1 = FactoredFuncFp(p, g.constant,
                        tuple((q, m) for q, m in g.factors if q != h))
    sign = p - 1 if (vf * vg) % 2 else 1
    t = PolyFp.const(p, sign)
    q_card = p ** h.degree
    fv = f1.reduce_finite(v)
    gv = g1.reduce_finite(v)
    t = (t * polyfp_pow_mod(fv, vg % (q_card - 1), h)) % h
    t = (t * polyfp_pow_mod(gv, (-vf) % (q_card - 1), h)) % h
    return _euler_fq(t, h)


@dataclass(frozen=True)
class QuatClassFp:
    """A quaternion class over F_p(x) as its residue vector (support only)."""

    p: int
    residues: tuple[PlaceFFp, ...]  # places with residue -1, sorted

    def is_zero(self) -> bool:
        return not self.residues

    def to_json(self) -> dict:
        return {"char": self.p,
                "ramified": [str(v) for v in self.residues]}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return "{" + ", ".join(str(v) for v in self.residues) + "}"


def class_fp(f: FactoredFuncFp, g: FactoredFuncFp) -> QuatClassFp:
    """Residues at all places dividing f or g plus infinity; reciprocity
    (product of all residue values = +1) is asserted."""
    if f.p != g.p:
        raise DomainError("characteristic mismatch")
    p = f.p
    mods = {q for q, _ in f.factors} | {q for q, _ in g.factors}
    places = sorted((PlaceFFp.finite(m) for m in mods),
                    key=PlaceFFp.sort_key) + [PlaceFFp.infinity(p)]
    support = []
    prod = 1
    for v in places:
        r = residue_fp(f, g, v)
        prod *= r
        if r == -1:
            support.append(v)
    assert prod == 1, "tame residue reciprocity violated: arithmetic bug"
    return QuatClassFp(p, tuple(support))


@dataclass(frozen=True)
class VerdictFp:
    isomorphic: bool
    witness_place: PlaceFFp | None = None

    def to_json(self) -> dict:
        out: dict = {"isomorphic": self.isomorphic}
        if self.witness_place is not None:
            out["witness_place"] = str(self.witness_place)
        return out


def is_isomorphic_fpx(pair1: tuple[FactoredFuncFp, FactoredFuncFp],
                      pair2: tuple[FactoredFuncFp, FactoredFuncFp]) -> VerdictFp:
    """Over F_p(x) the class is its residue vector, so isomorphism is
    equality of residue vectors; the witness is the first differing place."""
    f1, g1 = pair1
    f2, g2 = pair2
    if {f1.p, g1.p, f2.p, g2.p} != {f1.p}:
        raise DomainError("characteristic mismatch")
    c1, c2 = class_fp(f1, g1), class_fp(f2, g2)
    if c1 == c2:
        return VerdictFp(True)
    diff = sorted(set(c1.residues) ^ set(c2.residues),
                  key=PlaceFFp.sort_key)
    return VerdictFp(False, witness_place=diff[0])
