"""Polynomials over R = k[S] in one indeterminate, uppers to zero and extended ideals.

A monomial ideal I of R extends to I[X] in R[X] = k[S x N], which is again a
monoid ring; :func:`poly_ring` builds that monoid by adding X as a free
scalar, and :func:`extend_ideal` lifts an ideal to it.  Polynomials lie in a
monomial ideal exactly when each of their terms does.

Coefficients are rational combinations of monomials.  Division by f in
K[X] is ordinary long division: the leading coefficient of f is a single
monomial, so every quotient coefficient is again a Laurent polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .entail import _symbolic_ring, subset_up_to
from .ideals import (
    IN_RING,
    Adjoin,
    ConstraintIdeal,
    DegreeAtLeast,
    Dual,
    FinGen,
    FracIdeal,
    Occurs,
    Shift,
    colon,
    gcd,
    unit_ideal,
)
from .lattice import ONE, Monomial, Var, parse_monomial
from .monoid import MonoidSpec
from .star import StarPredicateReport, is_v_finite, is_v_invertible
from .verdict import (
    Bounds,
    InputError,
    PreconditionError,
    Verdict,
    bounded,
    inconclusive,
    meet,
    proved,
    refuted,
)


def poly_ring(ring: MonoidSpec, xname: str = "X") -> MonoidSpec:
    """The monoid of R[X]: S with a free scalar X adjoined."""
    if xname in ring.scalars or xname in ring.families:
        raise InputError(f"polynomial indeterminate {xname!r} clashes with a declared indeterminate")
    return MonoidSpec(ring.scalars + (xname,), ring.families, ring.rules, name=f"{ring.name}[{xname}]")


Coeff = dict  # Monomial -> Fraction


def _clean(c: Coeff) -> Coeff:
    return {m: q for m, q in c.items() if q != 0}


def _cadd(a: Coeff, b: Coeff, sign: int = 1) -> Coeff:
    out = dict(a)
    for m, q in b.items():
        out[m] = out.get(m, 0) + sign * q
    return _clean(out)


def _cmul(a: Coeff, b: Coeff) -> Coeff:
    out: Coeff = {}
    for m1, q1 in a.items():
        for m2, q2 in b.items():
            m = m1 * m2
            out[m] = out.get(m, 0) + q1 * q2
    return _clean(out)


class RingPoly:
    """``sum_k c_k X^k`` with each c_k a rational combination of monomials of S."""

    def __init__(self, terms: dict[int, Coeff], xname: str = "X"):
        clean = {}
        for k, c in terms.items():
            if k < 0:
                raise InputError("negative power of the polynomial indeterminate")
            c = _clean({m: Fraction(q) for m, q in c.items()})
            if c:
                clean[k] = c
        self.terms = clean
        self.xname = xname
        self.x = Var(xname)

    @classmethod
    def const(cls, m: Monomial, xname: str = "X") -> "RingPoly":
        return cls({0: {m: Fraction(1)}}, xname)

    @classmethod
    def from_monomials(cls, mons: Iterable[Monomial], xname: str = "X") -> "RingPoly":
        """Sum of monomials of R[X] (X may occur in them)."""
        x = Var(xname)
        terms: dict[int, Coeff] = {}
        for u in mons:
            k = u[x]
            base = u / Monomial([(x, k)]) if k else u
            c = terms.setdefault(k, {})
            c[base] = c.get(base, 0) + 1
        return cls(terms, xname)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise InputError("the zero polynomial has no degree")
        return max(self.terms)

    def coeff(self, k: int) -> Coeff:
        return self.terms.get(k, {})

    def monomials(self) -> list[Monomial]:
        """Terms as monomials of R[X]."""
        out = []
        for k in sorted(self.terms):
            for m in sorted(self.terms[k], key=Monomial.sort_key):
                out.append(m * Monomial([(self.x, k)]) if k else m)
        return out

    def __add__(self, other: "RingPoly") -> "RingPoly":
        keys = set(self.terms) | set(other.terms)
        return RingPoly({k: _cadd(self.coeff(k), other.coeff(k)) for k in keys}, self.xname)

    def __sub__(self, other: "RingPoly") -> "RingPoly":
        keys = set(self.terms) | set(other.terms)
        return RingPoly({k: _cadd(self.coeff(k), other.coeff(k), -1) for k in keys}, self.xname)

    def __mul__(self, other) -> "RingPoly":
        if isinstance(other, Monomial):
            k = other[self.x]
            base = other / Monomial([(self.x, k)]) if k else other
            return RingPoly({i + k: {m * base: q for m, q in c.items()} for i, c in self.terms.items()}, self.xname)
        out: dict[int, Coeff] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = _cadd(out.get(i + j, {}), _cmul(a, b))
        return RingPoly(out, self.xname)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RingPoly) and self.terms == other.terms and self.xname == other.xname

    def __hash__(self):
        return hash(str(self))

    def __str__(self):
        # flat canonical form, read back by parse()
        if not self.terms:
            return "0"
        out = ""
        for k in sorted(self.terms):
            c = self.terms[k]
            xs = [] if k == 0 else [self.xname if k == 1 else f"{self.xname}^{k}"]
            for m in sorted(c, key=Monomial.sort_key):
                q = c[m]
                factors = ([] if m.is_one else [str(m)]) + xs
                mag = abs(q)
                if mag != 1 or not factors:
                    factors.insert(0, str(mag))
                term = "*".join(factors)
                if not out:
                    out = term if q > 0 else "-" + term
                else:
                    out += (" + " if q > 0 else " - ") + term
        return out

    def __repr__(self):
        return f"RingPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str, xname: str = "X") -> "RingPoly":
        """``y + z*X``, ``2*y^2*X^3 - t[1]``: a sum of (rational coefficient times) monomials."""
        s = text.replace(" ", "")
        if not s:
            raise InputError("empty polynomial")
        # split at signs that are not part of an exponent
        pieces = re.split(r"(?<=[^\^+-])(?=[+-])", s)
        if any(not p.lstrip("+-") or len(p) - len(p.lstrip("+-")) > 1 for p in pieces):
            raise InputError(f"malformed polynomial {text!r}")
        mons: dict[Monomial, Fraction] = {}
        for p in pieces:
            sign = -1 if p.startswith("-") else 1
            p = p.lstrip("+-")
            q = Fraction(1)
            factors = p.split("*")
            if re.fullmatch(r"\d+(/\d+)?", factors[0]):
                q = Fraction(factors[0])
                factors = factors[1:]
            try:
                m = parse_monomial("*".join(factors)) if factors else ONE
            except ValueError as e:
                raise InputError(str(e)) from None
            mons[m] = mons.get(m, 0) + sign * q
        x = Var(xname)
        terms: dict[int, Coeff] = {}
        for m, q in mons.items():
            k = m[x]
            base = m / Monomial([(x, k)]) if k else m
            c = terms.setdefault(k, {})
            c[base] = c.get(base, 0) + q
        return cls(terms, xname)


def content(f: RingPoly, ring: MonoidSpec) -> FinGen:
    """c(f), for polynomials whose coefficients are single monomials (with any rational factor)."""
    if f.is_zero:
        raise InputError("the zero polynomial has no content")
    gens = []
    for k in sorted(f.terms):
        c = f.terms[k]
        if len(c) != 1:
            raise InputError(f"unsupported: coefficient of {f.xname}^{k} is not a single monomial")
        gens.append(next(iter(c)))
    return FinGen(ring, gens, label=f"c({f})")


def divide(g: RingPoly, f: RingPoly) -> tuple[RingPoly, RingPoly]:
    """Long division in K[X] by f with a monomial leading coefficient: (quotient, remainder)."""
    n = f.degree
    lc = f.coeff(n)
    if len(lc) != 1:
        raise InputError("division needs a monomial leading coefficient")
    ((lm, lq),) = lc.items()
    q: dict[int, Coeff] = {}
    r = g
    while not r.is_zero and r.degree >= n:
        d = r.degree
        qk = {m / lm: c / lq for m, c in r.coeff(d).items()}
        q[d - n] = _cadd(q.get(d - n, {}), qk)
        r = r - RingPoly({d - n: qk}, f.xname) * f
    return RingPoly(q, f.xname), r


class UpperToZero:
    """P = fK[X] & R[X] = f*(R:c(f))[X] over an integrally closed R."""

    def __init__(self, f: RingPoly, ring: MonoidSpec, integrally_closed: Verdict, label: str = "P"):
        if not integrally_closed.proved:
            raise PreconditionError("upper to zero needs R integrally closed (Proved); got " + integrally_closed.status.value)
        if f.is_zero or f.degree < 1:
            raise InputError("an upper to zero needs a nonconstant polynomial")
        self.f = f
        self.ring = ring
        self.xring = poly_ring(ring, f.xname)
        self.c = content(f, ring)
        self.C = colon(unit_ideal(ring), self.c)
        self.label = label

    def contains(self, g) -> bool:
        return upper_member(self, g)

    def sample(self, bounds: Bounds, degree: int = 3, xpow: int = 2) -> list[RingPoly]:
        """Elements f*h*X^k with h a bounded element of (R:c(f))."""
        out = []
        for h in self.C.candidates(degree, bounds.window):
            for k in range(xpow + 1):
                out.append(self.f * (h * Monomial([(self.f.x, k)]) if k else h))
        return out

    def __str__(self):
        return self.label


def _as_poly(g, xname: str) -> RingPoly:
    if isinstance(g, RingPoly):
        return g
    if isinstance(g, Monomial):
        return RingPoly.from_monomials([g], xname)
    raise InputError(f"expected a polynomial, got {type(g).__name__}")


def upper_member(P: UpperToZero, g) -> bool:
    g = _as_poly(g, P.f.xname)
    if g.is_zero:
        return True
    q, r = divide(g, P.f)
    if not r.is_zero:
        return False
    return all(P.C.contains(m) for c in q.terms.values() for m in c)


def extend_ideal(I: FracIdeal, xname: str = "X", bounds: Bounds | None = None, _ring=None) -> FracIdeal:
    """I[X] as an ideal of the monoid ring of R[X]."""
    SX = _ring or poly_ring(I.ring, xname)
    lab = f"{I.label}[{xname}]"

    def lift(J):
        return None if J is None else extend_ideal(J, xname, bounds, SX)

    if isinstance(I, FinGen):
        return FinGen(SX, I.gens, label="R" if I.is_unit else lab)
    if isinstance(I, ConstraintIdeal):
        atoms = [Shift(a.m, lift(a.target)) if isinstance(a, Shift) else a for a in I.atoms]
        return ConstraintIdeal(SX, atoms, label=lab, cert_family=I.cert_family, colon_of=lift(I.colon_of))
    if isinstance(I, Dual):
        return Dual(SX, lift(I.inner), bounds or I.bounds, lift(I.target), label=lab)
    if isinstance(I, Adjoin):
        return Adjoin(SX, lift(I.base), I.var, label=lab)
    raise InputError(f"cannot extend {I.label}")


def upper_inside(P: UpperToZero, W: FracIdeal, bounds: Bounds) -> Verdict:
    """P inside the monomial ideal W of R[X]: a content lemma, cross-checked on samples."""
    lemma = None
    ring = P.ring
    if isinstance(W, ConstraintIdeal) and _symbolic_ring(ring) and gcd(P.c.gens).is_one:
        ok = IN_RING in W.atoms
        for a in W.atoms:
            if a == IN_RING:
                continue
            if isinstance(a, DegreeAtLeast) and a.bound <= 1:
                ok = ok and all(g.degree(a.sel) >= a.bound for g in P.c.gens)
            elif isinstance(a, Occurs):
                ok = ok and all(a.sel.occurs_in(g) for g in P.c.gens)
            else:
                ok = False
        if ok:
            lemma = (
                "gcd of c(f) is 1, so (R:c(f)) has non-negative exponents; each coefficient c*h "
                f"of f*h lies in R and keeps the degree/occurrence of c, hence lies in {W.label}"
            )
    for g in P.sample(bounds):
        if not all(W.contains(m) for m in g.monomials()):
            if lemma:
                raise AssertionError(f"content lemma contradicted by {g}")
            return refuted(f"{g} lies in {P.label} but not in {W.label}", g)
    if lemma:
        return proved(lemma)
    return bounded(f"sampled elements of {P.label} lie in {W.label}")


def upperdiv_check(P: UpperToZero, bounds: Bounds) -> StarPredicateReport:
    """Divisorial upper to zero: maximal divisorial iff v-invertible, with the proof's witnesses."""
    div = proved(
        f"{P.label} = f*(R:{P.c.label})[X] = fK[X] & R[X] over integrally closed R; "
        f"(R:{P.c.label}) is an exact colon, so {P.label} is divisorial"
    )
    vinv_c = is_v_invertible(P.c, bounds)
    vinv = Verdict(vinv_c.status, f"{P.label} is v-invertible iff {P.c.label} is: {vinv_c.reason}", vinv_c.witness)
    evidence = []
    wit_ok = True
    f_in_P = upper_member(P, P.f)
    for g in P.c.gens:
        gp = RingPoly.const(g, P.f.xname)
        # (g/f)*(f*h) = g*h, in R since g lies in c(f) and h in (R:c(f))
        samples_ok = all(P.ring.contains(g * h) for h in P.C.candidates(3, bounds.window))
        outside = f_in_P and not upper_member(P, gp)
        evidence.append({"g": str(g), "g/f in (R[X]:P)": samples_ok, "g/f not in (P:P) (f in P, g not in P)": outside})
        wit_ok = wit_ok and samples_ok and outside
    witness = proved("g/f lies in (R[X]:P) but not in (P:P), so P is not strong") if wit_ok else refuted(
        "proof witness failed", evidence
    )
    maxdiv = meet(div, vinv, reason=f"maximal divisorial iff v-invertible; v-invertible: {vinv.status.value}")
    verdict = meet(maxdiv, witness, reason=maxdiv.reason)
    return StarPredicateReport(
        f"upperdiv({P.label})",
        verdict,
        [{"divisorial": div.to_json()}, {"v-invertible": vinv.to_json()}, {"witnesses": evidence}],
    )


def upper_is_v_finite(P: UpperToZero, bounds: Bounds) -> Verdict:
    """P = f*C[X] is v-finite iff C = (R:c(f)) is (multiplication by f is an isomorphism)."""
    v = is_v_finite(P.C, bounds)
    return Verdict(v.status, f"{P.label} v-finite iff (R:{P.c.label}) is: {v.reason}", v.witness)


def upper_is_divisorial(P: UpperToZero) -> Verdict:
    return proved(f"{P.label} = fK[X] & R[X] = f*(R:{P.c.label})[X] (product form over integrally closed R)")


def upper_meets_base_trivially(P: UpperToZero, bounds: Bounds) -> Verdict:
    """P & R = (0): no sampled constant lies in P."""
    from .monoid import monoid_box

    for u in monoid_box(P.ring, min(bounds.degree, 4), bounds.window):
        if upper_member(P, RingPoly.const(u, P.f.xname)):
            return refuted(f"constant {u} lies in {P.label}", u)
    return proved("a nonzero constant is never divisible by a nonconstant f in K[X]")
