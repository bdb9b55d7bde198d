"""Fractional monomial ideals of R = k[S].

Every ideal is a set E of Laurent monomials with E*S contained in E, given
either by generators (:class:`FinGen`) or by a membership oracle built from
atoms (:class:`ConstraintIdeal`, :class:`Dual`, :class:`Adjoin`).  Oracles
are exact except for :class:`Dual` over a non-finitely-generated ideal,
which tests only the multipliers found inside a box and reports itself as
inexact.

Bounded enumeration is parametrised by monoid elements: an ideal's
*candidates* at ``(degree, window)`` are the members obtained from an anchor
shift applied to the elements of S of degree <= ``degree`` on family indices
1..``window``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .lattice import ONE, Monomial, Selector, Var
from .monoid import MonoidSpec, monoid_box
from .verdict import (
    EXACT,
    Bounds,
    Exactness,
    InputError,
    RepresentationError,
)


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class Shift:
    """``u*m`` lies in ``target`` (the monoid itself when target is None)."""

    m: Monomial
    target: "FracIdeal | None" = None

    def holds(self, ring: MonoidSpec, u: Monomial) -> bool:
        v = u * self.m
        return ring.contains(v) if self.target is None else self.target.contains(v)

    def __str__(self):
        tgt = "R" if self.target is None else self.target.label
        return f"u*{self.m} in {tgt}"


@dataclass(frozen=True)
class DegreeAtLeast:
    sel: Selector
    bound: int

    def holds(self, ring, u):
        return u.degree(self.sel) >= self.bound

    def __str__(self):
        return f"deg({self.sel}) >= {self.bound}"


@dataclass(frozen=True)
class Occurs:
    sel: Selector

    def holds(self, ring, u):
        return self.sel.occurs_in(u)

    def __str__(self):
        return f"exists {self.sel}"


IN_RING = Shift(ONE)


# ---------------------------------------------------------------------------
# ideals


class FracIdeal:
    ring: MonoidSpec
    label: str
    cert_family: str | None = None

    def __init__(self):
        self._cand_cache: dict = {}
        self._gen_cache: dict = {}

    # subclasses implement contains / _raw_candidates / exact

    def contains(self, u: Monomial) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    def __contains__(self, u):
        return self.contains(u)

    @property
    def exact(self) -> bool:
        return True

    @property
    def exactness(self) -> Exactness:
        return EXACT if self.exact else Exactness(False)

    @property
    def divisorial_by_construction(self) -> bool:
        """True for colon ideals (R:J), which always satisfy (R:J)_v = (R:J)."""
        return False

    @property
    def is_integral(self) -> bool:
        """Syntactically contained in R."""
        return False

    def _raw_candidates(self, degree: int, window: int) -> Iterable[Monomial]:  # pragma: no cover
        raise NotImplementedError

    def candidates(self, degree: int, window: int) -> tuple[Monomial, ...]:
        """Members reachable from the anchor parametrisation, sorted."""
        key = (degree, window)
        got = self._cand_cache.get(key)
        if got is None:
            seen = set()
            out = []
            for u in self._raw_candidates(degree, window):
                if u not in seen:
                    seen.add(u)
                    if self.contains(u):
                        out.append(u)
            out.sort(key=Monomial.sort_key)
            got = tuple(out)
            self._cand_cache[key] = got
        return got

    def generators(self, degree: int, window: int) -> tuple[Monomial, ...]:
        """Candidates that are not S-multiples of another candidate (bounded generator extraction)."""
        key = (degree, window)
        got = self._gen_cache.get(key)
        if got is None:
            got = tuple(sieve(self.ring, self.candidates(degree, window)))
            self._gen_cache[key] = got
        return got

    def an_element(self) -> Monomial:
        for d, w in ((1, 1), (2, 1), (2, 2), (3, 2), (4, 3), (6, 3)):
            c = self.candidates(d, w)
            if c:
                return c[0]
        raise InputError(f"no element of {self.label} found; is it the zero ideal?")

    def __str__(self):
        return self.label


def sieve(ring: MonoidSpec, gens: Iterable[Monomial]) -> list[Monomial]:
    """Drop generators lying in another generator's S-orbit (first occurrence wins)."""
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=Monomial.sort_key):
        if any(ring.contains(g / h) for h in kept):
            continue
        # a later, smaller-orbit element can absorb an earlier one only in Laurent monoids
        kept = [h for h in kept if not ring.contains(h / g)]
        kept.append(g)
    kept.sort(key=Monomial.sort_key)
    return kept


class FinGen(FracIdeal):
    """The S-module generated by finitely many Laurent monomials."""

    def __init__(self, ring: MonoidSpec, gens: Iterable[Monomial], label: str | None = None):
        super().__init__()
        gens = list(gens)
        if not gens:
            raise InputError("empty generator list (the zero ideal is not representable)")
        for g in gens:
            ring.validate(g)
        self.ring = ring
        self.gens: tuple[Monomial, ...] = tuple(sieve(ring, gens))
        self.label = label or f"({', '.join(map(str, self.gens))})"

    def contains(self, u: Monomial) -> bool:
        return any(self.ring.contains(u / g) for g in self.gens)

    @property
    def is_integral(self) -> bool:
        return all(self.ring.contains(g) for g in self.gens)

    @property
    def is_unit(self) -> bool:
        return self.gens == (ONE,)

    @property
    def is_principal(self) -> bool:
        return len(self.gens) == 1

    def _raw_candidates(self, degree, window):
        box = monoid_box(self.ring, degree, window)
        for g in self.gens:
            for s in box:
                yield g * s

    def an_element(self):
        return self.gens[0]

    def scaled(self, a: Monomial) -> "FinGen":
        return FinGen(self.ring, [g * a for g in self.gens])

    def __eq__(self, other):
        return isinstance(other, FinGen) and other.ring == self.ring and other.gens == self.gens

    def __hash__(self):
        return hash(("FinGen", self.gens))


def unit_ideal(ring: MonoidSpec) -> FinGen:
    return FinGen(ring, [ONE], label="R")


def is_ring_itself(I: FracIdeal) -> bool:
    if isinstance(I, FinGen):
        return I.is_unit
    if isinstance(I, ConstraintIdeal):
        return I.atoms == (IN_RING,)
    return False


class ConstraintIdeal(FracIdeal):
    """Conjunction of atoms; must contain a :class:`Shift` atom as enumeration anchor."""

    def __init__(self, ring: MonoidSpec, atoms: Iterable, label: str | None = None,
                 cert_family: str | None = None, colon_of: FracIdeal | None = None):
        super().__init__()
        self.ring = ring
        self.atoms = tuple(atoms)
        if not any(isinstance(a, Shift) for a in self.atoms):
            raise InputError("constraint ideal needs an anchoring shift atom (write '& ring' or a colon)")
        if cert_family is not None and cert_family not in ring.families:
            raise InputError(f"certificate family {cert_family!r} is not a declared family")
        self.cert_family = cert_family
        self.colon_of = colon_of
        self.label = label or "{" + "; ".join(map(str, self.atoms)) + "}"

    def contains(self, u):
        ring = self.ring
        return all(a.holds(ring, u) for a in self.atoms)

    @property
    def exact(self):
        return all(a.target.exact for a in self.atoms if isinstance(a, Shift) and a.target is not None)

    @property
    def divisorial_by_construction(self):
        return self.colon_of is not None

    @property
    def is_integral(self):
        return IN_RING in self.atoms

    def _anchor(self) -> Shift:
        for a in self.atoms:
            if isinstance(a, Shift) and a.target is None:
                return a
        return next(a for a in self.atoms if isinstance(a, Shift))

    def _raw_candidates(self, degree, window):
        a = self._anchor()
        base = monoid_box(self.ring, degree, window) if a.target is None else a.target.candidates(degree, window)
        inv = a.m.inverse()
        for c in base:
            yield c * inv

    def with_label(self, label: str, cert_family: str | None = None) -> "ConstraintIdeal":
        return ConstraintIdeal(self.ring, self.atoms, label, cert_family or self.cert_family, self.colon_of)


class Dual(FracIdeal):
    """``{u : u*g in target for all g in inner}`` with target R by default.

    Over a non-finitely-generated ``inner`` the multipliers are the bounded
    generators of ``inner`` of degree ``bounds.dual_degree`` on a window
    reaching ``bounds.window`` indices past the tested element, so fresh
    family members are always among them.
    """

    def __init__(self, ring: MonoidSpec, inner: FracIdeal, bounds: Bounds,
                 target: FracIdeal | None = None, label: str | None = None):
        super().__init__()
        self.ring = ring
        self.inner = inner
        self.target = target
        self.bounds = bounds
        tgt = "R" if target is None else target.label
        self.label = label or f"({tgt} : {inner.label})"

    def multipliers(self, u: Monomial) -> tuple[Monomial, ...]:
        if isinstance(self.inner, FinGen):
            return self.inner.gens
        w = u.max_index() + self.bounds.window
        return self.inner.generators(self.bounds.dual_degree, max(w, self.bounds.window))

    def contains(self, u):
        ring = self.ring
        tgt = self.target
        for g in self.multipliers(u):
            v = u * g
            if not (ring.contains(v) if tgt is None else tgt.contains(v)):
                return False
        return True

    @property
    def exact(self):
        return isinstance(self.inner, FinGen) and (self.target is None or self.target.exact)

    @property
    def divisorial_by_construction(self):
        return self.target is None

    def _raw_candidates(self, degree, window):
        g = self.inner.an_element()
        base = monoid_box(self.ring, degree, window) if self.target is None else self.target.candidates(degree, window)
        inv = g.inverse()
        for c in base:
            yield c * inv


class Adjoin(FracIdeal):
    """``base[x]`` for an integral base ideal and a scalar indeterminate x: ``{x^k b}``."""

    def __init__(self, ring: MonoidSpec, base: FracIdeal, var: Var, label: str | None = None):
        super().__init__()
        if not ring.nonnegative:
            raise InputError("adjoin needs a non-negative monoid")
        self.ring = ring
        self.base = base
        self.var = var
        self.x = Monomial([(var, 1)])
        self.label = label or f"{base.label}[{var}]"

    def contains(self, u):
        top = u[self.var]
        for k in range(0, max(top, 0) + 1):
            if self.base.contains(u / self.x ** k):
                return True
        return False

    @property
    def exact(self):
        return self.base.exact

    def _raw_candidates(self, degree, window):
        for c in self.base.candidates(degree, window):
            for k in range(degree + 1):
                yield c * self.x ** k


# ---------------------------------------------------------------------------
# free-monoid exact layer


def lcm(a: Monomial, b: Monomial) -> Monomial:
    vs = a.support() | b.support()
    return Monomial((v, max(a[v], b[v])) for v in vs)


def gcd(gens: Iterable[Monomial]) -> Monomial:
    gens = list(gens)
    vs = set().union(*(g.support() for g in gens))
    return Monomial((v, min(g[v] for g in gens)) for v in vs)


def _intersect_fingen(A: FinGen, B: FinGen) -> FinGen:
    return FinGen(A.ring, [lcm(a, b) for a in A.gens for b in B.gens])


def to_fingen_exact(I: FracIdeal) -> FinGen | None:
    """Exact generator form of an ideal over a free monoid, or None when unavailable."""
    ring = I.ring
    if not ring.is_free:
        return None
    if isinstance(I, FinGen):
        return I
    if isinstance(I, ConstraintIdeal):
        in_ring = IN_RING in I.atoms
        parts: list[FinGen] = []
        for a in I.atoms:
            if isinstance(a, Shift):
                if a.target is None:
                    parts.append(FinGen(ring, [a.m.inverse()]))
                else:
                    T = to_fingen_exact(a.target)
                    if T is None:
                        return None
                    parts.append(T.scaled(a.m.inverse()))
            elif isinstance(a, Occurs) and in_ring:
                if a.sel.everything or a.sel.families:
                    return None
                vs = [Monomial([(Var(s), 1)]) for s in a.sel.scalars] + [Monomial([(m, 1)]) for m in a.sel.members]
                if not vs:
                    return None
                parts.append(FinGen(ring, vs))
            elif isinstance(a, DegreeAtLeast) and in_ring:
                if a.bound <= 0:
                    continue
                if a.sel.everything or a.sel.families:
                    return None
                vs = tuple(sorted({Var(s) for s in a.sel.scalars} | set(a.sel.members)))
                from .monoid import exponent_tuples
                mons = [Monomial(zip(vs, t)) for t in exponent_tuples(len(vs), a.bound)]
                parts.append(FinGen(ring, [m for m in mons if m.total_degree() == a.bound]))
            else:
                return None
        out = parts[0]
        for p in parts[1:]:
            out = _intersect_fingen(out, p)
        return out
    if isinstance(I, Dual):
        A = to_fingen_exact(I.inner)
        if A is None:
            return None
        T = unit_ideal(ring) if I.target is None else to_fingen_exact(I.target)
        if T is None:
            return None
        out = None
        for a in A.gens:
            part = T.scaled(a.inverse())
            out = part if out is None else _intersect_fingen(out, part)
        return out
    return None


# ---------------------------------------------------------------------------
# arithmetic


def ideal_member(I: FracIdeal, u: Monomial) -> bool:
    I.ring.validate(u)
    return I.contains(u)


def _need_fingen(*ideals):
    for I in ideals:
        if not isinstance(I, FinGen):
            raise RepresentationError(
                f"{I.label}: sums and products need generator form; use colon identities instead"
            )


def ideal_sum(I: FracIdeal, J: FracIdeal) -> FinGen:
    _need_fingen(I, J)
    return FinGen(I.ring, I.gens + J.gens)


def ideal_product(I: FracIdeal, J: FracIdeal) -> FinGen:
    _need_fingen(I, J)
    return FinGen(I.ring, [a * b for a in I.gens for b in J.gens])


def scale(I: FracIdeal, a: Monomial) -> FracIdeal:
    """The ideal aI."""
    if isinstance(I, FinGen):
        return I.scaled(a)
    return ConstraintIdeal(I.ring, [Shift(a.inverse(), I)], label=f"{a}*{I.label}",
                           colon_of=I if I.divisorial_by_construction else None)


def colon(J: FracIdeal, I: FracIdeal) -> ConstraintIdeal:
    """(J : I) for finitely generated I, as an exact oracle."""
    if not isinstance(I, FinGen):
        raise RepresentationError("colon() needs a finitely generated divisor; use colon_R_by_oracle")
    target = None if is_ring_itself(J) else J
    tlabel = "R" if target is None else J.label
    return ConstraintIdeal(I.ring, [Shift(g, target) for g in I.gens], label=f"({tlabel} : {I.label})",
                           colon_of=I if target is None else None)


def colon_R(I: FracIdeal, bounds: Bounds) -> FracIdeal:
    # one colon object per (ideal, bounds) so its candidate cache is shared
    cache = I.__dict__.setdefault("_colon_R", {})
    got = cache.get(bounds)
    if got is None:
        got = cache[bounds] = _colon_R(I, bounds)
    return got


def _colon_R(I: FracIdeal, bounds: Bounds) -> FracIdeal:
    if is_ring_itself(I):
        return unit_ideal(I.ring)
    if isinstance(I, FinGen):
        C = colon(unit_ideal(I.ring), I)
    else:
        C = Dual(I.ring, I, bounds)
    exact = to_fingen_exact(C)
    return exact if exact is not None else C


def colon_R_by_oracle(I: FracIdeal, bounds: Bounds) -> tuple[FracIdeal, Exactness]:
    C = colon_R(I, bounds)
    return C, (EXACT if C.exact else Exactness.up_to(bounds))


def intersect(I: FracIdeal, J: FracIdeal, bounds: Bounds | None = None) -> tuple[FracIdeal, Exactness]:
    """Intersection as an exact membership oracle (generator form over a free monoid)."""
    if I.ring.is_free:
        A, B = to_fingen_exact(I), to_fingen_exact(J)
        if A is not None and B is not None:
            return _intersect_fingen(A, B), EXACT
    atoms = []
    for K in (I, J):
        if isinstance(K, ConstraintIdeal) and K.exact and all(
            not isinstance(a, Shift) or a.target is None for a in K.atoms
        ):
            atoms.extend(a for a in K.atoms if a not in atoms)
        elif isinstance(K, FinGen) and K.is_principal:
            # gS = {u : u*g^-1 in S}
            a = Shift(K.gens[0].inverse())
            if a not in atoms:
                atoms.append(a)
        else:
            atoms.append(Shift(ONE, None if is_ring_itself(K) else K))
    X = ConstraintIdeal(I.ring, atoms, label=f"{I.label} & {J.label}")
    return X, (EXACT if X.exact else Exactness.up_to(bounds or Bounds()))


def extract_generators(I: FracIdeal, bounds: Bounds) -> tuple[tuple[Monomial, ...], Exactness]:
    if isinstance(I, FinGen):
        return I.gens, EXACT
    ex = to_fingen_exact(I)
    if ex is not None:
        return ex.gens, EXACT
    return I.generators(bounds.degree, bounds.window), Exactness.up_to(bounds)
