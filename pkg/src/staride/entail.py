"""Symbolic inclusion checks for the shipped atom language, and bounded fallbacks.

All lemmas here assume a non-negative monoid whose rules are shipped rule
classes.  The knowledge extracted from an integral constraint ideal is a
list of *occurrence facts*: selectors of which every member u has at least
one variable with positive exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
    is_ring_itself,
    to_fingen_exact,
)
from .lattice import ONE, Monomial, Selector, Var
from .monoid import (
    LinearDegreeRule,
    MonoidSpec,
    NonNegativityRule,
    SupportImplicationRule,
)
from .verdict import Bounds, Verdict, bounded, inconclusive, meet, proved, refuted


@dataclass
class Knowledge:
    in_ring: bool = False
    occurs: list[Selector] = field(default_factory=list)


def _symbolic_ring(ring: MonoidSpec) -> bool:
    return ring.nonnegative and ring.shipped_only


def consequences(ring: MonoidSpec, m: Monomial) -> list[Selector]:
    """Occurrence facts forced on u in S by ``u*m in S``."""
    out: list[Selector] = []
    if not ring.contains(m):
        out.append(Selector.all())
    positive = [v for v, e in m.items() if e > 0]
    for r in ring.rules:
        if isinstance(r, LinearDegreeRule):
            for v in positive:
                if v.name == r.family and v.index is not None and not r.lhs.selects(v):
                    # deg_lhs(u) >= u_v + m_v - deg_lhs(m) >= m_v - deg_lhs(m)
                    if m[v] - m.degree(r.lhs) >= 1:
                        out.append(r.lhs)
        elif isinstance(r, SupportImplicationRule):
            for v in positive:
                if r.triggered_by(v):
                    wit = r.witness_set(v)
                    if any(wit.selects(w) for w in positive):
                        continue
                    out.append(wit)
    return out


def knowledge(I: FracIdeal) -> Knowledge:
    ring = I.ring
    k = Knowledge()
    if isinstance(I, FinGen):
        k.in_ring = I.is_integral
        if ring.nonnegative and all(g.is_nonnegative() for g in I.gens):
            if all(not g.is_one for g in I.gens):
                sel = Selector(members=tuple(v for g in I.gens for v in g.support() if v.index is not None),
                               scalars=tuple(v.name for g in I.gens for v in g.support() if v.index is None))
                k.occurs.append(sel)
        return k
    if isinstance(I, ConstraintIdeal):
        k.in_ring = IN_RING in I.atoms
        for a in I.atoms:
            if isinstance(a, Occurs):
                k.occurs.append(a.sel)
            elif isinstance(a, DegreeAtLeast) and a.bound >= 1 and ring.nonnegative and k.in_ring:
                k.occurs.append(a.sel)
            elif isinstance(a, Shift) and a.target is None and k.in_ring and not a.m.is_one:
                k.occurs.extend(consequences(ring, a.m))
            elif isinstance(a, Shift) and a.m.is_one and a.target is not None:
                sub = knowledge(a.target)
                k.in_ring = k.in_ring or sub.in_ring
                k.occurs.extend(sub.occurs)
        return k
    return k


def _classes(sel: Selector, ring: MonoidSpec) -> list[Selector]:
    if sel.everything:
        return [Selector.of(s) for s in ring.scalars] + [Selector.family(f) for f in ring.families]
    out = [Selector.of(s) for s in sel.scalars]
    out += [Selector.family(f, b) for f, b in sel.families]
    out += [Selector(members=(m,)) for m in sel.members]
    return out


def _forced(cls: Selector, W: Selector, ring: MonoidSpec, depth: int) -> bool:
    """An occurring variable of class ``cls`` in u in S forces an occurrence in W."""
    if cls.issubset(W):
        return True
    if depth == 0:
        return False
    if cls.scalars:
        v: Var | None = Var(cls.scalars[0])
        fam, bound = None, None
    elif cls.members:
        v = cls.members[0]
        fam, bound = v.name, v.index
    else:
        fam, bound = cls.families[0]
        v = None
    for r in ring.rules:
        if isinstance(r, SupportImplicationRule):
            if fam is None and v is not None and r.triggered_by(v):
                wit = r.witness_set(None)
            elif fam is not None and r.family_trigger and r.trigger == fam:
                wit = r.witnesses.resolve(bound)
            else:
                continue
            if all(_forced(c, W, ring, depth - 1) for c in _classes(wit, ring)):
                return True
        elif isinstance(r, LinearDegreeRule) and fam is not None and r.family == fam:
            if not r.lhs.families and all(_forced(c, W, ring, depth - 1) for c in _classes(r.lhs, ring)):
                return True
    return False


def occurs_entailed(k: Knowledge, W: Selector, ring: MonoidSpec) -> bool:
    for sel in k.occurs:
        if sel.issubset(W):
            return True
    if not (k.in_ring and _symbolic_ring(ring)):
        return False
    for sel in k.occurs:
        if all(_forced(c, W, ring, 3) for c in _classes(sel, ring)):
            return True
    return False


def shift_closed(k: Knowledge, ring: MonoidSpec, v: Var, fresh: bool = False) -> bool:
    """Every u in S with knowledge k satisfies u*v in S.

    ``fresh`` treats v as a family member whose index exceeds every index
    occurring in u.
    """
    if not (k.in_ring and _symbolic_ring(ring)):
        return False
    for r in ring.rules:
        if isinstance(r, NonNegativityRule):
            continue
        if isinstance(r, LinearDegreeRule):
            if v.index is not None and v.name == r.family:
                # the new index needs deg_lhs(u) >= 1; only decidable for a fresh index
                if not fresh or r.lhs.families or not occurs_entailed(k, r.lhs, ring):
                    return False
            # otherwise the left-hand degree does not drop
            continue
        if isinstance(r, SupportImplicationRule):
            if r.triggered_by(v):
                wit = r.witness_set(None if fresh else v)
                if not occurs_entailed(k, wit, ring):
                    return False
            continue
        return False
    return True


def _only_persistent_atoms(I: ConstraintIdeal) -> bool:
    """Atoms that survive multiplication by a non-negative monomial staying in S."""
    for a in I.atoms:
        if a == IN_RING or isinstance(a, Occurs):
            continue
        if isinstance(a, DegreeAtLeast) and a.bound <= 1:
            continue
        return False
    return True


def strong_by_occurrence(P: FracIdeal) -> str | None:
    """(R:P) is contained in (P:P) when P = {u in R : some member of F occurs} for whole families F
    whose members all lie in S: two distinct members force every u in (R:P) to be
    non-negative, and multiplying by such u keeps the family occurrence."""
    ring = P.ring
    if not (isinstance(P, ConstraintIdeal) and _symbolic_ring(ring)):
        return None
    occ = [a for a in P.atoms if a != IN_RING]
    if IN_RING not in P.atoms or len(occ) != 1 or not isinstance(occ[0], Occurs):
        return None
    sel = occ[0].sel
    if sel.everything or sel.scalars or sel.members or not sel.families:
        return None
    for fam, b in sel.families:
        if b is not None:
            return None
        # every member fam[n] must lie in S, uniformly in n
        for r in ring.rules:
            if isinstance(r, LinearDegreeRule) and r.family == fam:
                return None
            if isinstance(r, SupportImplicationRule) and r.family_trigger and r.trigger == fam:
                return None
    return "occurrence ideal of whole families of ring elements is strong"


def entails(A: FracIdeal, B: FracIdeal) -> str | None:
    """Name of a lemma proving A contained in B, or None."""
    ring = A.ring
    if is_ring_itself(B):
        return "integral ideal" if knowledge(A).in_ring else None
    if isinstance(A, FinGen) and isinstance(B, Dual) and (B.target is None or B.target is B.inner):
        P = B.inner
        if all(g.is_nonnegative() for g in A.gens) and isinstance(P, ConstraintIdeal) and _only_persistent_atoms(P):
            kp = knowledge(P)
            if kp.in_ring and all(shift_closed(kp, ring, v) for g in A.gens for v in g.support()):
                return "each generator multiplies P into P"
    if isinstance(A, FinGen) and B.exact:
        if all(B.contains(g) for g in A.gens):
            return "generators lie in the target S-module"
        return None
    if ring.is_free:
        a, b = to_fingen_exact(A), to_fingen_exact(B)
        if a is not None and b is not None:
            return "free monoid generator divisibility" if all(b.contains(g) for g in a.gens) else None
    if isinstance(B, ConstraintIdeal):
        k = knowledge(A)
        for atom in B.atoms:
            if not _atom_entailed(A, k, atom):
                return None
        return "atom-wise entailment from occurrence facts"
    if isinstance(A, Adjoin) and isinstance(B, Dual) and is_ring_itself(A.base):
        P = B.inner
        if B.target is not None and B.target is not P:
            return None
        if isinstance(P, ConstraintIdeal) and _only_persistent_atoms(P):
            kp = knowledge(P)
            if shift_closed(kp, ring, A.var):
                return f"{A.var}*P lies in P, so R[{A.var}]*P lies in P"
        return None
    if isinstance(A, Dual) and isinstance(B, Dual) and A.target is None and B.inner is A.inner and B.target is A.inner:
        return strong_by_occurrence(A.inner)
    return None


def _atom_entailed(A: FracIdeal, k: Knowledge, atom) -> bool:
    ring = A.ring
    if atom == IN_RING:
        return k.in_ring
    if isinstance(atom, Occurs):
        return occurs_entailed(k, atom.sel, ring)
    if isinstance(atom, DegreeAtLeast):
        if atom.bound <= 0:
            return k.in_ring and ring.nonnegative
        if atom.bound == 1:
            return k.in_ring and ring.nonnegative and occurs_entailed(k, atom.sel, ring)
        return False
    if isinstance(atom, Shift):
        if atom.target is None:
            if not (k.in_ring and atom.m.is_nonnegative()):
                return False
            return all(shift_closed(k, ring, v) for v in atom.m.support())
        if atom.m.is_one:
            return entails(A, atom.target) is not None
    return False


# ---------------------------------------------------------------------------
# verdict-valued inclusion


CROSS_CHECK_DEGREE = 4


def search_outside(A: FracIdeal, B: FracIdeal, degree: int, window: int) -> Monomial | None:
    for u in A.candidates(degree, window):
        if not B.contains(u):
            return u
    return None


def subset_up_to(A: FracIdeal, B: FracIdeal, bounds: Bounds, search: bool = True) -> Verdict:
    """A contained in B: symbolic lemma if one applies, otherwise an exhaustive box search."""
    lemma = entails(A, B)
    if lemma is not None and not search:
        return proved(lemma)
    if not search:
        u = None
    elif lemma is not None:
        # the lemma settles it; a small box search guards against a wrong lemma
        cheap = all(isinstance(X, (FinGen, ConstraintIdeal)) and X.exact for X in (A, B))
        d = bounds.degree if cheap else min(bounds.degree, CROSS_CHECK_DEGREE)
        u = search_outside(A, B, d, bounds.window)
    else:
        u = search_outside(A, B, bounds.degree, bounds.window)
    if u is not None:
        if lemma is not None:
            raise AssertionError(f"lemma {lemma!r} contradicted by {u}: {A.label} vs {B.label}")
        if A.exact and B.exact:
            return refuted(f"{u} lies in {A.label} but not in {B.label}", u)
        return inconclusive(f"candidate {u} separates the bounded oracles of {A.label} and {B.label}", u)
    if lemma is not None:
        return proved(lemma)
    if not search:
        return inconclusive("no symbolic lemma applies")
    return bounded(
        f"no element of {A.label} outside {B.label} up to degree {bounds.degree}, window {bounds.window}"
    )


def double_inclusion(A: FracIdeal, B: FracIdeal, bounds: Bounds) -> Verdict:
    fwd = subset_up_to(A, B, bounds)
    bwd = subset_up_to(B, A, bounds)
    return meet(fwd, bwd, reason=f"{A.label} ⊆ {B.label}: {fwd.status.value}; {B.label} ⊆ {A.label}: {bwd.status.value}")
