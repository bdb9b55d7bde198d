"""The v- and t-operations, t-ideal certificates and the star predicates.

The t-closure is never built as a set.  Membership ``u in I_t`` is
semi-decidable from below (find a finite F inside I with u in F_v) and is
refuted only when I is known to be a t-ideal.  A t-ideal is certified with
the fresh-multiplier pattern: for a finite F inside I pick an indeterminate
m outside R with m*F inside R; then F_v lies in (R:m) & R, and if that
intersection lies in I we get F_v inside I.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .entail import (
    _symbolic_ring,
    consequences,
    entails,
    knowledge,
    search_outside,
    shift_closed,
    subset_up_to,
)
from .ideals import (
    IN_RING,
    ConstraintIdeal,
    Dual,
    FinGen,
    FracIdeal,
    Shift,
    colon,
    colon_R,
    ideal_product,
    intersect,
    is_ring_itself,
    to_fingen_exact,
    unit_ideal,
)
from .lattice import ONE, Monomial, Var, index_ceiling
from .verdict import (
    EXACT,
    Bounds,
    Exactness,
    InputError,
    Status,
    Verdict,
    bounded,
    inconclusive,
    meet,
    proved,
    refuted,
)

# stands for "an index larger than any occurring one" in uniform lemmas
SYMBOLIC_INDEX = 10**9


def terms_of(f) -> tuple[Monomial, ...]:
    """Monomial support of a ring element (a monomial or a polynomial)."""
    if isinstance(f, Monomial):
        return (f,)
    return tuple(f.monomials())


def element_in(I: FracIdeal, f) -> bool:
    # monomial ideals contain a polynomial iff they contain each of its terms
    return all(I.contains(t) for t in terms_of(f))


# ---------------------------------------------------------------------------
# closures


def v_closure(I: FracIdeal, bounds: Bounds) -> tuple[FracIdeal, Exactness]:
    """I_v = (R:(R:I)) as an oracle, with the exactness of the two colon steps."""
    ring = I.ring
    if I.divisorial_by_construction or is_ring_itself(I):
        return I, EXACT
    if isinstance(I, FinGen) and I.is_principal:
        return I, EXACT
    if ring.is_free and to_fingen_exact(I) is not None:
        C = colon_R(to_fingen_exact(I), bounds)
        V = to_fingen_exact(colon_R(C, bounds))
        return FinGen(ring, V.gens, label=f"({I.label})_v"), EXACT
    rep = divisorial_representation(I, bounds)
    if rep is not None:
        return I, EXACT
    C = colon_R(I, bounds)
    V = Dual(ring, C, bounds, label=f"({I.label})_v")
    ex = EXACT if (C.exact and V.exact) else Exactness.up_to(bounds)
    return V, ex


def principal_meet_ring(ring, x: Monomial) -> FracIdeal:
    """x^-1 R & R."""
    K, _ = intersect(FinGen(ring, [x.inverse()]), unit_ideal(ring))
    return K


def divisorial_representation(I: FracIdeal, bounds: Bounds, degree: int = 2) -> Monomial | None:
    """x outside R with I = x^-1 R & R proved symbolically, searched among small elements of (R:I)."""
    ring = I.ring
    if not (isinstance(I, ConstraintIdeal) and _symbolic_ring(ring)) or not I.exact:
        return None
    if IN_RING not in I.atoms:
        return None
    D = colon_R(I, bounds)
    for x in D.candidates(degree, bounds.window):
        if ring.contains(x):
            continue
        K = principal_meet_ring(ring, x)
        if entails(I, K) and entails(K, I):
            return x
    return None


def fv_member(ring, F: list, u: Monomial, bounds: Bounds) -> Verdict:
    """u in F_v for a finite set F of monomials."""
    FG = FinGen(ring, F)
    if ring.is_free:
        V, _ = v_closure(FG, bounds)
        if V.contains(u):
            return proved(f"{u} lies in ({FG.label})_v (exact generator computation)", FG.gens)
        return refuted(f"{u} is not in ({FG.label})_v (exact generator computation)", FG.gens)
    if FG.is_principal:
        ok = FG.contains(u)
        return (proved if ok else refuted)(f"principal ideal {FG.label} is divisorial", FG.gens)
    C = colon(unit_ideal(ring), FG)
    w = max(bounds.window, u.max_index() + bounds.window)
    for x in C.candidates(bounds.dual_degree, w):
        if not ring.contains(u * x):
            return refuted(f"{x} lies in (R : {FG.label}) but {u}*{x} is not in R", x)
    return bounded(f"{u}*(R : {FG.label}) lies in R up to degree {bounds.dual_degree}", FG.gens)


def t_member(I: FracIdeal, u: Monomial, bounds: Bounds) -> Verdict:
    ring = I.ring
    ring.validate(u)
    if I.contains(u):
        return proved(f"{u} lies in {I.label} (take F = {{{u}}})", (u,))
    F = list(I.generators(min(bounds.degree, 3), bounds.window))
    if F:
        v = fv_member(ring, F, u, bounds)
        if v.holds:
            return Verdict(v.status, f"F = {{{', '.join(map(str, F))}}} inside {I.label} has {u} in F_v", tuple(F))
    t = is_t_ideal(I, bounds)
    if t.proved and I.exact:
        return refuted(f"{I.label} is a t-ideal ({t.reason}) and {u} is not in it", u)
    return inconclusive(f"no finite F inside {I.label} within bounds puts {u} in F_v")


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class TIdealCertificate:
    F: tuple
    m: Monomial
    target: FracIdeal = field(compare=False)

    def to_json(self):
        return {"F": [str(f) for f in self.F], "m": str(self.m), "target": self.target.label}


def check_t_certificate(c: TIdealCertificate, bounds: Bounds | None = None) -> Verdict:
    """Proved iff m is not in R, F lies in the target, m*F lies in R and (R:m) & R lies in the target."""
    if not c.F:
        raise InputError("malformed certificate: empty F")
    I = c.target
    ring = I.ring
    if ring.contains(c.m):
        return refuted(f"witness {c.m} lies in R", c.m)
    for f in c.F:
        if not element_in(I, f):
            return refuted(f"{f} is not in {I.label}", f)
        for t in terms_of(f):
            if not ring.contains(t * c.m):
                return refuted(f"{c.m}*{t} is not in R", t)
    K = ConstraintIdeal(ring, [IN_RING, Shift(c.m)], label=f"(R : {c.m}) & R")
    lemma = entails(K, I)
    if lemma is not None:
        return proved(f"{K.label} inside {I.label}: {lemma}", c)
    if bounds is None:
        return inconclusive(f"no symbolic lemma shows {K.label} inside {I.label}")
    u = search_outside(K, I, bounds.degree, bounds.window)
    if u is not None and I.exact:
        return refuted(f"{u} lies in {K.label} but not in {I.label}", u)
    return inconclusive(f"no symbolic lemma shows {K.label} inside {I.label}; box search found no counterexample")


def fresh_witness(I: FracIdeal, F) -> Monomial:
    fam = I.cert_family
    if fam is None:
        raise InputError(f"{I.label} declares no certificate family")
    used = [t for f in F for t in terms_of(f)]
    # past every index of every family, not just the certificate family
    return Monomial([(Var(fam, index_ceiling(used)), 1)])


def auto_certify_t_ideal(I: FracIdeal, F, bounds: Bounds | None = None) -> tuple[TIdealCertificate | None, Verdict]:
    F = tuple(F)
    if I.cert_family is None:
        return None, inconclusive(f"{I.label} declares no certificate family")
    if not F:
        raise InputError("malformed certificate: empty F")
    c = TIdealCertificate(F, fresh_witness(I, F), I)
    return c, check_t_certificate(c, bounds)


def uniform_t_lemma(I: FracIdeal) -> str | None:
    """Every finite F inside I is certified by a fresh member of the certificate family."""
    fam = I.cert_family
    ring = I.ring
    if fam is None or not isinstance(I, ConstraintIdeal) or not _symbolic_ring(ring) or not I.exact:
        return None
    v = Var(fam, SYMBOLIC_INDEX)
    m = Monomial([(v, 1)])
    if ring.contains(m):
        return None
    if not shift_closed(knowledge(I), ring, v, fresh=True):
        return None
    K = ConstraintIdeal(ring, [IN_RING, Shift(m)])
    if entails(K, I) is None:
        return None
    return f"for every finite F inside {I.label}, a fresh {fam}[N] satisfies {fam}[N]*F in R and (R:{fam}[N]) & R inside {I.label}"


# ---------------------------------------------------------------------------
# predicates


def is_divisorial(I: FracIdeal, bounds: Bounds) -> Verdict:
    ring = I.ring
    if is_ring_itself(I):
        return proved("R is divisorial")
    if isinstance(I, FinGen) and I.is_principal:
        return proved("principal ideals are divisorial")
    if I.divisorial_by_construction:
        return proved(f"{I.label} is a colon (R : J), and (R : J)_v = (R : J)")
    if ring.is_free and to_fingen_exact(I) is not None:
        V, _ = v_closure(I, bounds)
        A = to_fingen_exact(I)
        for g in V.gens:
            if not A.contains(g):
                return refuted(f"{g} lies in ({I.label})_v but not in {I.label}", g)
        return proved(f"({I.label})_v = {I.label} (exact generator computation)")
    x = divisorial_representation(I, bounds)
    if x is not None:
        return proved(f"{I.label} = ({x})^-1 R & R, an intersection of divisorial ideals", x)
    V, ex = v_closure(I, bounds)
    u = search_outside(V, I, bounds.degree, bounds.window)
    if u is not None:
        if ex.exact and I.exact:
            return refuted(f"{u} lies in ({I.label})_v but not in {I.label}", u)
        return inconclusive(f"candidate {u} of the bounded v-closure lies outside {I.label}", u)
    return bounded(f"no element of ({I.label})_v outside {I.label} up to degree {bounds.degree}, window {bounds.window}")


def self_colon(I: FracIdeal, bounds: Bounds) -> FracIdeal:
    """(I : I)."""
    if isinstance(I, FinGen):
        C = colon(I, I)
        ex = to_fingen_exact(C)
        return ex if ex is not None else C
    return Dual(I.ring, I, bounds, target=I)


def is_strong(I: FracIdeal, bounds: Bounds) -> Verdict:
    if is_ring_itself(I):
        return proved("(R : R) = R = (R : R)")
    if isinstance(I, FinGen) and I.ring.is_free:
        A, B = colon_R(I, bounds), self_colon(I, bounds)
    elif isinstance(I, FinGen):
        A, B = colon(unit_ideal(I.ring), I), colon(I, I)
    else:
        A, B = colon_R(I, bounds), Dual(I.ring, I, bounds, target=I)
    note = f"({I.label} : {I.label}) inside (R : {I.label}) holds for integral ideals"
    v = subset_up_to(A, B, bounds)
    return Verdict(v.status, f"{note}; (R : {I.label}) inside ({I.label} : {I.label}): {v.reason}", v.witness)


def is_invertible(I: FracIdeal, bounds: Bounds) -> Verdict:
    """I(R:I) = R.  For monomial ideals this happens exactly for principal ones."""
    if isinstance(I, FinGen):
        if I.is_principal:
            return proved("principal ideals are invertible")
        if I.ring.nonnegative:
            return refuted(
                "1 in I(R:I) needs a generator dividing all others; the generators are S-independent", I.gens
            )
    if is_ring_itself(I) or not I.exact or I.contains(ONE):
        return inconclusive(f"no invertibility criterion applies to {I.label}")
    # the strong-ideal test is costly; only attempt it where it is known to settle quickly
    if is_divisorial(I, bounds).proved and is_strong(I, bounds).proved:
        return refuted("a proper strong ideal is not invertible")
    return inconclusive(f"no invertibility criterion applies to {I.label}")


def is_v_invertible(I: FracIdeal, bounds: Bounds) -> Verdict:
    ring = I.ring
    if is_ring_itself(I) or (isinstance(I, FinGen) and I.is_principal):
        return proved("principal ideals are invertible")
    if ring.is_free and to_fingen_exact(I) is not None:
        A = to_fingen_exact(I)
        C = to_fingen_exact(colon_R(A, bounds))
        J = ideal_product(A, C)
        V, _ = v_closure(J, bounds)
        if V.contains(ONE):
            return proved(f"(I(R:I))_v = R for I = {I.label} (exact generator computation)")
        return refuted(f"(I(R:I))_v is proper for I = {I.label} (exact generator computation)", V.gens)
    d = is_divisorial(I, bounds)
    if d.proved and I.exact and not I.contains(ONE) and is_strong(I, bounds).proved:
        return refuted(f"{I.label} is strong and proper divisorial, so (I(R:I))_v = I_v = I is not R")
    if not isinstance(I, FinGen):
        return inconclusive(f"{I.label} has no generator form; bounded products are not sound here")
    C = colon(unit_ideal(ring), I)
    cg = C.generators(bounds.dual_degree, bounds.window)
    J = FinGen(ring, [a * b for a in I.gens for b in cg])
    K = colon(unit_ideal(ring), J)
    for x in K.candidates(bounds.degree, bounds.window):
        if not ring.contains(x):
            return inconclusive(
                f"{x} lies in (R : I*C) for the bounded part C of (R : {I.label}), but not in R", x
            )
    return bounded(
        f"(R : {I.label}*(R : {I.label})) has no element outside R up to degree {bounds.degree}, window {bounds.window}"
    )


def is_v_finite(I: FracIdeal, bounds: Bounds) -> Verdict:
    ring = I.ring
    if isinstance(I, FinGen):
        return proved(f"{I.label} is finitely generated", I.gens)
    ex = to_fingen_exact(I)
    if ex is not None:
        return proved(f"{I.label} has generators {ex.label}", ex.gens)
    F = list(I.generators(min(bounds.degree, 4), bounds.window))
    if not F:
        return inconclusive(f"no elements of {I.label} within bounds")
    FG = FinGen(ring, F)
    A = colon(unit_ideal(ring), FG)
    B = colon_R(I, bounds)
    u = search_outside(A, B, min(bounds.degree, 4), bounds.wide_window)
    note = ""
    if I.cert_family is not None and uniform_t_lemma(I):
        note = f"; a fresh {I.cert_family}[N] lies in (R : F) for every finite F inside {I.label}"
    if u is not None:
        return inconclusive(f"{u} lies in (R : F) but not in (R : {I.label}) for the bounded F{note}", u)
    return bounded(f"(R : F) = (R : {I.label}) within bounds for F = {FG.label}", FG.gens)


def is_t_invertible(I: FracIdeal, bounds: Bounds) -> Verdict:
    a = is_v_invertible(I, bounds)
    if a.refuted:
        return refuted(f"not v-invertible: {a.reason}", a.witness)
    b = is_v_finite(I, bounds)
    if meet(a, b).status is Status.INCONCLUSIVE:
        # is_v_finite never refutes, so the dual cannot change the outcome
        return inconclusive(f"v-invertible: {a.status.value}; I v-finite: {b.status.value}")
    c = is_v_finite(colon_R(I, bounds), bounds)
    return meet(a, b, c, reason=f"v-invertible: {a.status.value}; I v-finite: {b.status.value}; (R:I) v-finite: {c.status.value}")


def is_t_ideal(I: FracIdeal, bounds: Bounds) -> Verdict:
    d = is_divisorial(I, bounds)
    if d.proved:
        return proved(f"divisorial ideals are t-ideals ({d.reason})")
    lemma = uniform_t_lemma(I)
    if lemma:
        return proved(lemma)
    if isinstance(I, FinGen) or (I.ring.is_free and to_fingen_exact(I) is not None):
        # t and v agree on finitely generated ideals
        return Verdict(d.status, f"finitely generated: t-ideal iff divisorial; {d.reason}", d.witness)
    if d.status is Status.BOUNDED:
        return bounded(f"divisorial within bounds: {d.reason}")
    return inconclusive("neither divisoriality nor a certificate family settles it")


# ---------------------------------------------------------------------------
# suites


@dataclass
class StarPredicateReport:
    predicate: str
    verdict: Verdict
    evidence: list = field(default_factory=list)
    exactness: Exactness = EXACT

    @property
    def violations(self) -> list:
        return [e for e in self.evidence if isinstance(e, dict) and e.get("violation")]

    def to_json(self):
        return {
            "predicate": self.predicate,
            "verdict": self.verdict.to_json(),
            "exactness": str(self.exactness),
            "evidence": [e for e in self.evidence],
        }


def laurent_samples(ring, span: int = 3) -> list[Monomial]:
    from .monoid import laurent_box

    return laurent_box(ring.window_vars(1), span)


def _same_on(A: FracIdeal, B: FracIdeal, box) -> Monomial | None:
    for u in box:
        if A.contains(u) != B.contains(u):
            return u
    return None


def _subset_on(A: FracIdeal, B: FracIdeal, box) -> Monomial | None:
    for u in box:
        if A.contains(u) and not B.contains(u):
            return u
    return None


def star_axiom_suite(samples: list[FracIdeal], bounds: Bounds, box=None, scale_by: Monomial | None = None) -> StarPredicateReport:
    """Axioms of a star operation for v, checked membership-wise on a box of monomials."""
    evidence: list = []
    exact = EXACT
    worst: list[Verdict] = []

    def violation(name, ideal, u):
        evidence.append({"violation": True, "axiom": name, "ideal": ideal.label, "monomial": str(u)})

    closures = {}
    for I in samples:
        ring = I.ring
        B = box if box is not None else laurent_samples(ring)
        a = scale_by or Monomial([(Var(s), 1) for s in ring.scalars[:2]])
        V, ex = v_closure(I, bounds)
        closures[id(I)] = V
        exact = exact & ex
        R = unit_ideal(ring)
        RV, _ = v_closure(R, bounds)
        if (u := _same_on(RV, R, B)) is not None:
            violation("R_v = R", R, u)
        # (aI)_v = a I_v
        aI = I.scaled(a) if isinstance(I, FinGen) else ConstraintIdeal(ring, [Shift(a.inverse(), I)], label=f"{a}*{I.label}")
        aIv, _ = v_closure(aI, bounds)
        aV = ConstraintIdeal(ring, [Shift(a.inverse(), V)], label=f"{a}*({I.label})_v")
        if (u := _same_on(aIv, aV, B)) is not None:
            violation("(aI)_v = a I_v", I, u)
        if (u := _subset_on(I, V, B)) is not None:
            violation("I inside I_v", I, u)
        VV, _ = v_closure(V, bounds)
        if (u := _same_on(VV, V, B)) is not None:
            violation("(I_v)_v = I_v", I, u)
        # t below v: certified t-members are v-members
        for u in [x for x in B if x.is_nonnegative() or I.contains(x)][: bounds.samples]:
            t = t_member(I, u, bounds)
            if t.holds and not V.contains(u):
                violation("t below v", I, u)
    # monotonicity over comparable finitely generated pairs
    fg = [I for I in samples if isinstance(I, FinGen)]
    for I, J in itertools.permutations(fg, 2):
        if I.ring != J.ring or not all(J.contains(g) for g in I.gens):
            continue
        VI, VJ = closures[id(I)], closures[id(J)]
        if isinstance(VI, FinGen) and VJ.exact:
            bad = next((g for g in VI.gens if not VJ.contains(g)), None)
        else:
            bad = _subset_on(VI, VJ, box if box is not None else laurent_samples(I.ring))
        if bad is not None:
            violation("I inside J implies I_v inside J_v", I, bad)
    if evidence:
        v = refuted(f"{len(evidence)} axiom violations", evidence[0])
    elif exact.exact:
        v = proved(f"axioms hold on {len(samples)} ideals over the sample box")
    else:
        v = bounded(f"axioms hold on {len(samples)} ideals over the sample box (bounded closures involved)")
    return StarPredicateReport("star axioms (v)", v, evidence, exact)


CLASSES = ("invertible", "t-invertible t-ideal", "v-finite divisorial", "divisorial", "t-ideal")


def classify_chain(I: FracIdeal, bounds: Bounds) -> dict[str, Verdict]:
    inv = is_invertible(I, bounds)
    ti = meet(is_t_invertible(I, bounds), is_t_ideal(I, bounds))
    div = is_divisorial(I, bounds)
    vf = meet(is_v_finite(I, bounds), div)
    t = is_t_ideal(I, bounds)
    return dict(zip(CLASSES, (inv, ti, vf, div, t)))


def chain_inclusion_suite(samples: list[FracIdeal], bounds: Bounds) -> StarPredicateReport:
    """Inv inside T inside f_v inside F_v inside F_t: a class that holds never precedes a refuted one."""
    evidence: list = []
    for I in samples:
        cls = classify_chain(I, bounds)
        row = {"ideal": I.label, **{k: v.status.value for k, v in cls.items()}}
        for i, j in itertools.combinations(range(len(CLASSES)), 2):
            if cls[CLASSES[i]].holds and cls[CLASSES[j]].refuted:
                row["violation"] = True
                row["detail"] = f"{CLASSES[i]} holds but {CLASSES[j]} is refuted"
                break
        evidence.append(row)
    bad = [e for e in evidence if e.get("violation")]
    v = refuted(f"{len(bad)} chain violations", bad[0]) if bad else proved(f"chain consistent on {len(samples)} ideals")
    return StarPredicateReport("inclusion chain", v, evidence)


def sample_finite_subsets(I: FracIdeal, count: int, bounds: Bounds, size: int = 3) -> list[tuple[Monomial, ...]]:
    """Deterministic pseudo-random finite subsets of I's bounded elements."""
    pool = list(I.candidates(min(bounds.degree, 4), bounds.window))
    rng = random.Random(bounds.seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, min(size, len(pool)))
        out.append(tuple(sorted(rng.sample(pool, k), key=Monomial.sort_key)))
    return out
