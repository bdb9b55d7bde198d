"""Primality, maximal divisorial and t-maximal classification, and the implication suite.

t-maximality is only refuted by a witness (a proper t-ideal strictly above
P) or, over a free monoid, proved through v-coherence.  Maximal
divisoriality is proved through v-invertibility, or checked on monomial
enlargements P + mR within bounds; the latter never tests non-monomial
enlargements and says so in its reason.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .entail import _symbolic_ring, entails, knowledge, search_outside, subset_up_to
from .ideals import (
    IN_RING,
    ConstraintIdeal,
    DegreeAtLeast,
    Dual,
    FinGen,
    FracIdeal,
    Occurs,
    colon_R,
    is_ring_itself,
    to_fingen_exact,
    unit_ideal,
)
from .lattice import ONE, Monomial
from .monoid import monoid_box
from .polyext import (
    RingPoly,
    UpperToZero,
    upper_inside,
    upper_is_divisorial,
    upper_is_v_finite,
    upper_member,
    upperdiv_check,
)
from .star import (
    StarPredicateReport,
    auto_certify_t_ideal,
    element_in,
    is_divisorial,
    is_t_ideal,
    is_t_invertible,
    is_v_finite,
    is_v_invertible,
    principal_meet_ring,
    sample_finite_subsets,
    terms_of,
    uniform_t_lemma,
)
from .verdict import (
    Bounds,
    PreconditionError,
    Status,
    Verdict,
    bounded,
    inconclusive,
    meet,
    proved,
    refuted,
)

MONOMIAL_CAVEAT = "only monomial enlargements P + mR were tested"


def is_prime(I: FracIdeal, bounds: Bounds) -> Verdict:
    ring = I.ring
    if isinstance(I, UpperToZero):
        if I.f.degree == 1:
            return proved("degree one in X with coprime content: irreducible in K[X], so fK[X] & R[X] is prime")
        return inconclusive("irreducibility of f in K[X] is not decided")
    if isinstance(I, FinGen) and not I.is_integral:
        raise PreconditionError(f"{I.label} is not integral")
    if I.exact and I.contains(ONE):
        return refuted(f"{I.label} contains 1", ONE)
    if isinstance(I, ConstraintIdeal) and _symbolic_ring(ring) and IN_RING in I.atoms:
        rest = [a for a in I.atoms if a != IN_RING]
        if len(rest) == 1 and (isinstance(rest[0], Occurs) or (isinstance(rest[0], DegreeAtLeast) and rest[0].bound == 1)):
            return proved(
                f"the monomials of R outside {I.label} are those where no selected variable occurs; "
                "that set is closed under products"
            )
    if ring.is_free and (A := to_fingen_exact(I)) is not None:
        for g in A.gens:
            if g.total_degree() >= 2:
                v = min(g.support())
                a = Monomial([(v, 1)])
                return refuted(f"{a}*{g / a} = {g} lies in {I.label}, neither factor does", (a, g / a))
        return proved(f"{I.label} is generated by variables")
    members = [u for u in monoid_box(ring, min(bounds.degree, 4), bounds.window) if not I.contains(u)]
    for u, v in itertools.combinations_with_replacement(members, 2):
        if I.contains(u * v):
            if I.exact:
                return refuted(f"{u}*{v} lies in {I.label}, neither factor does", (u, v))
            return inconclusive(f"{u}*{v} separates the bounded oracle of {I.label}", (u, v))
    return bounded(f"no pair outside {I.label} with product inside, degree {min(bounds.degree, 4)}")


@dataclass(frozen=True)
class MaxDivRepresentation:
    x: Monomial
    verdict: Verdict

    def to_json(self):
        return {"x": str(self.x), "verdict": self.verdict.to_json()}


def member_of_colon(x: Monomial, C: FracIdeal) -> bool:
    """x provably lies in C (exactly, or by a lemma for bounded duals)."""
    if C.exact:
        return C.contains(x)
    return entails(FinGen(C.ring, [x]), C) is not None


def find_maxdiv_representation(M: FracIdeal, bounds: Bounds, degree: int = 2) -> MaxDivRepresentation | None:
    """x outside R with M = x^-1 R & R, or None."""
    ring = M.ring
    if not is_divisorial(M, bounds).holds:
        return None
    C = colon_R(M, bounds)
    for x in C.candidates(degree, bounds.window):
        if ring.contains(x) or not C.contains(x):
            continue
        K = principal_meet_ring(ring, x)
        fwd = subset_up_to(M, K, bounds)
        if not fwd.holds:
            continue
        bwd = subset_up_to(K, M, bounds)
        if bwd.holds:
            v = meet(fwd, bwd, reason=f"{M.label} = ({x})^-1 R & R: {fwd.status.value} / {bwd.status.value}")
            return MaxDivRepresentation(x, v)
    return None


def _require_prime_divisorial(P, bounds) -> None:
    p = is_prime(P, bounds)
    if p.refuted:
        raise PreconditionError(f"{P.label} is not prime: {p.reason}")
    d = upper_is_divisorial(P) if isinstance(P, UpperToZero) else is_divisorial(P, bounds)
    if not d.holds:
        raise PreconditionError(f"{P.label} is not known to be divisorial: {d.reason}")


def check_prop_max_converse(P: FracIdeal, x: Monomial, bounds: Bounds) -> Verdict:
    """(R:P) = R + xR, which makes the divisorial prime P maximal divisorial."""
    _require_prime_divisorial(P, bounds)
    ring = P.ring
    A = colon_R(P, bounds)
    B = FinGen(ring, [ONE, x], label=f"R + {x}R")
    if not member_of_colon(x, A):
        return refuted(f"{x} is not in (R : {P.label})", x)
    u = search_outside(A, B, bounds.degree, bounds.window)
    if u is not None:
        if member_of_colon(u, A):
            return refuted(f"{u} lies in (R : {P.label}) but not in {B.label}", u)
        return inconclusive(f"candidate {u} of the bounded (R : {P.label}) lies outside {B.label}", u)
    lemma = entails(A, B)
    if lemma:
        return proved(f"(R : {P.label}) = {B.label}; maximal divisorial by the converse criterion")
    return bounded(f"(R : {P.label}) = {B.label} up to degree {bounds.degree}; maximal divisorial by the converse criterion")


def is_maximal_divisorial(P, bounds: Bounds, m_degree: int | None = None) -> Verdict:
    if isinstance(P, UpperToZero):
        return upperdiv_check(P, bounds).verdict
    _require_prime_divisorial(P, bounds)
    ring = P.ring
    vinv = is_v_invertible(P, bounds)
    if vinv.holds:
        return Verdict(vinv.status, f"v-invertible divisorial prime ({vinv.reason})")
    m_degree = m_degree if m_degree is not None else max(1, bounds.degree - 2)
    C = colon_R(P, bounds)
    E = [x for x in C.candidates(bounds.degree, bounds.window) if not ring.contains(x)]
    ms = [m for m in monoid_box(ring, m_degree, bounds.window) if not P.contains(m)]
    for m in ms:
        for x in E:
            if ring.contains(x * m):
                # x lies in (R : P + mR) but not in R, so (P + mR)_v is proper and strictly above P
                if member_of_colon(x, C) and P.exact:
                    return refuted(f"P < (P + {m}R)_v < R: {x} lies in (R : P + {m}R) outside R", (m, x))
                return inconclusive(f"candidate enlargement by {m} ({x} in the bounded colon)", (m, x))
    return bounded(
        f"(P + mR)_v = R for all {len(ms)} monomials m in R outside P of degree <= {m_degree} "
        f"(colon elements up to degree {bounds.degree}); {MONOMIAL_CAVEAT}"
    )


@dataclass
class NotTMaximalWitness:
    W: FracIdeal
    u: object
    samples: int = 20

    def to_json(self):
        return {"W": self.W.label, "u": str(self.u), "cert_family": self.W.cert_family}


def _contains(P, g) -> bool:
    if isinstance(P, UpperToZero):
        return upper_member(P, g)
    return element_in(P, g)


def _sample_subsets(P, W: FracIdeal, count: int, bounds: Bounds) -> list[tuple]:
    subs = sample_finite_subsets(W, count, bounds)
    if isinstance(P, UpperToZero):
        # mix in polynomials from P itself
        polys = P.sample(bounds, degree=2, xpow=1)
        subs = [s + (polys[i % len(polys)],) for i, s in enumerate(subs)]
    return subs


def refute_t_maximal(P, wit: NotTMaximalWitness, bounds: Bounds) -> Verdict:
    """Proved that P is not t-maximal when the witness ideal checks out; Refuted naming the failing sub-check."""
    W = wit.W
    if not element_in(W, wit.u):
        return refuted(f"strictness: {wit.u} is not in {W.label}", wit.u)
    if _contains(P, wit.u):
        return refuted(f"strictness: {wit.u} lies in {P.label}", wit.u)
    if not W.exact or W.contains(ONE):
        return refuted(f"properness: 1 lies in {W.label} (or its oracle is inexact)", ONE)
    inc = upper_inside(P, W, bounds) if isinstance(P, UpperToZero) else subset_up_to(P, W, bounds)
    if not inc.holds:
        return refuted(f"{P.label} inside {W.label} fails: {inc.reason}", inc.witness)
    lemma = uniform_t_lemma(W)
    if lemma is None:
        return refuted(f"no uniform certificate argument makes {W.label} a t-ideal")
    certs = []
    for F in _sample_subsets(P, W, wit.samples, bounds):
        c, v = auto_certify_t_ideal(W, F)
        if not v.proved:
            return refuted(f"certificate for F = {[str(f) for f in F]} failed: {v.reason}", F)
        certs.append(c)
    return meet(
        proved(f"{wit.u} lies in {W.label} but not in {P.label}; 1 is not in {W.label}"),
        inc,
        proved(lemma),
        reason=(
            f"{W.label} is a proper t-ideal strictly containing {P.label} "
            f"({len(certs)} fresh-member certificates checked)"
        ),
    ).with_evidence(*certs[:3])


def t_maximal(P, bounds: Bounds, witness: NotTMaximalWitness | None = None) -> Verdict:
    if witness is not None:
        r = refute_t_maximal(P, witness, bounds)
        if r.holds:
            return Verdict(Status.REFUTED, f"not t-maximal: {r.reason}", witness, r.evidence)
    if not isinstance(P, UpperToZero) and P.ring.is_free:
        m = is_maximal_divisorial(P, bounds)
        if m.proved:
            return proved("R is Noetherian, hence v-coherent; a maximal divisorial ideal is t-maximal")
    return inconclusive("t-maximality is only refuted by witness or proved over Noetherian fixtures")


# ---------------------------------------------------------------------------
# implication suite


@dataclass
class Fixture:
    name: str
    ideal: object
    expect: dict = field(default_factory=dict)
    witness: NotTMaximalWitness | None = None


PREDICATES = (
    "prime",
    "divisorial",
    "v-invertible",
    "v-finite",
    "maximal divisorial",
    "t-invertible",
    "t-ideal",
    "t-maximal",
)


def evaluate(fx: Fixture, bounds: Bounds) -> dict[str, Verdict]:
    I = fx.ideal
    out: dict[str, Verdict] = {}
    out["prime"] = is_prime(I, bounds)
    if isinstance(I, UpperToZero):
        rep = upperdiv_check(I, bounds)
        out["divisorial"] = upper_is_divisorial(I)
        out["v-invertible"] = _upper_vinv(I, bounds)
        out["v-finite"] = upper_is_v_finite(I, bounds)
        out["maximal divisorial"] = rep.verdict
        out["t-invertible"] = meet(out["v-invertible"], out["v-finite"])
        out["t-ideal"] = proved("divisorial ideals are t-ideals")
    else:
        out["divisorial"] = is_divisorial(I, bounds)
        out["v-invertible"] = is_v_invertible(I, bounds)
        out["v-finite"] = is_v_finite(I, bounds)
        if out["prime"].refuted or out["divisorial"].refuted:
            out["maximal divisorial"] = refuted(f"{I.label} is not a divisorial prime")
        elif not out["divisorial"].holds:
            out["maximal divisorial"] = inconclusive("divisoriality not established")
        else:
            out["maximal divisorial"] = is_maximal_divisorial(I, bounds)
        out["t-invertible"] = is_t_invertible(I, bounds)
        out["t-ideal"] = is_t_ideal(I, bounds)
    if out["prime"].refuted:
        out["t-maximal"] = refuted(f"{I.label} is not prime")
    elif out["t-ideal"].refuted:
        out["t-maximal"] = refuted(f"{I.label} is not a t-ideal: {out['t-ideal'].reason}", out["t-ideal"].witness)
    else:
        try:
            out["t-maximal"] = t_maximal(I, bounds, fx.witness)
        except PreconditionError as e:
            out["t-maximal"] = inconclusive(str(e))
    return out


def _upper_vinv(P: UpperToZero, bounds: Bounds) -> Verdict:
    v = is_v_invertible(P.c, bounds)
    return Verdict(v.status, f"v-invertible iff {P.c.label} is: {v.reason}", v.witness)


def implication_checks(ev: dict[str, Verdict], ring_free: bool) -> list[dict]:
    """Each implication: hypotheses holding while the conclusion is refuted is a violation."""
    h = {k: v.holds for k, v in ev.items()}
    r = {k: v.refuted for k, v in ev.items()}
    div_prime = h["divisorial"] and h["prime"]
    rows = [
        ("(1) v-invertible divisorial prime => maximal divisorial",
         h["v-invertible"] and div_prime, r["maximal divisorial"]),
        ("(2) v-finite maximal divisorial => t-maximal",
         h["v-finite"] and h["maximal divisorial"], r["t-maximal"]),
        ("(3) v-finite v-invertible divisorial prime => t-invertible",
         h["v-finite"] and h["v-invertible"] and div_prime, r["t-invertible"]),
        ("(4) t-invertible t-prime => t-maximal",
         h["t-invertible"] and h["t-ideal"] and h["prime"], r["t-maximal"]),
    ]
    if ring_free:
        rows.append(("corollary: v-invertible divisorial prime => t-invertible and t-maximal",
                     h["v-invertible"] and div_prime, r["t-invertible"] or r["t-maximal"]))
    out = []
    for name, hyp, concl_refuted in rows:
        out.append({"implication": name, "hypotheses": hyp, "violated": bool(hyp and concl_refuted)})
    return out


def sentinel_triggered(ev: dict[str, Verdict]) -> bool:
    return ev["v-finite"].proved and ev["maximal divisorial"].proved and ev["t-maximal"].refuted


def meets(want: str, got: Status) -> bool:
    """Does a verdict satisfy an expectation word (holds accepts proved or proved-within-bounds)?"""
    if want in ("holds", "proved-within-bounds"):
        return got in (Status.PROVED, Status.BOUNDED)
    return got.value == want


def vtmax_suite(fixtures: list[Fixture], bounds: Bounds) -> StarPredicateReport:
    evidence = []
    failures = []
    for fx in fixtures:
        ev = evaluate(fx, bounds)
        ring = fx.ideal.ring
        checks = implication_checks(ev, ring.is_free)
        row = {
            "fixture": fx.name,
            "verdicts": {k: ev[k].status.value for k in PREDICATES},
            "implications": checks,
            "sentinel": sentinel_triggered(ev),
        }
        mism = {k: (want, ev[k].status.value) for k, want in fx.expect.items() if not meets(want, ev[k].status)}
        if mism:
            row["expectation_mismatch"] = {k: {"expected": a, "got": b} for k, (a, b) in mism.items()}
        if row["sentinel"] or any(c["violated"] for c in checks) or mism:
            row["violation"] = True
            failures.append(row)
        evidence.append(row)
    if failures:
        v = refuted(f"{len(failures)} fixtures violate an implication, the sentinel or an expectation", failures[0]["fixture"])
    else:
        v = proved(f"no implication violated on {len(fixtures)} fixtures")
    return StarPredicateReport("vtmax implications", v, evidence)
