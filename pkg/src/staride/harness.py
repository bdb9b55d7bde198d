"""Build scenarios from the DSL, run their assertions and the property suites, emit reports.

A report compares each assertion's verdict with the expected one:

* ``pass``: the verdict meets the expectation;
* ``fail``: it contradicts it (Refuted where Proved was expected, or the reverse);
* ``deviation``: anything weaker (typically Inconclusive).

Exit codes: 0 all pass, 1 some fail, 2 only deviations, 3 input error.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from . import classify, polyext, star
from .dsl import (
    AdjoinE,
    AssertStmt,
    BoundsDecl,
    Colon,
    Constraint,
    DegAtom,
    ExistsAtom,
    Extend,
    FamilyDecl,
    FixtureDecl,
    Gens,
    IdealDecl,
    Inter,
    PolyDecl,
    PolyVarDecl,
    Ref,
    RingRef,
    RuleDecl,
    ScenarioAST,
    ShiftAtom,
    UpperDecl,
    VarsDecl,
    parse,
)
from .entail import double_inclusion, subset_up_to
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
    colon_R,
    intersect,
    is_ring_itself,
    unit_ideal,
)
from .lattice import ONE, Monomial, Var
from .monoid import (
    MonoidSpec,
    closure_check,
    is_completely_integrally_closed,
    is_integrally_closed,
)
from .verdict import (
    Bounds,
    InputError,
    PreconditionError,
    RepresentationError,
    Status,
    Verdict,
    inconclusive,
    proved,
    refuted,
)

SCHEMA = "staride.report/1"


@dataclass
class Scenario:
    name: str
    ring: MonoidSpec
    bounds: Bounds
    objects: dict
    assertions: list
    fixtures: list
    polyvar: str = "X"
    ast: ScenarioAST | None = None


# ---------------------------------------------------------------------------
# building


def build(ast: ScenarioAST, bounds: Bounds | None = None, drop_rules: tuple[int, ...] = ()) -> Scenario:
    """Runtime objects for a parsed scenario.  ``bounds`` overrides the file's bounds statement."""
    scalars: list[str] = []
    families: list[str] = []
    rules = []
    polyvar = "X"
    file_bounds = None
    for st in ast.statements:
        if isinstance(st, VarsDecl):
            scalars.extend(st.names)
        elif isinstance(st, FamilyDecl):
            families.extend(st.names)
        elif isinstance(st, RuleDecl):
            rules.append(st.rule)
        elif isinstance(st, PolyVarDecl):
            polyvar = st.name
        elif isinstance(st, BoundsDecl):
            file_bounds = Bounds(st.degree, st.window)
    rules = [r for i, r in enumerate(rules) if i not in drop_rules]
    ring = MonoidSpec(tuple(scalars), tuple(families), tuple(rules), name="S")
    b = bounds or file_bounds or Bounds()
    sc = Scenario(ast.name, ring, b, {}, [], [], polyvar, ast)
    R = unit_ideal(ring)
    for st in ast.statements:
        if isinstance(st, IdealDecl):
            sc.objects[st.name] = _named(_expr(st.expr, sc, R), st, sc)
        elif isinstance(st, PolyDecl):
            sc.objects[st.name] = polyext.RingPoly.parse(st.text, polyvar)
        elif isinstance(st, UpperDecl):
            f = sc.objects[st.poly]
            sc.objects[st.name] = polyext.UpperToZero(f, ring, is_integrally_closed(ring, b), label=st.name)
        elif isinstance(st, AssertStmt):
            sc.assertions.append(st)
        elif isinstance(st, FixtureDecl):
            sc.fixtures.append(st)
    return sc


def _named(I: FracIdeal, st: IdealDecl, sc: Scenario) -> FracIdeal:
    if isinstance(st.expr, Ref):
        if st.certify:
            raise InputError(f"certify needs a fresh ideal expression, not an alias ({st.name})")
        return I
    if st.certify and st.certify not in I.ring.families:
        raise InputError(f"certificate family {st.certify!r} is not declared")
    if isinstance(I, ConstraintIdeal):
        return I.with_label(st.name, st.certify)
    I.label = st.name
    if st.certify:
        I.cert_family = st.certify
    return I


def _atom(a):
    if isinstance(a, DegAtom):
        return DegreeAtLeast(a.sel, a.bound)
    if isinstance(a, ExistsAtom):
        return Occurs(a.sel)
    return Shift(a.m)


def _expr(e, sc: Scenario, R: FracIdeal) -> FracIdeal:
    ring = sc.ring
    if isinstance(e, RingRef):
        return R
    if isinstance(e, Ref):
        obj = sc.objects[e.name]
        if not isinstance(obj, FracIdeal):
            raise InputError(f"{e.name} is not an ideal")
        return obj
    if isinstance(e, Gens):
        return FinGen(ring, e.gens)
    if isinstance(e, Constraint):
        return ConstraintIdeal(ring, [_atom(a) for a in e.atoms])
    if isinstance(e, Inter):
        atoms = []
        rest = []
        for p in e.parts:
            if isinstance(p, Constraint):
                atoms.extend(_atom(a) for a in p.atoms)
            else:
                rest.append(_expr(p, sc, R))
        if not atoms:
            out = rest[0]
            for K in rest[1:]:
                out, _ = intersect(out, K, sc.bounds)
            return out
        for K in rest:
            if is_ring_itself(K):
                atoms.append(IN_RING)
            elif isinstance(K, FinGen) and K.is_principal:
                atoms.append(Shift(K.gens[0].inverse()))
            else:
                atoms.append(Shift(ONE, K))
        return ConstraintIdeal(ring, atoms)
    if isinstance(e, Colon):
        J = _expr(e.left, sc, R)
        I = _expr(e.right, sc, R)
        if is_ring_itself(J):
            return colon_R(I, sc.bounds)
        if isinstance(I, FinGen):
            return colon(J, I)
        return Dual(ring, I, sc.bounds, target=J)
    if isinstance(e, Extend):
        return polyext.extend_ideal(_expr(e.inner, sc, R), sc.polyvar, sc.bounds)
    if isinstance(e, AdjoinE):
        return Adjoin(ring, _expr(e.inner, sc, R), Var(e.var))
    raise InputError(f"unsupported expression {e}")


# ---------------------------------------------------------------------------
# assertions


def _arg(sc: Scenario, a):
    if isinstance(a, Monomial):
        return a
    if a == "ring":
        return unit_ideal(sc.ring)
    return sc.objects[a]


def _proper(I: FracIdeal) -> Verdict:
    if not I.exact:
        return inconclusive(f"membership in {I.label} is bounded")
    if I.contains(ONE):
        return refuted(f"1 lies in {I.label}", ONE)
    return proved(f"1 is not in {I.label}")


def _member(I: FracIdeal, u: Monomial) -> Verdict:
    ok = I.contains(u)
    if not I.exact:
        return inconclusive(f"bounded oracle says {ok}", u)
    return proved(f"{u} lies in {I.label}") if ok else refuted(f"{u} is not in {I.label}", u)


def _upper_or(fn_upper, fn_ideal):
    def run(sc, I):
        return fn_upper(I, sc.bounds) if isinstance(I, polyext.UpperToZero) else fn_ideal(I, sc.bounds)
    return run


def _maxdiv_rep(sc, I, x):
    K = star.principal_meet_ring(sc.ring, x)
    if not classify.member_of_colon(x, colon_R(I, sc.bounds)) or sc.ring.contains(x):
        return refuted(f"{x} is not an element of (R : {I.label}) outside R", x)
    v = double_inclusion(I, K, sc.bounds)
    return Verdict(v.status, f"{I.label} = ({x})^-1 R & R: {v.reason}", v.witness)


def _certify(sc, I, *F):
    _, v = star.auto_certify_t_ideal(I, F, sc.bounds)
    return v


RUNNERS = {
    "closed": lambda sc: closure_check(sc.ring, sc.bounds),
    "integrally_closed": lambda sc: is_integrally_closed(sc.ring, sc.bounds),
    "cic": lambda sc: is_completely_integrally_closed(sc.ring, sc.bounds),
    "divisorial": _upper_or(lambda P, b: polyext.upper_is_divisorial(P), star.is_divisorial),
    "strong": lambda sc, I: star.is_strong(I, sc.bounds),
    "v_invertible": _upper_or(classify._upper_vinv, star.is_v_invertible),
    "t_invertible": lambda sc, I: star.is_t_invertible(I, sc.bounds),
    "invertible": lambda sc, I: star.is_invertible(I, sc.bounds),
    "v_finite": _upper_or(polyext.upper_is_v_finite, star.is_v_finite),
    "t_ideal": lambda sc, I: star.is_t_ideal(I, sc.bounds),
    "prime": lambda sc, I: classify.is_prime(I, sc.bounds),
    "proper": lambda sc, I: _proper(I),
    "maximal_divisorial": lambda sc, I: classify.is_maximal_divisorial(I, sc.bounds),
    "upperdiv": lambda sc, P: polyext.upperdiv_check(P, sc.bounds).verdict,
    "equal": lambda sc, A, B: double_inclusion(A, B, sc.bounds),
    "subset": lambda sc, A, B: subset_up_to(A, B, sc.bounds),
    "member": lambda sc, I, u: _member(I, u),
    "t_member": lambda sc, I, u: star.t_member(I, u, sc.bounds),
    "maxdiv_rep": _maxdiv_rep,
    "max_converse": lambda sc, P, x: classify.check_prop_max_converse(P, x, sc.bounds),
    "not_t_maximal": lambda sc, P, W, u: classify.refute_t_maximal(P, classify.NotTMaximalWitness(W, u), sc.bounds),
    "t_maximal": lambda sc, P, W, u: classify.t_maximal(P, sc.bounds, classify.NotTMaximalWitness(W, u)),
    "certify": _certify,
}


def outcome(expected: str, got: Status) -> str:
    positive = got in (Status.PROVED, Status.BOUNDED)
    if expected == "proved":
        return "pass" if got is Status.PROVED else ("fail" if got is Status.REFUTED else "deviation")
    if expected in ("proved-within-bounds", "holds"):
        return "pass" if positive else ("fail" if got is Status.REFUTED else "deviation")
    if expected == "refuted":
        return "pass" if got is Status.REFUTED else ("fail" if positive else "deviation")
    # inconclusive expected: a Proved claim contradicts it
    return "pass" if got is Status.INCONCLUSIVE else ("fail" if got is Status.PROVED else "deviation")


@dataclass
class AssertionResult:
    statement: str
    step: str | None
    expected: str
    verdict: Verdict | None
    outcome: str
    error: str | None = None
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"assert": self.statement, "step": self.step, "expected": self.expected, "outcome": self.outcome}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        if self.error:
            out["error"] = self.error
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class ScenarioReport:
    name: str
    bounds: Bounds
    results: list = field(default_factory=list)
    suites: list = field(default_factory=list)

    def counts(self) -> dict:
        c = {"pass": 0, "fail": 0, "deviation": 0}
        for r in self.results:
            c[r.outcome] += 1
        for s in self.suites:
            c["pass" if s.verdict.holds else "fail"] += 1
        return c

    @property
    def overall(self) -> str:
        c = self.counts()
        if c["fail"]:
            return "fail"
        if c["deviation"]:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.overall]

    def result(self, op_prefix: str) -> AssertionResult:
        for r in self.results:
            if r.statement.startswith("assert " + op_prefix):
                return r
        raise KeyError(op_prefix)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "scenario": self.name,
            "bounds": self.bounds.to_json(),
            "assertions": [r.to_json(timings) for r in self.results],
            "suites": [s.to_json() for s in self.suites],
            "summary": self.counts(),
            "overall": self.overall,
        }

    def to_text(self, timings: bool = False) -> str:
        lines = [f"scenario: {self.name}  (degree {self.bounds.degree}, window {self.bounds.window})"]
        for r in self.results:
            st = r.verdict.status.value if r.verdict else "error"
            t = f"  [{r.seconds:.2f}s]" if timings else ""
            lines.append(f"  {r.outcome.upper():9} {r.statement}  -> {st}{t}")
            if r.step:
                lines.append(f"            step {r.step}")
            detail = r.error or (r.verdict.reason if r.verdict else "")
            if detail:
                lines.append(f"            {detail}")
        for s in self.suites:
            lines.append(f"  {'PASS' if s.verdict.holds else 'FAIL':9} suite {s.predicate} -> {s.verdict.status.value}: {s.verdict.reason}")
        c = self.counts()
        lines.append(f"overall: {self.overall}  (pass {c['pass']}, fail {c['fail']}, deviation {c['deviation']})")
        return "\n".join(lines)


def run_scenario(sc: Scenario) -> ScenarioReport:
    rep = ScenarioReport(sc.name, sc.bounds)
    aborted = None
    for a in sc.assertions:
        if aborted:
            rep.results.append(AssertionResult(str(a), a.step, a.expect, None, "fail", f"skipped after {aborted}"))
            continue
        t0 = time.perf_counter()
        try:
            args = [_arg(sc, x) for x in a.args]
            v = RUNNERS[a.op](sc, *args)
            res = AssertionResult(str(a), a.step, a.expect, v, outcome(a.expect, v.status))
        except (PreconditionError, RepresentationError, InputError) as e:
            res = AssertionResult(str(a), a.step, a.expect, None, "fail", f"precondition failed at step {a.step}: {e}")
            aborted = f"step {a.step}"
        res.seconds = time.perf_counter() - t0
        rep.results.append(res)
    return rep


# ---------------------------------------------------------------------------
# shipped scenarios


def shipped(name: str) -> str:
    return resources.files("staride.data").joinpath(name).read_text(encoding="utf-8")


def load_example(which: str) -> ScenarioAST:
    files = {"3.1": "ex3_1.stx", "3.2": "ex3_2.stx"}
    if which not in files:
        raise InputError(f"unknown example {which!r} (choose 3.1 or 3.2)")
    return parse(shipped(files[which]), files[which])[0]


def run_example_3_1(bounds: Bounds | None = None) -> ScenarioReport:
    return run_scenario(build(load_example("3.1"), bounds))


def run_example_3_2(bounds: Bounds | None = None) -> ScenarioReport:
    return run_scenario(build(load_example("3.2"), bounds))


def check_text(text: str, fname: str = "<input>", bounds: Bounds | None = None) -> list[ScenarioReport]:
    return [run_scenario(build(ast, bounds)) for ast in parse(text, fname)]


# ---------------------------------------------------------------------------
# suites


def free_samples(max_gens: int = 3, max_degree: int = 3) -> list[FinGen]:
    """Every ideal of k[y,z] with at most max_gens generators of degree <= max_degree (deduplicated)."""
    from .catalog import free_monoid
    from .monoid import monomials_in_box

    ring = free_monoid("y", "z")
    mons = monomials_in_box(ring.window_vars(1), max_degree)
    seen = {}
    for k in range(1, max_gens + 1):
        for gs in combinations(mons, k):
            I = FinGen(ring, gs)
            seen.setdefault(I.gens, I)
    return list(seen.values())


def named_ideals(bounds: Bounds | None = None) -> list[FracIdeal]:
    """c(f), Q and QR[X] from the cone example; P, M and (R:P) from the support example."""
    a = build(load_example("3.1"), bounds)
    b = build(load_example("3.2"), bounds)
    return [a.objects["C"], a.objects["Q"], a.objects["W"], b.objects["P"], b.objects["M"], b.objects["D"]]


def fixtures_of(scenarios: list[Scenario]) -> list[classify.Fixture]:
    out = []
    for sc in scenarios:
        for fx in sc.fixtures:
            wit = None
            if fx.witness:
                wit = classify.NotTMaximalWitness(_arg(sc, fx.witness[0]), fx.witness[1])
            expect = {k.replace("maximal-", "maximal "): v for k, v in fx.expects}
            out.append(classify.Fixture(f"{sc.name}/{fx.name}", _arg(sc, fx.ideal), expect, wit))
    return out


def run_suites(text: str, fname: str = "<fixtures>", bounds: Bounds | None = None,
               axiom_samples: list[FracIdeal] | None = None) -> ScenarioReport:
    scenarios = [build(ast, bounds) for ast in parse(text, fname)]
    fixtures = fixtures_of(scenarios)
    if not fixtures:
        raise InputError(f"{fname}: no fixtures declared")
    b = bounds or Bounds()
    rep = ScenarioReport(f"suites: {fname}", b)
    for sc in scenarios:
        rep.results.extend(run_scenario(sc).results)
    samples = axiom_samples if axiom_samples is not None else free_samples(2, 2)
    monomial = [fx.ideal for fx in fixtures if isinstance(fx.ideal, FracIdeal)]
    rep.suites.append(star.star_axiom_suite(samples + monomial, b))
    rep.suites.append(star.chain_inclusion_suite(monomial, b))
    rep.suites.append(classify.vtmax_suite(fixtures, b))
    reps = []
    for fx in fixtures:
        want = fx.expect.get("maximal divisorial")
        if want in ("proved", "proved-within-bounds", "holds") and isinstance(fx.ideal, FracIdeal):
            r = classify.find_maxdiv_representation(fx.ideal, b)
            reps.append({"fixture": fx.name, "x": None if r is None else str(r.x),
                         **({"violation": True} if r is None else {})})
    bad = [r for r in reps if r.get("violation")]
    v = refuted(f"no representation for {bad[0]['fixture']}") if bad else proved(
        f"every maximal divisorial fixture is x^-1 R & R ({len(reps)} found)"
    )
    rep.suites.append(star.StarPredicateReport("maximal divisorial representation", v, reps))
    return rep


def dumps(report: ScenarioReport, timings: bool = False) -> str:
    return json.dumps(report.to_json(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
