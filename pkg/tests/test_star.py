from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from staride import star
from staride.catalog import cone_Q, cone_monoid, free_monoid, support_M, support_monoid, support_P
from staride.ideals import FinGen, colon, to_fingen_exact, unit_ideal
from staride.lattice import ONE, Monomial, Var, parse_monomial
from staride.verdict import Bounds, InputError, Status

from strategies import free_gens_st, yz

FREE = free_monoid("y", "z")
B = Bounds()
BOX = list(product(range(-5, 6), repeat=2))


def v_oracle(gens):
    """(R:(R:I)) on k[y,z] by brute force over the box."""
    ps = [(g[Var("y")], g[Var("z")]) for g in gens]
    dual = [(a, b) for a, b in BOX if all(a + p >= 0 and b + q >= 0 for p, q in ps)]
    return {(a, b) for a, b in BOX if all(a + p >= 0 and b + q >= 0 for p, q in dual)}


def members(I):
    return {(a, b) for a, b in BOX if I.contains(yz(a, b))}


@given(free_gens_st())
def test_v_closure_matches_oracle(gs):
    V, ex = star.v_closure(FinGen(FREE, gs), B)
    assert ex.exact
    assert members(V) == v_oracle(gs)


@given(free_gens_st())
def test_v_closure_extensive_idempotent(gs):
    I = FinGen(FREE, gs)
    V, _ = star.v_closure(I, B)
    VV, _ = star.v_closure(V, B)
    assert members(I) <= members(V)
    assert members(VV) == members(V)


@given(free_gens_st(), free_gens_st())
def test_v_closure_monotone(g1, g2):
    I = FinGen(FREE, g1)
    J = FinGen(FREE, g1 + g2)
    assert members(star.v_closure(I, B)[0]) <= members(star.v_closure(J, B)[0])


@given(free_gens_st(), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_v_closure_commutes_with_scaling(gs, ab):
    a = yz(*ab)
    I = FinGen(FREE, gs)
    V = star.v_closure(I, B)[0]
    aV = star.v_closure(I.scaled(a), B)[0]
    assert {(x + ab[0], y + ab[1]) for x, y in members(V)} & set(BOX) == members(aV) & {
        (x + ab[0], y + ab[1]) for x, y in BOX
    }


@settings(max_examples=30)
@given(free_gens_st(max_gens=2, hi=2), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_t_member_implies_v_member(gs, ab):
    I = FinGen(FREE, gs)
    u = yz(*ab)
    if star.t_member(I, u, B).holds:
        assert star.v_closure(I, B)[0].contains(u)


# [DERIVED] v-closures on k[y,z]: frozen from the brute-force oracle above
FROZEN_V = [
    ("y,z", "1"),
    ("y^2,y*z", "y"),
    ("y^2,z^2", "1"),
    ("y^2*z,y*z^2", "y*z"),
    ("y^3,y^2*z", "y^2"),
]


@pytest.mark.parametrize("gens,closure", FROZEN_V)
def test_frozen_v_closures(gens, closure):
    gs = [parse_monomial(g) for g in gens.split(",")]
    V = to_fingen_exact(star.v_closure(FinGen(FREE, gs), B)[0])
    assert [str(g) for g in V.gens] == closure.split(",")
    assert members(V) == v_oracle(gs)


def test_free_predicates():
    I = FinGen(FREE, [yz(1, 0), yz(0, 1)])
    assert star.is_divisorial(I, B).status is Status.REFUTED
    assert star.is_strong(I, B).status is Status.PROVED
    assert star.is_v_invertible(I, B).status is Status.PROVED
    assert star.is_invertible(I, B).status is Status.REFUTED
    assert star.is_t_ideal(I, B).status is Status.REFUTED
    assert star.t_member(I, ONE, B).status is Status.PROVED
    Y = FinGen(FREE, [yz(1, 0)])
    assert star.is_divisorial(Y, B).status is Status.PROVED
    v = star.is_strong(Y, B)
    assert v.status is Status.REFUTED and str(v.witness) == "y^-1"


def test_cone_certificate_by_hand():
    S = cone_monoid()
    Q = cone_Q(S)
    F = (parse_monomial("y"), parse_monomial("z*t[1]"))
    c = star.TIdealCertificate(F, parse_monomial("t[2]"), Q)
    assert star.check_t_certificate(c, B).status is Status.PROVED
    cert, v = star.auto_certify_t_ideal(Q, F, B)
    assert v.proved and str(cert.m) == "t[2]"
    assert cert.to_json()["m"] == "t[2]"


def test_certificate_rejections():
    S = cone_monoid()
    Q = cone_Q(S)
    F = (parse_monomial("y"),)
    assert star.check_t_certificate(star.TIdealCertificate(F + (ONE,), parse_monomial("t[2]"), Q)).refuted
    assert star.check_t_certificate(star.TIdealCertificate(F, parse_monomial("y"), Q)).refuted
    assert star.check_t_certificate(star.TIdealCertificate(F, parse_monomial("t[2]^2"), Q)).refuted
    with pytest.raises(InputError):
        star.check_t_certificate(star.TIdealCertificate((), parse_monomial("t[2]"), Q))


def test_fresh_witness_skips_every_family_index():
    S = support_monoid()
    M = support_M(S)
    m = star.fresh_witness(M, [parse_monomial("X[4]*Y"), parse_monomial("T[2]*Y")])
    assert str(m) == "T[5]"


def test_uniform_lemma():
    assert star.uniform_t_lemma(cone_Q(cone_monoid())) is not None
    assert star.uniform_t_lemma(support_M(support_monoid())) is not None
    assert star.uniform_t_lemma(support_P(support_monoid())) is None


def test_support_P_predicates():
    S = support_monoid()
    P = support_P(S)
    d = star.is_divisorial(P, B)
    assert d.status is Status.PROVED and "Z" in d.reason
    assert star.is_strong(P, B).status is Status.PROVED
    assert star.is_v_invertible(P, B).status is Status.REFUTED
    assert star.t_member(P, parse_monomial("Y"), B).status is Status.REFUTED


def test_cone_v_finite_is_not_claimed():
    S = cone_monoid()
    v = star.is_v_finite(cone_Q(S), B)
    assert v.status is Status.INCONCLUSIVE


def test_axiom_suite_small():
    samples = [FinGen(FREE, [yz(1, 0), yz(0, 1)]), FinGen(FREE, [yz(2, 0)]), FinGen(FREE, [yz(1, 0)])]
    rep = star.star_axiom_suite(samples, B)
    assert rep.verdict.status is Status.PROVED and not rep.violations


def test_chain_suite_small():
    samples = [FinGen(FREE, [yz(1, 0), yz(0, 1)]), FinGen(FREE, [yz(1, 1)])]
    rep = star.chain_inclusion_suite(samples, B)
    assert rep.verdict.holds


def test_sample_subsets_are_seeded():
    Q = cone_Q(cone_monoid())
    a = star.sample_finite_subsets(Q, 5, Bounds(seed=3))
    b = star.sample_finite_subsets(Q, 5, Bounds(seed=3))
    assert a == b and all(Q.contains(f) for F in a for f in F)
