from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from staride.catalog import cone_monoid, free_monoid, support_monoid
from staride.lattice import Monomial, Var, parse_monomial
from staride.monoid import (
    MonoidSpec,
    NonNegativityRule,
    PredicateRule,
    closure_check,
    is_completely_integrally_closed,
    is_integrally_closed,
    monoid_box,
)
from staride.verdict import Bounds, InputError, Status

from strategies import monomial_st

CONE = cone_monoid()
SUPP = support_monoid()


def cone_oracle(u):
    if any(e < 0 for e in u._map.values()):
        return False
    d = u[Var("y")] + u[Var("z")]
    return all(e <= d for v, e in u.items() if v.name == "t")


def supp_oracle(u):
    if any(e < 0 for e in u._map.values()):
        return False
    xs = [v.index for v, e in u.items() if v.name == "X" and e > 0]
    if u[Var("Z")] > 0 and not xs:
        return False
    for v, e in u.items():
        if v.name == "T" and e > 0 and u[Var("Y")] == 0 and not any(i <= v.index for i in xs):
            return False
    return True


def _supp_monomial_st():
    vs = [Var("Y"), Var("Z")] + [Var(f, i) for f in "XT" for i in (1, 2, 3)]
    return st.dictionaries(st.sampled_from(vs), st.integers(-1, 3), max_size=4).map(Monomial)


@given(monomial_st(-1, 3))
def test_cone_membership_matches_oracle(u):
    assert CONE.contains(u) == cone_oracle(u)


@given(_supp_monomial_st())
def test_support_membership_matches_oracle(u):
    assert SUPP.contains(u) == supp_oracle(u)


@given(monomial_st(0, 3), monomial_st(0, 3))
def test_cone_closed_under_products(a, b):
    if CONE.contains(a) and CONE.contains(b):
        assert CONE.contains(a * b)


@given(_supp_monomial_st(), _supp_monomial_st())
def test_support_closed_under_products(a, b):
    if SUPP.contains(a) and SUPP.contains(b):
        assert SUPP.contains(a * b)


def test_examples_from_the_constructions():
    assert CONE.contains(parse_monomial("y*t[5]"))
    assert not CONE.contains(parse_monomial("t[1]"))
    assert not CONE.contains(parse_monomial("y*t[1]^2"))
    assert SUPP.contains(parse_monomial("Z*X[4]"))
    assert not SUPP.contains(parse_monomial("Z"))
    assert SUPP.contains(parse_monomial("T[3]*X[2]"))
    assert not SUPP.contains(parse_monomial("T[1]*X[2]"))
    assert SUPP.contains(parse_monomial("T[1]*Y"))


def test_box_count_is_frozen():
    # [DERIVED] by direct enumeration of exponent vectors in y, z, t[1], t[2] with total degree <= 4
    vs = [Var("y"), Var("z"), Var("t", 1), Var("t", 2)]
    n = sum(
        1
        for es in product(range(5), repeat=4)
        if sum(es) <= 4 and cone_oracle(Monomial(dict(zip(vs, es))))
    )
    assert n == 44
    assert len(monoid_box(CONE, 4, 2)) == n


def test_member_checks_universe():
    with pytest.raises(InputError):
        CONE.member(parse_monomial("w"))


def test_spec_validation():
    with pytest.raises(InputError):
        MonoidSpec(("y", "y"))
    with pytest.raises(InputError):
        MonoidSpec(("y",), ("y",))


def test_closure_of_shipped_rules_is_symbolic():
    assert closure_check(CONE).status is Status.PROVED
    assert closure_check(SUPP).status is Status.PROVED


def test_closure_refutes_a_non_monoid():
    bad = MonoidSpec(("y", "z"), (), (NonNegativityRule(), PredicateRule("deg_y<=2", lambda u: u[Var("y")] <= 2)))
    v = closure_check(bad, Bounds(degree=4, window=1))
    assert v.status is Status.REFUTED
    a, b = v.witness
    assert bad.contains(a) and bad.contains(b) and not bad.contains(a * b)


def test_closure_never_proves_a_predicate_rule():
    # deg_y != 1 is closed under products (the degrees 0, 2, 3, ... are), but a predicate only gets a bounded search
    ok = MonoidSpec(("y", "z"), (), (NonNegativityRule(), PredicateRule("deg_y!=1", lambda u: u[Var("y")] != 1)))
    assert closure_check(ok, Bounds(degree=4, window=1)).status is Status.INCONCLUSIVE


def test_integral_closure_verdicts():
    assert is_integrally_closed(CONE).status is Status.PROVED
    assert is_integrally_closed(SUPP).status is Status.PROVED
    assert is_completely_integrally_closed(CONE).status is Status.PROVED
    assert is_completely_integrally_closed(free_monoid("y", "z")).status is Status.PROVED


def test_support_monoid_is_not_completely_integrally_closed():
    v = is_completely_integrally_closed(SUPP)
    assert v.status is Status.REFUTED


def test_non_integrally_closed_predicate_monoid():
    # the numerical-semigroup-like monoid y^0, y^2, y^3, ... misses y although y^2 is in it
    S = MonoidSpec(("y",), (), (NonNegativityRule(), PredicateRule("no y^1", lambda u: u[Var("y")] != 1)))
    v = is_integrally_closed(S, Bounds(degree=4, window=1))
    assert v.status is Status.REFUTED and str(v.witness) == "y"
