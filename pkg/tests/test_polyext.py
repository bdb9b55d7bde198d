from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from staride.catalog import cone_Q, cone_monoid, free_monoid, support_monoid
from staride.lattice import Monomial, Var, parse_monomial
from staride.monoid import is_integrally_closed
from staride.polyext import (
    RingPoly,
    UpperToZero,
    content,
    divide,
    extend_ideal,
    poly_ring,
    upper_is_divisorial,
    upper_member,
    upperdiv_check,
)
from staride.verdict import Bounds, InputError, PreconditionError, Status, inconclusive

from strategies import monomial_st

S = cone_monoid()
F = RingPoly.parse("y + z*X")


def coeff_st():
    return st.dictionaries(monomial_st(-1, 2, max_size=2), st.fractions(-3, 3, max_denominator=3), max_size=2)


poly_st = st.dictionaries(st.integers(0, 3), coeff_st(), max_size=3).map(RingPoly)


@given(poly_st, poly_st)
def test_ring_axioms_commutative(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(poly_st, poly_st, poly_st)
def test_ring_axioms_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(poly_st)
def test_subtraction_cancels(a):
    assert (a - a).is_zero


@given(poly_st)
def test_str_parse_round_trip(a):
    assert RingPoly.parse(str(a)) == a


@given(poly_st)
def test_division_identity(g):
    q, r = divide(g, F)
    assert q * F + r == g
    assert r.is_zero or r.degree < F.degree


@given(poly_st)
def test_multiples_divide_exactly(h):
    q, r = divide(h * F, F)
    assert r.is_zero and q == h


def test_canonical_text():
    assert str(F) == "y + z*X"
    assert str(RingPoly.parse("1/2 - t[1] + 2*y^2*X^3")) == "1/2 - t[1] + 2*y^2*X^3"
    assert str(RingPoly.parse("-y^-1*X")) == "-y^-1*X"


@pytest.mark.parametrize("bad", ["y +", "y + + z", "X^", "y*X^-1", ""])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        RingPoly.parse(bad)


def test_content():
    c = content(F, S)
    assert [str(g) for g in c.gens] == ["y", "z"]
    with pytest.raises(InputError):
        content(RingPoly.parse("y + z + X"), S)


def test_poly_ring_name_clash():
    with pytest.raises(InputError):
        poly_ring(free_monoid("X", "y"))


def test_upper_membership():
    P = UpperToZero(F, S, is_integrally_closed(S))
    t1 = RingPoly.const(parse_monomial("t[1]"))
    assert upper_member(P, F)
    assert upper_member(P, F * t1)
    assert upper_member(P, F * F)
    assert not upper_member(P, F * RingPoly.const(parse_monomial("y^-1")))
    assert not upper_member(P, RingPoly.parse("y"))
    assert not upper_member(P, RingPoly.parse("y + X"))
    for g in P.sample(Bounds(), degree=2, xpow=1):
        assert divide(g, F)[1].is_zero


def test_upper_needs_proved_integral_closure():
    with pytest.raises(PreconditionError):
        UpperToZero(F, S, inconclusive("unknown"))
    with pytest.raises(InputError):
        UpperToZero(RingPoly.parse("y"), S, is_integrally_closed(S))


def test_upper_predicates():
    P = UpperToZero(F, S, is_integrally_closed(S))
    assert upper_is_divisorial(P).status is Status.PROVED
    rep = upperdiv_check(P, Bounds())
    assert rep.verdict.status is Status.BOUNDED


def test_extension_is_termwise():
    Q = cone_Q(S)
    W = extend_ideal(Q, "X", Bounds())
    assert W.contains(parse_monomial("y*X^3"))
    assert not W.contains(parse_monomial("X"))
    assert not W.contains(parse_monomial("t[1]*X"))
