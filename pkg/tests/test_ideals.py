from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from staride.catalog import cone_Q, cone_monoid, free_monoid, support_M, support_monoid, support_P
from staride.entail import double_inclusion, entails, search_outside, subset_up_to
from staride.ideals import (
    IN_RING,
    ConstraintIdeal,
    DegreeAtLeast,
    Dual,
    FinGen,
    Shift,
    colon,
    colon_R,
    ideal_member,
    ideal_product,
    ideal_sum,
    intersect,
    is_ring_itself,
    scale,
    to_fingen_exact,
    unit_ideal,
)
from staride.lattice import ONE, Monomial, Selector, Var, parse_monomial
from staride.verdict import Bounds, InputError, RepresentationError, Status

from strategies import free_gens_st, yz

FREE = free_monoid("y", "z")
R = unit_ideal(FREE)
B = Bounds(degree=6, window=1)
BOX = [(a, b) for a, b in product(range(-4, 5), repeat=2)]


def up(gens):
    ps = [(g[Var("y")], g[Var("z")]) for g in gens]
    return lambda a, b: any(a >= p and b >= q for p, q in ps)


def agree(I, pred):
    return all(I.contains(yz(a, b)) == pred(a, b) for a, b in BOX)


@given(free_gens_st(), free_gens_st())
def test_sum_product_intersection(g1, g2):
    I, J = FinGen(FREE, g1), FinGen(FREE, g2)
    i, j = up(g1), up(g2)
    assert agree(ideal_sum(I, J), lambda a, b: i(a, b) or j(a, b))
    assert agree(intersect(I, J)[0], lambda a, b: i(a, b) and j(a, b))
    prods = [x * y for x in g1 for y in g2]
    assert agree(ideal_product(I, J), up(prods))


@given(free_gens_st(), free_gens_st())
def test_colon_matches_definition(g1, g2):
    J, I = FinGen(FREE, g1), FinGen(FREE, g2)
    j = up(g1)
    ig = [(g[Var("y")], g[Var("z")]) for g in g2]
    assert agree(colon(J, I), lambda a, b: all(j(a + p, b + q) for p, q in ig))


@given(free_gens_st(), free_gens_st())
def test_colon_adjunction(g1, g2):
    # (J : I) * I lies in J
    J, I = FinGen(FREE, g1), FinGen(FREE, g2)
    C = to_fingen_exact(colon(J, I))
    assert C is not None
    for c in C.gens:
        for g in I.gens:
            assert J.contains(c * g)


@given(free_gens_st(), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_scaling(gs, ab):
    a = yz(*ab)
    I = FinGen(FREE, gs)
    aI = scale(I, a)
    assert all(aI.contains(g * a) for g in gs)
    assert to_fingen_exact(colon(aI, I)).contains(a)


def test_generators_are_minimal():
    I = FinGen(FREE, [yz(1, 0), yz(2, 0), yz(1, 1), yz(0, 3)])
    assert I.gens == (yz(1, 0), yz(0, 3))


def test_unit_and_principal():
    assert is_ring_itself(R)
    assert FinGen(FREE, [yz(0, 2)]).is_principal
    assert not FinGen(FREE, [yz(0, 2), yz(1, 0)]).is_principal


def test_empty_and_unknown_generators_rejected():
    with pytest.raises(InputError):
        FinGen(FREE, [])
    with pytest.raises(InputError):
        FinGen(FREE, [parse_monomial("w")])
    with pytest.raises(InputError):
        ideal_member(R, parse_monomial("w"))


def test_constraint_needs_anchor():
    with pytest.raises(InputError):
        ConstraintIdeal(FREE, [DegreeAtLeast(Selector.of("y"), 1)])


def test_sum_of_non_generator_ideals_is_a_representation_error():
    S = cone_monoid()
    with pytest.raises(RepresentationError):
        ideal_sum(cone_Q(S), unit_ideal(S))


def test_cone_Q_membership():
    S = cone_monoid()
    Q = cone_Q(S)
    assert Q.contains(parse_monomial("y*t[7]"))
    assert not Q.contains(ONE)
    assert not Q.contains(parse_monomial("y^-1*z^2"))


def test_free_colon_R_is_exact():
    I = FinGen(FREE, [yz(1, 0), yz(0, 1)])
    C = colon_R(I, B)
    assert C.exact
    assert to_fingen_exact(C).gens == (ONE,)


def test_dual_over_cone_contains_fresh_t():
    S = cone_monoid()
    C = colon_R(FinGen(S, [parse_monomial("y"), parse_monomial("z")]), Bounds())
    assert C.contains(parse_monomial("t[1]"))
    assert not C.contains(parse_monomial("y^-1"))


def test_support_P_is_RZinv_meet_R():
    S = support_monoid()
    P = support_P(S)
    K = ConstraintIdeal(S, [Shift(parse_monomial("Z")), IN_RING], label="K")
    v = double_inclusion(P, K, Bounds())
    assert v.status is Status.PROVED


def test_subset_refutation_has_witness():
    S = support_monoid()
    v = subset_up_to(support_M(S), support_P(S), Bounds(degree=4, window=2))
    assert v.status is Status.REFUTED
    w = v.witness
    assert support_M(S).contains(w) and not support_P(S).contains(w)


def test_entails_and_search_agree_on_free_ideals():
    I = FinGen(FREE, [yz(2, 0), yz(0, 1)])
    J = FinGen(FREE, [yz(1, 0), yz(0, 1)])
    assert entails(I, J) is not None
    assert search_outside(I, J, 6, 1) is None
    assert search_outside(J, I, 6, 1) == yz(1, 0)
