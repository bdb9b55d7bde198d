import pytest
from hypothesis import given
from hypothesis import strategies as st

from staride.lattice import ONE, Monomial, Selector, Var, fresh_index, index_ceiling, parse_monomial
from staride.verdict import InputError

from strategies import monomial_st


@given(monomial_st(), monomial_st())
def test_product_commutes(a, b):
    assert a * b == b * a


@given(monomial_st(), monomial_st(), monomial_st())
def test_product_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(monomial_st())
def test_inverse_and_unit(a):
    assert a * a.inverse() == ONE
    assert a * ONE == a
    assert (a / a).is_one


@given(monomial_st(), monomial_st())
def test_division_undoes_product(a, b):
    assert (a * b) / b == a


@given(monomial_st())
def test_str_parse_round_trip(a):
    assert parse_monomial(str(a)) == a


@given(monomial_st(), monomial_st())
def test_hash_agrees_with_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)


@given(monomial_st(), monomial_st())
def test_total_degree_is_additive(a, b):
    assert (a * b).total_degree() == a.total_degree() + b.total_degree()


def test_zero_exponents_vanish():
    assert Monomial({Var("y"): 0}) == ONE
    assert str(ONE) == "1"


def test_parse_examples():
    m = parse_monomial("y^2*z^-1*t[3]")
    assert m[Var("y")] == 2 and m[Var("z")] == -1 and m[Var("t", 3)] == 1
    assert parse_monomial("1") == ONE


@pytest.mark.parametrize("bad", ["y^", "t[0]", "y**2", "2*y", "y^x", ""])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        parse_monomial(bad)


def test_selector_selects():
    s = Selector(scalars=("y",), families=(("t", 2),))
    assert s.selects(Var("y"))
    assert not s.selects(Var("z"))
    assert s.selects(Var("t", 1)) and s.selects(Var("t", 2))
    assert not s.selects(Var("t", 3))
    assert Selector.all().selects(Var("t", 99))


def test_selector_relative_bound_resolves():
    s = Selector(families=(("X", "n"),))
    assert s.is_relative
    r = s.resolve(3)
    assert r.selects(Var("X", 3)) and not r.selects(Var("X", 4))


def test_selector_degree_and_occurrence():
    u = parse_monomial("y^2*z*t[1]^3")
    assert Selector.of("y", "z").occurs_in(u)
    assert u.degree(Selector.of("y", "z")) == 3
    assert u.degree(Selector.family("t")) == 3


@given(st.lists(monomial_st(), max_size=4))
def test_fresh_index_is_unused(used):
    n = fresh_index("t", used)
    assert all(Var("t", n) not in u.support() for u in used)
    c = index_ceiling(used)
    assert all(max(u.indices() or {0}) < c for u in used)
