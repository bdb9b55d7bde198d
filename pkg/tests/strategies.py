from hypothesis import strategies as st

from staride.lattice import Monomial, Var

SCALARS = ("y", "z")
FAMILY = "t"


def var_st(families=True):
    opts = [st.sampled_from([Var(s) for s in SCALARS])]
    if families:
        opts.append(st.builds(lambda i: Var(FAMILY, i), st.integers(1, 4)))
    return st.one_of(*opts)


def monomial_st(lo=-3, hi=3, families=True, max_size=4):
    return st.dictionaries(var_st(families), st.integers(lo, hi), max_size=max_size).map(Monomial)


def free_exponents(lo=0, hi=3):
    return st.tuples(st.integers(lo, hi), st.integers(lo, hi))


def yz(a, b):
    return Monomial({Var("y"): a, Var("z"): b})


def free_gens_st(max_gens=3, hi=3):
    return st.lists(free_exponents(0, hi), min_size=1, max_size=max_gens).map(lambda ps: [yz(a, b) for a, b in ps])
