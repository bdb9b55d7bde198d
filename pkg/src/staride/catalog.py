"""Ready-made monoids and ideals from the two worked examples and the free fixture."""

from __future__ import annotations

from .ideals import IN_RING, ConstraintIdeal, DegreeAtLeast, FinGen, Occurs, Shift
from .lattice import Monomial, Selector, Var
from .monoid import LinearDegreeRule, MonoidSpec, NonNegativityRule, SupportImplicationRule


def free_monoid(*names: str) -> MonoidSpec:
    return MonoidSpec(tuple(names or ("y", "z")), (), (NonNegativityRule(),), name="N^" + str(len(names or "yz")))


def cone_monoid() -> MonoidSpec:
    """Monomials in y, z, t[n] with deg_{y,z} >= deg_{t[n]} for every n."""
    return MonoidSpec(
        ("y", "z"), ("t",),
        (NonNegativityRule(), LinearDegreeRule(Selector.of("y", "z"), "t")),
        name="S_cone",
    )


def support_monoid() -> MonoidSpec:
    """Monomials in Y, Z, X[n], T[n]: Z needs some X; T[n] needs Y or some X[i], i <= n."""
    return MonoidSpec(
        ("Y", "Z"), ("X", "T"),
        (
            NonNegativityRule(),
            SupportImplicationRule("Z", Selector.family("X")),
            SupportImplicationRule("T", Selector(scalars=("Y",), families=(("X", "n"),)), family_trigger=True),
        ),
        name="S_support",
    )


def cone_Q(ring: MonoidSpec) -> ConstraintIdeal:
    return ConstraintIdeal(ring, [DegreeAtLeast(Selector.of("y", "z"), 1), IN_RING], label="Q", cert_family="t")


def support_P(ring: MonoidSpec) -> ConstraintIdeal:
    return ConstraintIdeal(ring, [Occurs(Selector.family("X")), IN_RING], label="P")


def support_M(ring: MonoidSpec) -> ConstraintIdeal:
    return ConstraintIdeal(ring, [DegreeAtLeast(Selector.all(), 1), IN_RING], label="M", cert_family="T")
