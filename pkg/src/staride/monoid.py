"""Constraint-defined monoids of monomials.

A :class:`MonoidSpec` lists the indeterminates (scalars and indexed families)
and a set of membership rules; the monoid S is the set of Laurent monomials
satisfying every rule and R = k[S] is its semigroup ring.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .lattice import ONE, Monomial, Selector, Var
from .verdict import (
    Bounds,
    InputError,
    Verdict,
    inconclusive,
    proved,
    refuted,
)


class Rule:
    shipped = True

    def holds(self, u: Monomial) -> bool:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class NonNegativityRule(Rule):
    def holds(self, u: Monomial) -> bool:
        return u.is_nonnegative()

    def __str__(self):
        return "rule nonneg"


@dataclass(frozen=True)
class LinearDegreeRule(Rule):
    """``deg_lhs(u) >= deg_{family[n]}(u)`` for every index n (absent indices included)."""

    lhs: Selector
    family: str

    def holds(self, u: Monomial) -> bool:
        d = u.degree(self.lhs)
        if d < 0:
            return False
        fam = self.family
        return all(d >= e for v, e in u._map.items() if v.name == fam and v.index is not None)

    def __str__(self):
        return f"rule linear: deg({self.lhs}) >= deg({self.family}[*])"


@dataclass(frozen=True)
class SupportImplicationRule(Rule):
    """If the trigger occurs, some witness occurs.

    ``trigger`` names a scalar, or a family when ``family_trigger`` is set, in
    which case every member ``trigger[n]`` is a trigger and witness bounds
    written ``[<=n]`` refer to that n.
    """

    trigger: str
    witnesses: Selector
    family_trigger: bool = False

    def triggered_by(self, v: Var) -> bool:
        return v.name == self.trigger and (v.index is not None) == self.family_trigger

    def witness_set(self, v: Var | None) -> Selector:
        """Witness selector for trigger ``v`` (``None``: a fresh, larger-than-all index)."""
        return self.witnesses.resolve(None if v is None else v.index)

    def _witnessed_by(self, w: Var, n: int | None) -> bool:
        # inline Selector.resolve(n).selects(w) without building a selector
        sel = self.witnesses
        if sel.everything:
            return True
        if w.index is None:
            return w.name in sel.scalars
        if w in sel.members:
            return True
        for name, bound in sel.families:
            if name != w.name:
                continue
            if isinstance(bound, str):
                bound = n
            if bound is None or w.index <= bound:
                return True
        return False

    def holds(self, u: Monomial) -> bool:
        m = u._map
        for v, e in m.items():
            if e > 0 and v.name == self.trigger and (v.index is not None) == self.family_trigger:
                if not any(ee > 0 and w != v and self._witnessed_by(w, v.index) for w, ee in m.items()):
                    return False
        return True

    def __str__(self):
        trig = f"{self.trigger}[n]" if self.family_trigger else self.trigger
        return f"rule support: {trig} => {format_witnesses(self.witnesses)}"


def format_witnesses(sel: Selector) -> str:
    parts = list(sel.scalars)
    for name, bound in sel.families:
        b = "*" if bound is None else f"<={bound}"
        parts.append(f"exists {name}[{b}]")
    parts.extend(str(m) for m in sel.members)
    return " or ".join(parts)


@dataclass(frozen=True, eq=False)
class PredicateRule(Rule):
    """Arbitrary user predicate; never eligible for a symbolic Proved."""

    name: str
    predicate: Callable[[Monomial], bool]
    shipped = False

    def holds(self, u: Monomial) -> bool:
        return bool(self.predicate(u))

    def __str__(self):
        return f"rule predicate: {self.name}"


@dataclass(frozen=True)
class MonoidSpec:
    scalars: tuple[str, ...]
    families: tuple[str, ...] = ()
    rules: tuple[Rule, ...] = (NonNegativityRule(),)
    name: str = "S"

    def __post_init__(self):
        object.__setattr__(self, "scalars", tuple(self.scalars))
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "rules", tuple(self.rules))
        clash = set(self.scalars) & set(self.families)
        if clash or len(set(self.scalars)) != len(self.scalars) or len(set(self.families)) != len(self.families):
            raise InputError(f"indeterminate names must be unique (clash: {sorted(clash)})")
        for r in self.rules:
            if isinstance(r, LinearDegreeRule) and r.family not in self.families:
                raise InputError(f"linear rule refers to unknown family {r.family!r}")
            if isinstance(r, SupportImplicationRule):
                pool = self.families if r.family_trigger else self.scalars
                if r.trigger not in pool:
                    raise InputError(f"support rule trigger {r.trigger!r} is not declared")

    # -- membership ------------------------------------------------------

    def validate(self, u: Monomial) -> None:
        for v in u:
            pool = self.scalars if v.index is None else self.families
            if v.name not in pool:
                raise InputError(f"unknown indeterminate {v} for monoid {self.name}")

    def member(self, u: Monomial) -> bool:
        self.validate(u)
        return self.contains(u)

    def contains(self, u: Monomial) -> bool:
        """Membership without the universe check (hot path)."""
        return all(r.holds(u) for r in self.rules)

    __contains__ = contains

    # -- structure -------------------------------------------------------

    @property
    def nonnegative(self) -> bool:
        return any(isinstance(r, NonNegativityRule) for r in self.rules)

    @property
    def is_free(self) -> bool:
        """Free commutative monoid on the indeterminates (only non-negativity)."""
        return self.nonnegative and all(isinstance(r, NonNegativityRule) for r in self.rules)

    @property
    def shipped_only(self) -> bool:
        return all(r.shipped for r in self.rules)

    def window_vars(self, window: int) -> tuple[Var, ...]:
        vs = [Var(s) for s in self.scalars]
        vs += [Var(f, i) for f in self.families for i in range(1, window + 1)]
        return tuple(sorted(vs))

    def var(self, name: str, index: int | None = None) -> Monomial:
        return Monomial([(Var(name, index), 1)])

    def without_rule(self, index: int) -> "MonoidSpec":
        rules = self.rules[:index] + self.rules[index + 1:]
        return MonoidSpec(self.scalars, self.families, rules, self.name + "'")

    def describe(self) -> str:
        head = f"vars {', '.join(self.scalars)}"
        fams = f"\nfamily {', '.join(self.families)}" if self.families else ""
        return head + fams + "".join(f"\n{r}" for r in self.rules)


# ---------------------------------------------------------------------------
# enumeration


def exponent_tuples(n: int, degree: int) -> Iterator[tuple[int, ...]]:
    """All non-negative integer n-tuples with sum <= degree."""
    if n == 0:
        yield ()
        return
    for e in range(degree + 1):
        for rest in exponent_tuples(n - 1, degree - e):
            yield (e,) + rest


def monomials_in_box(vars_: tuple[Var, ...], degree: int) -> list[Monomial]:
    out = [Monomial(zip(vars_, t)) for t in exponent_tuples(len(vars_), degree)]
    out.sort(key=Monomial.sort_key)
    return out


def laurent_box(vars_: tuple[Var, ...], span: int) -> list[Monomial]:
    """Laurent monomials over ``vars_`` with sum of |exponents| <= span."""
    out = []
    for t in exponent_tuples(len(vars_), span):
        nz = [i for i, e in enumerate(t) if e]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            entries = list(t)
            for i, s in zip(nz, signs):
                entries[i] *= s
            out.append(Monomial(zip(vars_, entries)))
    out.sort(key=Monomial.sort_key)
    return out


@lru_cache(maxsize=256)
def monoid_box(spec: MonoidSpec, degree: int, window: int) -> tuple[Monomial, ...]:
    """Members of S of total degree <= degree supported on the window (deterministic order)."""
    vs = spec.window_vars(window)
    if spec.nonnegative:
        cands = monomials_in_box(vs, degree)
    else:
        cands = laurent_box(vs, degree)
    return tuple(u for u in cands if spec.contains(u))


def nonneg_divisors(u: Monomial) -> Iterator[Monomial]:
    items = u.items()
    ranges = [range(e + 1) for _, e in items]
    for t in itertools.product(*ranges):
        yield Monomial((v, k) for (v, _), k in zip(items, t))


def generators_up_to(spec: MonoidSpec, deg_bound: int, family_window: int) -> list[Monomial]:
    """Members of the box that are not products of two non-identity members."""
    if deg_bound < 1 or family_window < 1:
        raise InputError("degree bound and family window must be >= 1")
    if not spec.nonnegative:
        raise InputError("generator enumeration needs a non-negative monoid")
    gens = []
    for u in monoid_box(spec, deg_bound, family_window):
        if u.is_one:
            continue
        decomposable = False
        for d in nonneg_divisors(u):
            if d.is_one or d == u:
                continue
            if spec.contains(d) and spec.contains(u / d):
                decomposable = True
                break
        if not decomposable:
            gens.append(u)
    return gens


# ---------------------------------------------------------------------------
# structural checks


def closure_check(spec: MonoidSpec, bounds: Bounds | None = None) -> Verdict:
    bounds = bounds or Bounds()
    support_rules = [r for r in spec.rules if isinstance(r, SupportImplicationRule)]
    if spec.shipped_only and (spec.nonnegative or not support_rules):
        return proved(
            "each shipped rule class is closed under products (degrees add; occurrences persist in non-negative products)"
        )
    members = list(monoid_box(spec, min(bounds.degree, 4), bounds.window))
    pairs = list(itertools.combinations_with_replacement(members, 2))
    if len(pairs) > 20000:
        rng = random.Random(bounds.seed)
        pairs = rng.sample(pairs, 20000)
    for u, v in pairs:
        if not spec.contains(u * v):
            return refuted("product of two members leaves S", (u, v))
    return inconclusive(f"no failing pair among {len(pairs)} sampled products")


def check_quotient_group(spec: MonoidSpec, window: int = 3, degree: int = 3) -> None:
    """Refuse specs whose group of quotients is not the full lattice on the window."""
    members = monoid_box(spec, degree, window)
    for v in spec.window_vars(window):
        x = Monomial([(v, 1)])
        if not any(spec.contains(s * x) for s in members):
            raise InputError(f"{v} is not a difference of two members of {spec.name} (within degree {degree})")


def is_integrally_closed(spec: MonoidSpec, bounds: Bounds | None = None) -> Verdict:
    bounds = bounds or Bounds()
    if spec.shipped_only:
        return proved(
            "every rule is positively homogeneous (support of f^n equals support of f, linear rules scale), "
            "so f^n in S implies f in S"
        )
    for f in laurent_box(spec.window_vars(bounds.window), min(bounds.degree, 4)):
        if spec.contains(f):
            continue
        for n in range(2, 5):
            if spec.contains(f ** n):
                return refuted(f"f^{n} lies in S but f does not", f)
    return inconclusive("no non-member f with a power in S found within bounds")


def is_completely_integrally_closed(spec: MonoidSpec, bounds: Bounds | None = None) -> Verdict:
    bounds = bounds or Bounds()
    kinds = {type(r) for r in spec.rules}
    if spec.shipped_only and kinds <= {LinearDegreeRule, NonNegativityRule}:
        return proved(
            "S is the set of lattice points of a homogeneous rational cone; "
            "u*q^m in S for all m forces q into the cone (divide by m, let m grow)"
        )
    support_class = spec.shipped_only and kinds <= {SupportImplicationRule, NonNegativityRule}
    vs = spec.window_vars(bounds.window)
    us = [u for u in monoid_box(spec, min(bounds.degree, 3), bounds.window) if not u.is_one]
    qs = [q for q in laurent_box(vs, 2) if not q.is_one and not spec.contains(q)]
    for u in us:
        for q in qs:
            if support_class:
                # membership depends only on the sign pattern of u*q^m, constant once m > max|u_i|
                horizon = 1 + max((abs(e) for _, e in u.items()), default=0)
            else:
                horizon = 1 + u.total_degree()
            if all(spec.contains(u * q ** m) for m in range(1, horizon + 1)):
                if support_class:
                    return refuted(
                        "u*q^m lies in S for every m (sign pattern stabilises) but q does not", (u, q)
                    )
                return inconclusive(
                    f"candidate almost-integral element found for m <= {horizon}; no exact criterion applies",
                    (u, q),
                )
    return inconclusive("no cone criterion applies and no almost-integral non-member found within bounds")
