"""Laurent monomials as finite-support integer vectors.

Indeterminates are either scalars (``y``) or members of an indexed family
(``t[3]``).  Families are never enumerated; any computation only touches the
finite support of the vectors involved, and :func:`fresh_index` hands out
unused family members on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Mapping

from .verdict import InputError


@total_ordering
@dataclass(frozen=True)
class Var:
    name: str
    index: int | None = None

    def __post_init__(self):
        if self.index is not None and self.index < 1:
            raise InputError(f"family index must be positive, got {self.index}")

    @property
    def is_scalar(self) -> bool:
        return self.index is None

    def sort_key(self):
        # scalars before family members; then by name and index
        return (0, self.name, 0) if self.index is None else (1, self.name, self.index)

    def __lt__(self, other):
        if not isinstance(other, Var):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return self.name if self.index is None else f"{self.name}[{self.index}]"

    def __repr__(self):
        return f"Var({str(self)!r})"


class Monomial:
    """An immutable Laurent monomial ``{Var: exponent}`` with no zero entries."""

    __slots__ = ("_map", "_key", "_items")

    def __init__(self, entries: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[Var, int] = {}
        for v, e in entries:
            if not isinstance(v, Var):
                raise TypeError(f"expected Var, got {type(v).__name__}")
            acc[v] = acc.get(v, 0) + int(e)
        self._set({v: e for v, e in acc.items() if e != 0})

    def _set(self, d: dict) -> None:
        self._map = d
        self._key = frozenset(d.items())
        self._items = None

    @classmethod
    def _from_dict(cls, d: dict) -> "Monomial":
        out = cls.__new__(cls)
        out._set(d)
        return out

    @classmethod
    def var(cls, name: str, index: int | None = None, exp: int = 1) -> "Monomial":
        return cls([(Var(name, index), exp)])

    # -- basic protocol -------------------------------------------------

    def items(self) -> tuple[tuple[Var, int], ...]:
        if self._items is None:
            self._items = tuple(sorted(self._map.items(), key=lambda p: p[0].sort_key()))
        return self._items

    def __getitem__(self, v: Var) -> int:
        return self._map.get(v, 0)

    def __iter__(self) -> Iterator[Var]:
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __bool__(self):
        # the empty monomial is 1, which is still a value; never falsy
        return True

    def sort_key(self):
        return (self.total_degree(), tuple((v.sort_key(), e) for v, e in self.items()))

    def __lt__(self, other: "Monomial"):
        return self.sort_key() < other.sort_key()

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._map:
            return self
        if not self._map:
            return other
        acc = dict(self._map)
        for v, e in other._map.items():
            n = acc.get(v, 0) + e
            if n:
                acc[v] = n
            else:
                del acc[v]
        return Monomial._from_dict(acc)

    def inverse(self) -> "Monomial":
        return Monomial._from_dict({v: -e for v, e in self._map.items()})

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._map:
            return self
        acc = dict(self._map)
        for v, e in other._map.items():
            n = acc.get(v, 0) - e
            if n:
                acc[v] = n
            else:
                del acc[v]
        return Monomial._from_dict(acc)

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return ONE
        return Monomial._from_dict({v: e * n for v, e in self._map.items()})

    # -- queries ----------------------------------------------------------

    @property
    def is_one(self) -> bool:
        return not self._map

    def support(self) -> frozenset[Var]:
        return frozenset(self._map)

    def occurs(self, v: Var) -> bool:
        return self._map.get(v, 0) > 0

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self._map.values())

    def total_degree(self) -> int:
        return sum(self._map.values())

    def span(self) -> int:
        """Sum of absolute exponents."""
        return sum(abs(e) for e in self._map.values())

    def degree(self, d: "Selector") -> int:
        return sum(e for v, e in self._map.items() if d.selects(v))

    def indices(self, family: str | None = None) -> set[int]:
        return {v.index for v in self._map if v.index is not None and (family is None or v.name == family)}

    def max_index(self) -> int:
        return max((v.index for v in self._map if v.index is not None), default=0)

    def families(self) -> set[str]:
        return {v.name for v in self._map if v.index is not None}

    def scalars(self) -> set[str]:
        return {v.name for v in self._map if v.index is None}

    # -- text -----------------------------------------------------------

    def __str__(self):
        if not self._map:
            return "1"
        parts = []
        for v, e in self.items():
            parts.append(str(v) if e == 1 else f"{v}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        return parse_monomial(text)


ONE = Monomial()


def mul(a: Monomial, b: Monomial) -> Monomial:
    return a * b


@dataclass(frozen=True)
class Selector:
    """A set of indeterminates: explicit scalars, members, and (bounded) families.

    A family bound is ``None`` (every index), an int (indices up to it), or
    the string ``"n"``: indices up to the index of a rule's trigger, resolved
    with :meth:`resolve`.
    """

    scalars: tuple[str, ...] = ()
    families: tuple[tuple[str, int | str | None], ...] = ()
    members: tuple[Var, ...] = ()
    everything: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scalars", tuple(sorted(set(self.scalars))))
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        fams = sorted(set(self.families), key=lambda p: (p[0], _bound_key(p[1])))
        object.__setattr__(self, "families", tuple(fams))

    @classmethod
    def of(cls, *names: str) -> "Selector":
        return cls(scalars=tuple(names))

    @classmethod
    def family(cls, name: str, bound: int | str | None = None) -> "Selector":
        return cls(families=((name, bound),))

    @classmethod
    def all(cls) -> "Selector":
        return cls(everything=True)

    def selects(self, v: Var) -> bool:
        if self.everything:
            return True
        if v.index is None:
            return v.name in self.scalars
        if v in self.members:
            return True
        for name, bound in self.families:
            if name == v.name:
                if bound is None:
                    return True
                if isinstance(bound, str):
                    raise ValueError("relative selector must be resolved before use")
                if v.index <= bound:
                    return True
        return False

    @property
    def is_relative(self) -> bool:
        return any(isinstance(b, str) for _, b in self.families)

    def resolve(self, index: int | None) -> "Selector":
        """Bind relative family bounds to ``index`` (``None``: unbounded)."""
        fams = tuple((n, index if isinstance(b, str) else b) for n, b in self.families)
        return Selector(self.scalars, fams, self.members, self.everything)

    def union(self, other: "Selector") -> "Selector":
        if self.everything or other.everything:
            return Selector.all()
        return Selector(self.scalars + other.scalars, self.families + other.families, self.members + other.members)

    def issubset(self, other: "Selector") -> bool:
        """Conservative inclusion test (every selected variable of self is selected by other)."""
        if other.everything:
            return True
        if self.everything:
            return False
        if not set(self.scalars) <= set(other.scalars):
            return False
        if not all(other.selects(v) for v in self.members):
            return False
        for name, bound in self.families:
            if isinstance(bound, str):
                return False
            covered = False
            for oname, obound in other.families:
                if oname != name or isinstance(obound, str):
                    continue
                if obound is None or (bound is not None and bound <= obound):
                    covered = True
                    break
            if not covered:
                return False
        return True

    def occurs_in(self, u: Monomial) -> bool:
        return any(e > 0 and self.selects(v) for v, e in u.items())

    def __str__(self):
        if self.everything:
            return "*"
        parts = list(self.scalars)
        for name, bound in self.families:
            if bound is None:
                parts.append(f"{name}[*]")
            else:
                parts.append(f"{name}[<={bound}]")
        parts.extend(str(m) for m in self.members)
        return ",".join(parts)


def _bound_key(b):
    if b is None:
        return (2, 0)
    if isinstance(b, str):
        return (1, 0)
    return (0, b)


DegreeFunctional = Selector


def degree(u: Monomial, d: Selector) -> int:
    return u.degree(d)


def fresh_index(family: str, used: Iterable[Monomial]) -> int:
    """Smallest positive index of ``family`` occurring in none of ``used``."""
    taken: set[int] = set()
    for u in used:
        taken |= u.indices(family)
    n = 1
    while n in taken:
        n += 1
    return n


def index_ceiling(used: Iterable[Monomial]) -> int:
    """One more than every family index occurring in ``used`` (any family)."""
    return 1 + max((u.max_index() for u in used), default=0)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)(?:\[(\d+)\])?(?:\^(-?\d+))?\s*")


def parse_monomial(text: str) -> Monomial:
    """Parse ``y*z*t[1]^2`` / ``y^-1`` / ``1``."""
    s = text.strip()
    if s == "1":
        return ONE
    if not s:
        raise InputError("empty monomial")
    entries = []
    for chunk in s.split("*"):
        m = _TOKEN.fullmatch(chunk)
        if not m:
            raise InputError(f"malformed monomial factor {chunk.strip()!r}")
        name, idx, exp = m.groups()
        entries.append((Var(name, int(idx) if idx else None), int(exp) if exp else 1))
    return Monomial(entries)
