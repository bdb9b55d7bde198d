"""Three-valued verdicts, search bounds and the package's exceptions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class StarideError(Exception):
    pass


class InputError(StarideError, ValueError):
    """Malformed or unsupported input (CLI exit code 3)."""


class RepresentationError(StarideError, TypeError):
    """Operation not available for this ideal representation."""


class PreconditionError(StarideError):
    pass


class Status(enum.Enum):
    PROVED = "proved"
    BOUNDED = "proved-within-bounds"
    INCONCLUSIVE = "inconclusive"
    REFUTED = "refuted"


# meet order: Refuted dominates, then Inconclusive, then bounded, then Proved
_RANK = {Status.PROVED: 0, Status.BOUNDED: 1, Status.INCONCLUSIVE: 2, Status.REFUTED: 3}


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: str = ""
    witness: Any = None
    evidence: tuple = ()

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def holds(self) -> bool:
        """Proved outright or within the search bounds."""
        return self.status in (Status.PROVED, Status.BOUNDED)

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def negate(self, reason: str | None = None) -> "Verdict":
        """Verdict for the negated claim; bounded support stays inconclusive."""
        flip = {Status.PROVED: Status.REFUTED, Status.REFUTED: Status.PROVED}
        st = flip.get(self.status, Status.INCONCLUSIVE)
        return Verdict(st, reason or self.reason, self.witness, self.evidence)

    def weaken(self) -> "Verdict":
        """Downgrade an exact Proved to Proved-within-bounds (bounded data involved)."""
        if self.status is Status.PROVED:
            return Verdict(Status.BOUNDED, self.reason, self.witness, self.evidence)
        return self

    def with_evidence(self, *items) -> "Verdict":
        return Verdict(self.status, self.reason, self.witness, self.evidence + tuple(items))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = render(self.witness)
        if self.evidence:
            out["evidence"] = [render(e) for e in self.evidence]
        return out

    def __str__(self):
        w = f" witness={render(self.witness)}" if self.witness is not None else ""
        return f"{self.status.value}{w}: {self.reason}"


def render(obj):
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): render(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [render(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


def proved(reason: str, witness=None, *evidence) -> Verdict:
    return Verdict(Status.PROVED, reason, witness, tuple(evidence))


def bounded(reason: str, witness=None, *evidence) -> Verdict:
    return Verdict(Status.BOUNDED, reason, witness, tuple(evidence))


def refuted(reason: str, witness=None, *evidence) -> Verdict:
    return Verdict(Status.REFUTED, reason, witness, tuple(evidence))


def inconclusive(reason: str, witness=None, *evidence) -> Verdict:
    return Verdict(Status.INCONCLUSIVE, reason, witness, tuple(evidence))


def meet(*verdicts: Verdict, reason: str | None = None) -> Verdict:
    """Conjunction: the worst verdict wins, evidence is concatenated."""
    if not verdicts:
        return proved(reason or "empty conjunction")
    worst = max(verdicts, key=lambda v: _RANK[v.status])
    evidence = tuple(e for v in verdicts for e in v.evidence)
    return Verdict(worst.status, reason or worst.reason, worst.witness, evidence)


@dataclass(frozen=True)
class Bounds:
    """Search dials.

    ``degree`` bounds the total degree of enumerated monoid elements and
    ``window`` the family indices (1..window).  Dual (colon) computations
    test multipliers of degree ``dual_degree`` on a window reaching
    ``window`` indices past the element under test.
    """

    degree: int = 8
    window: int = 3
    seed: int = 0
    dual_degree: int = 3
    samples: int = 24

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"degree bound must be >= 1, got {self.degree}")
        if self.window < 1:
            raise InputError(f"family window must be >= 1 (families required), got {self.window}")
        if self.dual_degree < 1:
            raise InputError("dual degree must be >= 1")

    @property
    def wide_window(self) -> int:
        return 2 * self.window

    def to_json(self) -> dict:
        return {"degree": self.degree, "window": self.window, "seed": self.seed, "dual_degree": self.dual_degree}


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class Exactness:
    exact: bool
    bounds: Bounds | None = field(default=None)

    @classmethod
    def up_to(cls, b: Bounds) -> "Exactness":
        return cls(False, b)

    def __and__(self, other: "Exactness") -> "Exactness":
        if self.exact and other.exact:
            return EXACT
        return Exactness(False, self.bounds or other.bounds)

    def __str__(self):
        if self.exact:
            return "exact"
        b = self.bounds
        return f"up-to-bound(degree={b.degree}, window={b.window})" if b else "up-to-bound"


EXACT = Exactness(True)
