"""Exact and bounded star-operation reasoning on monoid rings k[S]."""

from .verdict import Bounds, InputError, PreconditionError, RepresentationError, Status, Verdict, meet
from .lattice import Monomial, Selector, Var, parse_monomial
from .monoid import MonoidSpec
from .ideals import ConstraintIdeal, FinGen, colon, colon_R, unit_ideal
from .dsl import ParseError, parse, print_scenarios

__version__ = "0.1.0"

__all__ = [
    "Bounds", "InputError", "PreconditionError", "RepresentationError", "Status", "Verdict", "meet",
    "Monomial", "Selector", "Var", "parse_monomial", "MonoidSpec",
    "ConstraintIdeal", "FinGen", "colon", "colon_R", "unit_ideal",
    "ParseError", "parse", "print_scenarios",
]
