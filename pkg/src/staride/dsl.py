"""Scenario language: monoids, ideals, polynomials and assertions.

Statements are line-oriented; see ``docs/grammar.ebnf``.  :func:`parse`
returns a list of :class:`ScenarioAST` (one per ``scenario`` header) or
raises :class:`ParseError` carrying every diagnostic found.  Diagnostics
read ``file:line:col: message``.  :func:`print_scenarios` emits the
canonical form, and parse/print round-trip on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .lattice import ONE, Monomial, Selector, Var
from .monoid import LinearDegreeRule, NonNegativityRule, Rule, SupportImplicationRule
from .verdict import InputError

STATUSES = ("proved", "proved-within-bounds", "holds", "inconclusive", "refuted")
RESERVED = {"ring", "R"}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col: int
    end: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


@dataclass
class Diagnostic:
    span: SourceSpan
    message: str

    def __str__(self):
        return f"{self.span}: {self.message}"


class ParseError(InputError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(map(str, diagnostics)))


# ---------------------------------------------------------------------------
# AST (spans never take part in equality)


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    span: SourceSpan | None = _span()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class RingRef:
    span: SourceSpan | None = _span()

    def __str__(self):
        return "ring"


@dataclass(frozen=True)
class Gens:
    gens: tuple[Monomial, ...]
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"gens({', '.join(map(str, self.gens))})"


@dataclass(frozen=True)
class DegAtom:
    sel: Selector
    bound: int

    def __str__(self):
        return f"deg({self.sel}) >= {self.bound}"


@dataclass(frozen=True)
class ExistsAtom:
    sel: Selector

    def __str__(self):
        return f"exists {self.sel}"


@dataclass(frozen=True)
class ShiftAtom:
    m: Monomial

    def __str__(self):
        return f"shift {self.m}"


@dataclass(frozen=True)
class Constraint:
    atoms: tuple
    span: SourceSpan | None = _span()

    def __str__(self):
        return "constraint{" + "; ".join(map(str, self.atoms)) + "}"


@dataclass(frozen=True)
class Colon:
    left: "Expr"
    right: "Expr"
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"({self.left} : {self.right})"


@dataclass(frozen=True)
class Inter:
    parts: tuple
    span: SourceSpan | None = _span()

    def __str__(self):
        return " & ".join(map(str, self.parts))


@dataclass(frozen=True)
class Extend:
    inner: "Expr"
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"extend({self.inner})"


@dataclass(frozen=True)
class AdjoinE:
    inner: "Expr"
    var: str
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"adjoin({self.inner}, {self.var})"


Expr = Union[Ref, RingRef, Gens, Constraint, Colon, Inter, Extend, AdjoinE]


@dataclass(frozen=True)
class VarsDecl:
    names: tuple[str, ...]
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"vars {', '.join(self.names)}"


@dataclass(frozen=True)
class FamilyDecl:
    names: tuple[str, ...]
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"family {', '.join(self.names)}"


@dataclass(frozen=True)
class PolyVarDecl:
    name: str
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"polyvar {self.name}"


@dataclass(frozen=True)
class RuleDecl:
    rule: Rule
    span: SourceSpan | None = _span()

    def __str__(self):
        return str(self.rule)


@dataclass(frozen=True)
class BoundsDecl:
    degree: int
    window: int
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"bounds degree {self.degree} window {self.window}"


@dataclass(frozen=True)
class IdealDecl:
    name: str
    expr: Expr
    certify: str | None = None
    span: SourceSpan | None = _span()

    def __str__(self):
        tail = f" certify {self.certify}" if self.certify else ""
        return f"ideal {self.name} = {self.expr}{tail}"


@dataclass(frozen=True)
class PolyDecl:
    name: str
    text: str
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"poly {self.name} = {self.text}"


@dataclass(frozen=True)
class UpperDecl:
    name: str
    poly: str
    span: SourceSpan | None = _span()

    def __str__(self):
        return f"upper {self.name} = u2z({self.poly})"


@dataclass(frozen=True)
class AssertStmt:
    op: str
    args: tuple  # names (str) or monomials
    expect: str
    step: str | None = None
    span: SourceSpan | None = _span()

    def __str__(self):
        tail = f" step {_quote(self.step)}" if self.step is not None else ""
        return f"assert {self.op}({', '.join(map(str, self.args))}) is {self.expect}{tail}"


@dataclass(frozen=True)
class FixtureDecl:
    name: str
    ideal: str
    expects: tuple[tuple[str, str], ...] = ()
    witness: tuple[str, Monomial] | None = None
    span: SourceSpan | None = _span()

    def __str__(self):
        out = f"fixture {self.name} = {self.ideal}"
        if self.expects:
            out += " expect " + ", ".join(f"{k} is {v}" for k, v in self.expects)
        if self.witness:
            out += f" witness {self.witness[0]} at {self.witness[1]}"
        return out


@dataclass
class ScenarioAST:
    name: str
    statements: list
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __eq__(self, other):
        return isinstance(other, ScenarioAST) and self.name == other.name and self.statements == other.statements

    def __str__(self):
        return "\n".join([f"scenario {_quote(self.name)}"] + [str(s) for s in self.statements])


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def print_scenarios(scenarios: list[ScenarioAST]) -> str:
    return "\n\n".join(str(s) for s in scenarios) + "\n"


# ---------------------------------------------------------------------------
# operations: name -> argument kinds ("ideal", "upper", "any" = ideal or upper, "mono")

OPS: dict[str, tuple[str, ...]] = {
    "closed": (),
    "integrally_closed": (),
    "cic": (),
    "divisorial": ("any",),
    "strong": ("ideal",),
    "v_invertible": ("any",),
    "t_invertible": ("ideal",),
    "invertible": ("ideal",),
    "v_finite": ("any",),
    "t_ideal": ("ideal",),
    "prime": ("any",),
    "proper": ("ideal",),
    "maximal_divisorial": ("any",),
    "upperdiv": ("upper",),
    "equal": ("ideal", "ideal"),
    "subset": ("ideal", "ideal"),
    "member": ("ideal", "mono"),
    "t_member": ("ideal", "mono"),
    "maxdiv_rep": ("ideal", "mono"),
    "max_converse": ("ideal", "mono"),
    "not_t_maximal": ("any", "ideal", "mono"),
    "t_maximal": ("any", "ideal", "mono"),
    "certify": ("ideal", "mono", "mono*"),
}

FIXTURE_CLASSES = (
    "prime", "divisorial", "v-invertible", "v-finite",
    "maximal-divisorial", "t-invertible", "t-ideal", "t-maximal",
)


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<op>>=|<=|=>|[(){}\[\],;:&*^=\-+/])
    """,
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    col: int


def _lex(line: str, lineno: int, fname: str) -> list[Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise _Err(SourceSpan(fname, lineno, pos + 1, pos + 2), f"unexpected character {line[pos]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(Tok(kind, m.group(), pos + 1))
        pos = m.end()
    return toks


class _Err(Exception):
    def __init__(self, span: SourceSpan, message: str):
        self.span = span
        self.message = message


# ---------------------------------------------------------------------------
# parser


class _Line:
    """Token cursor over one statement line."""

    def __init__(self, toks: list[Tok], lineno: int, fname: str, raw: str):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.fname = fname
        self.raw = raw

    def span(self, tok: Tok | None = None) -> SourceSpan:
        if tok is None:
            col = len(self.raw) + 1 if self.i >= len(self.toks) else self.toks[self.i].col
            return SourceSpan(self.fname, self.lineno, col, col + 1)
        return SourceSpan(self.fname, self.lineno, tok.col, tok.col + len(tok.text))

    def peek(self, k: int = 0) -> Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text and t.kind != "string"

    def next(self) -> Tok:
        t = self.peek()
        if t is None:
            raise _Err(self.span(), "unexpected end of line")
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        t = self.peek()
        if t is None or t.text != text:
            got = "end of line" if t is None else repr(t.text)
            raise _Err(self.span(t), f"expected {text!r}, got {got}")
        self.i += 1
        return t

    def ident(self, what: str = "identifier") -> Tok:
        t = self.peek()
        if t is None or t.kind != "ident":
            got = "end of line" if t is None else repr(t.text)
            raise _Err(self.span(t), f"expected {what}, got {got}")
        self.i += 1
        return t

    def number(self) -> int:
        t = self.peek()
        if t is None or t.kind != "num":
            raise _Err(self.span(t), "expected a number")
        self.i += 1
        return int(t.text)

    def done(self) -> None:
        t = self.peek()
        if t is not None:
            raise _Err(self.span(t), f"unexpected {t.text!r}")


class _Parser:
    def __init__(self, text: str, fname: str):
        self.text = text
        self.fname = fname
        self.diags: list[Diagnostic] = []
        self.scenarios: list[ScenarioAST] = []
        self.cur: ScenarioAST | None = None
        self._reset_scope()

    def _reset_scope(self):
        self.scalars: set[str] = set()
        self.families: set[str] = set()
        self.polyvar = "X"
        self.kinds: dict[str, str] = {}

    # -- driver --------------------------------------------------------

    def run(self) -> list[ScenarioAST]:
        for n, raw in enumerate(self.text.splitlines(), start=1):
            try:
                toks = _lex(raw, n, self.fname)
                if not toks:
                    continue
                self.statement(_Line(toks, n, self.fname, raw))
            except _Err as e:
                self.diags.append(Diagnostic(e.span, e.message))
        if not self.scenarios and not self.diags:
            self.diags.append(Diagnostic(SourceSpan(self.fname, 1, 1, 1), "no scenario found"))
        if self.diags:
            raise ParseError(self.diags)
        return self.scenarios

    def statement(self, L: _Line) -> None:
        head = L.ident("a statement keyword")
        kw = head.text
        if kw == "scenario":
            t = L.next()
            if t.kind != "string":
                raise _Err(L.span(t), "expected a quoted scenario name")
            L.done()
            self.cur = ScenarioAST(_unquote(t.text), [], L.span(head))
            self.scenarios.append(self.cur)
            self._reset_scope()
            return
        if self.cur is None:
            raise _Err(L.span(head), "statement before any 'scenario' header")
        handler = getattr(self, "st_" + kw, None)
        if handler is None:
            raise _Err(L.span(head), f"unknown statement {kw!r}")
        node = handler(L, L.span(head))
        L.done()
        self.cur.statements.append(node)

    # -- declarations ----------------------------------------------------

    def _names(self, L: _Line) -> list[Tok]:
        out = [L.ident("a name")]
        while L.at(","):
            L.next()
            out.append(L.ident("a name"))
        return out

    def _fresh(self, L: _Line, tok: Tok) -> None:
        n = tok.text
        if n in RESERVED:
            raise _Err(L.span(tok), f"{n!r} is reserved")
        if n in self.scalars or n in self.families or n in self.kinds or n == self.polyvar and n in self.kinds:
            raise _Err(L.span(tok), f"{n!r} is already declared")

    def st_vars(self, L, span):
        toks = self._names(L)
        for t in toks:
            self._fresh(L, t)
            self.scalars.add(t.text)
        return VarsDecl(tuple(t.text for t in toks), span)

    def st_family(self, L, span):
        toks = self._names(L)
        for t in toks:
            self._fresh(L, t)
            self.families.add(t.text)
        return FamilyDecl(tuple(t.text for t in toks), span)

    def st_polyvar(self, L, span):
        t = L.ident("a variable name")
        if t.text in self.scalars or t.text in self.families:
            raise _Err(L.span(t), f"polynomial variable {t.text!r} clashes with a declared indeterminate")
        self.polyvar = t.text
        return PolyVarDecl(t.text, span)

    def st_bounds(self, L, span):
        L.expect("degree")
        d = L.number()
        L.expect("window")
        w = L.number()
        if d < 1 or w < 1:
            raise _Err(span, "degree and window must be >= 1 (families required)")
        return BoundsDecl(d, w, span)

    def st_rule(self, L, span):
        kind = L.ident("a rule kind")
        if kind.text == "nonneg":
            return RuleDecl(NonNegativityRule(), span)
        if kind.text == "linear":
            L.expect(":")
            L.expect("deg")
            L.expect("(")
            lhs = self.selector(L, (")",))
            L.expect(")")
            L.expect(">=")
            L.expect("deg")
            L.expect("(")
            fam = L.ident("a family")
            if fam.text not in self.families:
                raise _Err(L.span(fam), f"unknown family {fam.text!r}")
            L.expect("[")
            L.expect("*")
            L.expect("]")
            L.expect(")")
            return RuleDecl(LinearDegreeRule(lhs, fam.text), span)
        if kind.text == "support":
            L.expect(":")
            trig = L.ident("a trigger")
            fam_trigger = False
            if L.at("["):
                L.next()
                L.expect("n")
                L.expect("]")
                fam_trigger = True
                if trig.text not in self.families:
                    raise _Err(L.span(trig), f"unknown family {trig.text!r}")
            elif trig.text not in self.scalars:
                raise _Err(L.span(trig), f"unknown variable {trig.text!r}")
            L.expect("=>")
            wit = self.witnesses(L, fam_trigger)
            return RuleDecl(SupportImplicationRule(trig.text, wit, fam_trigger), span)
        raise _Err(L.span(kind), f"malformed rule: unknown rule kind {kind.text!r}")

    def witnesses(self, L: _Line, allow_n: bool) -> Selector:
        scalars, fams, members = [], [], []
        while True:
            if L.at("exists"):
                L.next()
                f, b = self.family_item(L, allow_n)
                fams.append((f, b))
            else:
                t = L.ident("a witness")
                if L.at("["):
                    L.next()
                    idx = L.number()
                    L.expect("]")
                    if t.text not in self.families:
                        raise _Err(L.span(t), f"unknown family {t.text!r}")
                    members.append(Var(t.text, idx))
                else:
                    if t.text not in self.scalars:
                        raise _Err(L.span(t), f"unknown variable {t.text!r}")
                    scalars.append(t.text)
            if not L.at("or"):
                break
            L.next()
        return Selector(tuple(scalars), tuple(fams), tuple(members))

    def family_item(self, L: _Line, allow_n: bool):
        f = L.ident("a family")
        if f.text not in self.families:
            raise _Err(L.span(f), f"unknown family {f.text!r}")
        L.expect("[")
        if L.at("*"):
            L.next()
            b = None
        else:
            L.expect("<=")
            if L.at("n"):
                if not allow_n:
                    raise _Err(L.span(L.peek()), "'n' is only meaningful in a family-triggered rule")
                L.next()
                b = "n"
            else:
                b = L.number()
        L.expect("]")
        return f.text, b

    def selector(self, L: _Line, stop: tuple[str, ...]) -> Selector:
        scalars, fams, members = [], [], []
        everything = False
        while True:
            if L.at("*"):
                L.next()
                everything = True
            else:
                t = L.ident("a variable")
                if L.at("["):
                    if L.peek(1) is not None and L.peek(1).kind == "num":
                        L.next()
                        idx = L.number()
                        L.expect("]")
                        if t.text not in self.families:
                            raise _Err(L.span(t), f"unknown family {t.text!r}")
                        members.append(Var(t.text, idx))
                    else:
                        L.i -= 1
                        fams.append(self.family_item(L, False))
                else:
                    if t.text not in self.scalars and t.text != self.polyvar:
                        raise _Err(L.span(t), f"unknown variable {t.text!r}")
                    scalars.append(t.text)
            if not L.at(","):
                break
            L.next()
        if everything:
            return Selector.all()
        return Selector(tuple(scalars), tuple(fams), tuple(members))

    def monomial(self, L: _Line) -> Monomial:
        if L.peek() is not None and L.peek().kind == "num":
            t = L.next()
            if t.text != "1":
                raise _Err(L.span(t), "the only numeric monomial is 1")
            return ONE
        entries = []
        while True:
            t = L.ident("a monomial factor")
            idx = None
            if L.at("["):
                L.next()
                idx = L.number()
                L.expect("]")
                if idx < 1:
                    raise _Err(L.span(t), "family index must be >= 1")
                if t.text not in self.families:
                    raise _Err(L.span(t), f"unknown family {t.text!r}")
            elif t.text not in self.scalars and t.text != self.polyvar:
                raise _Err(L.span(t), f"unknown variable {t.text!r}")
            e = 1
            if L.at("^"):
                L.next()
                sign = 1
                if L.at("-"):
                    L.next()
                    sign = -1
                e = sign * L.number()
            entries.append((Var(t.text, idx), e))
            if not L.at("*"):
                break
            L.next()
        return Monomial(entries)

    # -- ideals ----------------------------------------------------------

    def st_ideal(self, L, span):
        name = L.ident("an ideal name")
        self._fresh(L, name)
        L.expect("=")
        e = self.expr(L)
        cert = None
        if L.at("certify"):
            L.next()
            c = L.ident("a family")
            if c.text not in self.families:
                raise _Err(L.span(c), f"unknown certificate family {c.text!r}")
            cert = c.text
        self.kinds[name.text] = "ideal"
        return IdealDecl(name.text, e, cert, span)

    def expr(self, L: _Line):
        start = L.span()
        parts = [self.term(L)]
        while L.at("&"):
            L.next()
            parts.append(self.term(L))
        if len(parts) == 1:
            return parts[0]
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Inter) else [p])
        return Inter(tuple(flat), start)

    def term(self, L: _Line):
        t = L.peek()
        sp = L.span()
        if t is None:
            raise _Err(sp, "expected an ideal expression")
        if t.text == "(":
            L.next()
            a = self.expr(L)
            if L.at(":"):
                L.next()
                b = self.expr(L)
                L.expect(")")
                return Colon(a, b, sp)
            L.expect(")")
            return a
        if t.kind != "ident":
            raise _Err(sp, f"expected an ideal expression, got {t.text!r}")
        L.next()
        if t.text in RESERVED:
            return RingRef(sp)
        if t.text == "gens":
            L.expect("(")
            if L.at(")"):
                raise _Err(L.span(), "empty generator list")
            gens = [self.monomial(L)]
            while L.at(","):
                L.next()
                gens.append(self.monomial(L))
            L.expect(")")
            return Gens(tuple(gens), sp)
        if t.text == "constraint":
            L.expect("{")
            atoms = [self.atom(L)]
            while L.at(";"):
                L.next()
                atoms.append(self.atom(L))
            L.expect("}")
            return Constraint(tuple(atoms), sp)
        if t.text == "extend":
            L.expect("(")
            a = self.expr(L)
            L.expect(")")
            return Extend(a, sp)
        if t.text == "adjoin":
            L.expect("(")
            a = self.expr(L)
            L.expect(",")
            v = L.ident("a variable")
            if v.text not in self.scalars:
                raise _Err(L.span(v), f"unknown variable {v.text!r}")
            L.expect(")")
            return AdjoinE(a, v.text, sp)
        kind = self.kinds.get(t.text)
        if kind is None:
            raise _Err(sp, f"unknown identifier {t.text!r}")
        if kind != "ideal":
            raise _Err(sp, f"type mismatch: {t.text!r} is a {kind}, an ideal is expected")
        return Ref(t.text, sp)

    def atom(self, L: _Line):
        t = L.ident("a constraint atom")
        if t.text == "deg":
            L.expect("(")
            sel = self.selector(L, (")",))
            L.expect(")")
            L.expect(">=")
            sign = 1
            if L.at("-"):
                L.next()
                sign = -1
            return DegAtom(sel, sign * L.number())
        if t.text == "exists":
            return ExistsAtom(self.selector(L, (";", "}")))
        if t.text == "shift":
            return ShiftAtom(self.monomial(L))
        raise _Err(L.span(t), f"unknown constraint atom {t.text!r}")

    # -- polynomials -----------------------------------------------------

    def st_poly(self, L, span):
        name = L.ident("a polynomial name")
        self._fresh(L, name)
        eq = L.expect("=")
        text = L.raw[eq.col:].split("#", 1)[0].strip()
        from .polyext import RingPoly

        try:
            p = RingPoly.parse(text, self.polyvar)
        except InputError as e:
            raise _Err(L.span(L.peek()), str(e)) from None
        for m in p.monomials():
            for v in m:
                ok = (v.index is None and (v.name in self.scalars or v.name == self.polyvar)) or (
                    v.index is not None and v.name in self.families
                )
                if not ok:
                    raise _Err(L.span(L.peek()), f"unknown variable {v} in polynomial")
        L.i = len(L.toks)
        self.kinds[name.text] = "poly"
        return PolyDecl(name.text, str(p), span)

    def st_upper(self, L, span):
        name = L.ident("a name")
        self._fresh(L, name)
        L.expect("=")
        L.expect("u2z")
        L.expect("(")
        p = L.ident("a polynomial")
        kind = self.kinds.get(p.text)
        if kind is None:
            raise _Err(L.span(p), f"unknown identifier {p.text!r}")
        if kind != "poly":
            raise _Err(L.span(p), f"type mismatch: {p.text!r} is a {kind}, a poly is expected")
        L.expect(")")
        self.kinds[name.text] = "upper"
        return UpperDecl(name.text, p.text, span)

    # -- assertions and fixtures -----------------------------------------

    def status(self, L: _Line) -> str:
        t = L.ident("a verdict")
        if t.text not in STATUSES:
            raise _Err(L.span(t), f"unknown verdict {t.text!r} (expected one of {', '.join(STATUSES)})")
        return t.text

    def _arg(self, L: _Line, kind: str):
        if kind.startswith("mono"):
            return self.monomial(L)
        t = L.ident("a name")
        if t.text in RESERVED and kind in ("ideal", "any"):
            return "ring"
        got = self.kinds.get(t.text)
        if got is None:
            raise _Err(L.span(t), f"unknown identifier {t.text!r}")
        want = ("ideal", "upper") if kind == "any" else (kind,)
        if got not in want:
            raise _Err(L.span(t), f"type mismatch: {t.text!r} is a {got}, expected {' or '.join(want)}")
        return t.text

    def st_assert(self, L, span):
        op = L.ident("an operation")
        sig = OPS.get(op.text)
        if sig is None:
            raise _Err(L.span(op), f"unknown operation {op.text!r}")
        L.expect("(")
        args = []
        kinds = list(sig)
        while not L.at(")"):
            if args:
                L.expect(",")
            if not kinds:
                raise _Err(L.span(), f"too many arguments for {op.text}")
            k = kinds[0] if not kinds[0].endswith("*") else kinds[0]
            args.append(self._arg(L, k))
            if not kinds[0].endswith("*"):
                kinds.pop(0)
        L.expect(")")
        if kinds and not kinds[0].endswith("*"):
            raise _Err(L.span(), f"{op.text} expects {len(sig)} arguments")
        L.expect("is")
        st = self.status(L)
        step = None
        if L.at("step"):
            L.next()
            t = L.next()
            if t.kind != "string":
                raise _Err(L.span(t), "expected a quoted step tag")
            step = _unquote(t.text)
        return AssertStmt(op.text, tuple(args), st, step, span)

    def st_fixture(self, L, span):
        name = L.ident("a fixture name")
        L.expect("=")
        ideal = self._arg(L, "any")
        expects = []
        if L.at("expect"):
            L.next()
            while True:
                c = L.ident("a class")
                if c.text not in FIXTURE_CLASSES:
                    raise _Err(L.span(c), f"unknown class {c.text!r}")
                L.expect("is")
                expects.append((c.text, self.status(L)))
                if not L.at(","):
                    break
                L.next()
        witness = None
        if L.at("witness"):
            L.next()
            w = self._arg(L, "ideal")
            L.expect("at")
            witness = (w, self.monomial(L))
        return FixtureDecl(name.text, ideal, tuple(expects), witness, span)


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


def parse(text: str, fname: str = "<input>") -> list[ScenarioAST]:
    return _Parser(text, fname).run()


def parse_scenario(text: str, fname: str = "<input>") -> ScenarioAST:
    """Exactly one scenario."""
    out = parse(text, fname)
    if len(out) != 1:
        raise ParseError([Diagnostic(SourceSpan(fname, 1, 1, 1), f"expected one scenario, found {len(out)}")])
    return out[0]
