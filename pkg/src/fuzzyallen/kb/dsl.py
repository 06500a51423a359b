"""Line-oriented text format for knowledge bases of temporal constraints.

::

    # comments run to the end of the line
    horizon 10
    event A fixed trapezoid(0, 1, 2, 3) happ 1
    event B trainable init logits(0, 0, 0, 0, 0)
    scalar x trainable init 0
    batch S = A, B
    constraint duration(B) ~= 2 and B af A
    constraint not (End(A) at x)
    constraint forall e over S: happ(e)

Formulas combine relation atoms ``term REL term`` (REL one of bf af mt ol
st dr fin eq in), membership atoms ``term at t``, ``duration(name) ~= k``
and ``happ(name)`` with ``not``, ``and`` and parentheses. Terms are event
names, optionally wrapped in Start, End, Before or After.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from ..interval import FuzzyInterval, IntervalError
from ..relations import RELATION_NAMES

FUNCTIONS = ("Start", "End", "Before", "After")
KEYWORDS = frozenset(
    {"event", "fixed", "trainable", "trapezoid", "happ", "init", "logits", "scalar",
     "horizon", "constraint", "batch", "not", "and", "at", "duration", "forall", "over"}
    | set(RELATION_NAMES)
    | set(FUNCTIONS)
)


class KBError(Exception):
    kind = "error"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {self.kind}: {message}")
        self.message = message
        self.line = line
        self.col = col


class LexError(KBError):
    kind = "lexical error"


class ParseError(KBError):
    kind = "parse error"


class SemanticError(KBError):
    kind = "semantic error"


@dataclass(frozen=True)
class Pos:
    line: int = 0
    col: int = 0


def _pos():
    return field(default=Pos(), compare=False, repr=False)


# terms


@dataclass(frozen=True)
class Ref:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Apply:
    func: str
    arg: "Term"
    pos: Pos = _pos()


Term = Union[Ref, Apply]

# formulas


@dataclass(frozen=True)
class Relation:
    rel: str
    left: Term
    right: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class DurationEq:
    name: str
    value: float
    pos: Pos = _pos()


@dataclass(frozen=True)
class At:
    term: Term
    time: Union[float, str]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Happ:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    arg: "Formula"
    pos: Pos = _pos()


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Forall:
    var: str
    batch: str
    body: "Formula"
    pos: Pos = _pos()


Formula = Union[Relation, DurationEq, At, Happ, Not, And, Forall]

# declarations


@dataclass(frozen=True)
class EventDecl:
    name: str
    trainable: bool
    params: Optional[tuple] = None
    happ: Optional[float] = None
    logits: Optional[tuple] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class ScalarDecl:
    name: str
    init: Optional[float] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class HorizonDecl:
    value: float
    pos: Pos = _pos()


@dataclass(frozen=True)
class BatchDecl:
    name: str
    members: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Constraint:
    formula: Formula
    pos: Pos = _pos()


Statement = Union[EventDecl, ScalarDecl, HorizonDecl, BatchDecl, Constraint]


@dataclass(frozen=True)
class Program:
    statements: tuple

    def _of(self, kind):
        return [s for s in self.statements if isinstance(s, kind)]

    @property
    def events(self) -> dict[str, EventDecl]:
        return {s.name: s for s in self._of(EventDecl)}

    @property
    def scalars(self) -> dict[str, ScalarDecl]:
        return {s.name: s for s in self._of(ScalarDecl)}

    @property
    def batches(self) -> dict[str, BatchDecl]:
        return {s.name: s for s in self._of(BatchDecl)}

    @property
    def constraints(self) -> list[Formula]:
        return [s.formula for s in self._of(Constraint)]

    @property
    def horizon(self) -> Optional[float]:
        found = self._of(HorizonDecl)
        return found[0].value if found else None


# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<number>-?(?:inf\b|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>~=|[(),:=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", "keyword", "op", "eol"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[list[Token]]:
    """Split into one token list per non-empty line."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = []
        i = 0
        while i < len(raw):
            m = _TOKEN_RE.match(raw, i)
            if m is None:
                raise LexError(f"unexpected character {raw[i]!r}", lineno, i + 1)
            kind = m.lastgroup
            if kind == "ident" and m.group() in KEYWORDS:
                kind = "keyword"
            if kind not in ("ws", "comment"):
                toks.append(Token(kind, m.group(), lineno, i + 1))
            i = m.end()
        if toks:
            toks.append(Token("eol", "", lineno, len(raw) + 1))
            lines.append(toks)
    return lines


# parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of line" if tok.kind == "eol" else repr(tok.text)
        raise ParseError(f"expected {what}, found {found}", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("keyword", "op") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def name(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("a name")
        return self.advance()

    def number(self) -> float:
        if self.tok.kind != "number":
            self.fail("a number")
        return float(self.advance().text)

    def numbers(self, count: int, what: str) -> tuple:
        open_tok = self.expect("(")
        vals = [self.number()]
        while self.at(","):
            self.advance()
            vals.append(self.number())
        self.expect(")")
        if len(vals) != count:
            raise ParseError(f"{what} takes {count} numbers, got {len(vals)}", open_tok.line, open_tok.col)
        return tuple(vals)

    def end_of_line(self):
        if self.tok.kind != "eol":
            self.fail("end of line")

    # statements

    def statement(self) -> Statement:
        tok = self.tok
        pos = Pos(tok.line, tok.col)
        if self.at("event"):
            self.advance()
            name = self.name().text
            if self.at("fixed"):
                self.advance()
                lit = self.expect("trapezoid")
                params = self.numbers(4, "trapezoid")
                try:
                    FuzzyInterval(*params)
                except IntervalError as exc:
                    raise ParseError(f"malformed trapezoid: {exc}", lit.line, lit.col) from None
                happ = None
                if self.at("happ"):
                    self.advance()
                    happ = self.number()
                stmt = EventDecl(name, False, params=params, happ=happ, pos=pos)
            elif self.at("trainable"):
                self.advance()
                logits = None
                if self.at("init"):
                    self.advance()
                    self.expect("logits")
                    logits = self.numbers(5, "logits")
                stmt = EventDecl(name, True, logits=logits, pos=pos)
            else:
                self.fail("'fixed' or 'trainable'")
        elif self.at("scalar"):
            self.advance()
            name = self.name().text
            self.expect("trainable")
            init = None
            if self.at("init"):
                self.advance()
                init = self.number()
            stmt = ScalarDecl(name, init, pos=pos)
        elif self.at("horizon"):
            self.advance()
            stmt = HorizonDecl(self.number(), pos=pos)
        elif self.at("batch"):
            self.advance()
            name = self.name().text
            self.expect("=")
            members = [self.name().text]
            while self.at(","):
                self.advance()
                members.append(self.name().text)
            stmt = BatchDecl(name, tuple(members), pos=pos)
        elif self.at("constraint"):
            self.advance()
            stmt = Constraint(self.formula(), pos=pos)
        else:
            self.fail("a statement (event, scalar, horizon, batch or constraint)")
        self.end_of_line()
        return stmt

    # formulas

    def formula(self) -> Formula:
        if self.at("forall"):
            tok = self.advance()
            var = self.name().text
            self.expect("over")
            batch = self.name().text
            self.expect(":")
            return Forall(var, batch, self.formula(), pos=Pos(tok.line, tok.col))
        left = self.unary()
        while self.at("and"):
            tok = self.advance()
            left = And(left, self.unary(), pos=Pos(tok.line, tok.col))
        return left

    def unary(self) -> Formula:
        tok = self.tok
        pos = Pos(tok.line, tok.col)
        if self.at("forall"):
            return self.formula()  # the body runs to the end, as at top level
        if self.at("not"):
            self.advance()
            return Not(self.unary(), pos=pos)
        if self.at("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if self.at("happ"):
            self.advance()
            self.expect("(")
            name = self.name().text
            self.expect(")")
            return Happ(name, pos=pos)
        if self.at("duration"):
            self.advance()
            self.expect("(")
            name = self.name().text
            self.expect(")")
            self.expect("~=")
            return DurationEq(name, self.number(), pos=pos)
        if self.tok.kind == "ident" or (self.tok.kind == "keyword" and self.tok.text in FUNCTIONS):
            term = self.term()
            if self.at("at"):
                self.advance()
                if self.tok.kind == "number":
                    time = self.number()
                elif self.tok.kind == "ident":
                    time = self.advance().text
                else:
                    self.fail("a time point (number or scalar name)")
                return At(term, time, pos=pos)
            if self.tok.kind == "keyword" and self.tok.text in RELATION_NAMES:
                rel = self.advance().text
                return Relation(rel, term, self.term(), pos=pos)
            self.fail("a relation or 'at'")
        self.fail("a formula")

    def term(self) -> Term:
        tok = self.tok
        pos = Pos(tok.line, tok.col)
        if tok.kind == "keyword" and tok.text in FUNCTIONS:
            self.advance()
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return Apply(tok.text, arg, pos=pos)
        return Ref(self.name().text, pos=pos)


def parse_program(text: str) -> Program:
    """Syntax only; see :func:`parse_kb` for the checked version."""
    return Program(tuple(_Parser(line).statement() for line in tokenize(text)))


def parse_kb(text: str) -> Program:
    """Parse and semantically check a knowledge base."""
    program = parse_program(text)
    check_program(program)
    return program


# semantic checks

_NEEDS = {
    # relation: (sides of the left term that must be finite, same for the right term)
    "in": ("lr", ""),
    "eq": ("lr", "lr"),
    "bf": ("lr", "l"),
    "af": ("lr", "r"),
    "mt": ("r", "l"),
    "st": ("lr", "lr"),
    "dr": ("lr", "lr"),
    "fin": ("lr", "lr"),
    "ol": ("lr", "lr"),
}


class _Checker:
    def __init__(self, program: Program):
        self.program = program
        self.events: dict[str, tuple[bool, bool]] = {}
        self.scalars: set[str] = set()
        self.batches: dict[str, tuple] = {}

    def error(self, msg, pos: Pos):
        raise SemanticError(msg, pos.line, pos.col)

    def run(self):
        seen_horizon = False
        for s in self.program.statements:
            if isinstance(s, (EventDecl, ScalarDecl, BatchDecl)):
                if s.name in self.events or s.name in self.scalars or s.name in self.batches:
                    self.error(f"{s.name!r} is declared twice", s.pos)
            if isinstance(s, EventDecl):
                if s.trainable:
                    self.events[s.name] = (False, False)
                else:
                    I = FuzzyInterval(*s.params)
                    self.events[s.name] = (I.left_infinite, I.right_infinite)
                    if s.happ is not None and not 0.0 <= s.happ <= 1.0:
                        self.error(f"happ of {s.name!r} must lie in [0, 1]", s.pos)
            elif isinstance(s, ScalarDecl):
                self.scalars.add(s.name)
            elif isinstance(s, HorizonDecl):
                if seen_horizon:
                    self.error("horizon is declared twice", s.pos)
                if not (s.value > 0 and math.isfinite(s.value)):
                    self.error("horizon must be a positive number", s.pos)
                seen_horizon = True
            elif isinstance(s, BatchDecl):
                for m in s.members:
                    if m not in self.events:
                        self.error(f"batch member {m!r} is not a declared event", s.pos)
                self.batches[s.name] = s.members
            elif isinstance(s, Constraint):
                self.formula(s.formula, {})

    def event_sides(self, name, scope, pos):
        if name in scope:
            return scope[name]
        if name in self.events:
            return self.events[name]
        self.error(f"undeclared event {name!r}", pos)

    def term(self, t: Term, scope) -> tuple[bool, bool]:
        """Whether the term's interval is (left-infinite, right-infinite)."""
        if isinstance(t, Ref):
            return self.event_sides(t.name, scope, t.pos)
        left_inf, right_inf = self.term(t.arg, scope)
        if t.func in ("Start", "Before") and left_inf:
            self.error(f"{t.func} of a left-infinite term", t.pos)
        if t.func in ("End", "After") and right_inf:
            self.error(f"{t.func} of a right-infinite term", t.pos)
        return {"Start": (False, False), "End": (False, False),
                "Before": (True, False), "After": (False, True)}[t.func]

    def formula(self, f: Formula, scope):
        if isinstance(f, Relation):
            sides = (self.term(f.left, scope), self.term(f.right, scope))
            for (left_inf, right_inf), need, which in zip(sides, _NEEDS[f.rel], ("left", "right")):
                if ("l" in need and left_inf) or ("r" in need and right_inf):
                    self.error(f"{which} operand of {f.rel!r} must be finite on that side", f.pos)
        elif isinstance(f, (DurationEq, Happ)):
            self.event_sides(f.name, scope, f.pos)
        elif isinstance(f, At):
            self.term(f.term, scope)
            if isinstance(f.time, str) and f.time not in self.scalars:
                self.error(f"undeclared scalar {f.time!r}", f.pos)
        elif isinstance(f, Not):
            self.formula(f.arg, scope)
        elif isinstance(f, And):
            self.formula(f.left, scope)
            self.formula(f.right, scope)
        elif isinstance(f, Forall):
            if f.batch not in self.batches:
                self.error(f"undeclared batch {f.batch!r}", f.pos)
            sides = [self.events[m] for m in self.batches[f.batch]]
            merged = (any(s[0] for s in sides), any(s[1] for s in sides))
            self.formula(f.body, {**scope, f.var: merged})


def check_program(program: Program) -> None:
    _Checker(program).run()


# printing


def _num(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def format_term(t: Term) -> str:
    if isinstance(t, Ref):
        return t.name
    return f"{t.func}({format_term(t.arg)})"


def format_formula(f: Formula, prec: int = 0) -> str:
    """Canonical text; ``prec`` is the binding strength required by the context."""
    if isinstance(f, Forall):
        s = f"forall {f.var} over {f.batch}: {format_formula(f.body, 0)}"
        return f"({s})" if prec > 0 else s
    if isinstance(f, And):
        s = f"{format_formula(f.left, 1)} and {format_formula(f.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(f, Not):
        return f"not {format_formula(f.arg, 2)}"
    if isinstance(f, Relation):
        return f"{format_term(f.left)} {f.rel} {format_term(f.right)}"
    if isinstance(f, At):
        t = f.time if isinstance(f.time, str) else _num(f.time)
        return f"{format_term(f.term)} at {t}"
    if isinstance(f, DurationEq):
        return f"duration({f.name}) ~= {_num(f.value)}"
    if isinstance(f, Happ):
        return f"happ({f.name})"
    raise TypeError(f"not a formula: {f!r}")


def format_statement(s: Statement) -> str:
    if isinstance(s, EventDecl):
        if s.trainable:
            init = "" if s.logits is None else " init logits(" + ", ".join(map(_num, s.logits)) + ")"
            return f"event {s.name} trainable{init}"
        happ = "" if s.happ is None else f" happ {_num(s.happ)}"
        return f"event {s.name} fixed trapezoid(" + ", ".join(map(_num, s.params)) + f"){happ}"
    if isinstance(s, ScalarDecl):
        init = "" if s.init is None else f" init {_num(s.init)}"
        return f"scalar {s.name} trainable{init}"
    if isinstance(s, HorizonDecl):
        return f"horizon {_num(s.value)}"
    if isinstance(s, BatchDecl):
        return f"batch {s.name} = " + ", ".join(s.members)
    if isinstance(s, Constraint):
        return f"constraint {format_formula(s.formula)}"
    raise TypeError(f"not a statement: {s!r}")


def format_program(program: Program) -> str:
    return "".join(format_statement(s) + "\n" for s in program.statements)
