"""STL formula syntax: AST nodes, a concrete-syntax parser and printer.

Formulae are immutable trees built from:

    True | atom | not phi | phi and psi | phi or psi
    F[a,b] phi | G[a,b] phi | phi U[a,b] psi

Atoms are affine threshold tests on a single signal channel, written
``x<i> >= c`` or ``x<i> <= c``.  Temporal bounds are inclusive integer step
ranges.  The grammar accepted by :func:`parse` (and emitted by
:func:`to_text`) is:

    atom  := "x"INT (">="|"<=") FLOAT
    expr  := "True" | atom | "not" expr | expr "and" expr | expr "or" expr
           | ("F"|"G") "[" INT "," INT "]" expr | expr "U[" INT "," INT "]" expr

Parentheses are allowed anywhere; precedence is unary > U > and > or, and
binary operators associate to the left.  ``parse(to_text(phi))`` returns a
tree structurally equal to ``phi``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

GE = ">="
LE = "<="


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Interval:
    """Inclusive time-step interval [lo, hi] with 0 <= lo <= hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if not (isinstance(self.lo, int) and isinstance(self.hi, int)):
            raise ValueError("interval bounds must be integers")
        if self.lo < 0:
            raise ValueError(f"interval lower bound must be >= 0, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"interval upper bound {self.hi} < lower bound {self.lo}")


@dataclass(frozen=True)
class Formula:
    """Base class for all formula nodes."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Top(Formula):
    """The Boolean constant True."""


@dataclass(frozen=True)
class Atom(Formula):
    """Threshold test ``x<var> >= threshold`` or ``x<var> <= threshold``."""

    var: int
    op: str
    threshold: float

    def __post_init__(self):
        if self.var < 0:
            raise ValueError("variable index must be >= 0")
        if self.op not in (GE, LE):
            raise ValueError(f"relation must be '>=' or '<=', got {self.op!r}")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    interval: Interval
    child: Formula


@dataclass(frozen=True)
class Globally(Formula):
    interval: Interval
    child: Formula


@dataclass(frozen=True)
class Until(Formula):
    interval: Interval
    left: Formula
    right: Formula


TRUE = Top()
#: Boolean false; the grammar has no dedicated constant, so it is spelt
#: ``not (True)``.
FALSE = Not(TRUE)


def node_count(phi: Formula) -> int:
    """Number of AST nodes, counting atoms and True."""
    if isinstance(phi, (Top, Atom)):
        return 1
    if isinstance(phi, Not):
        return 1 + node_count(phi.child)
    if isinstance(phi, (Eventually, Globally)):
        return 1 + node_count(phi.child)
    if isinstance(phi, (And, Or)):
        return 1 + node_count(phi.left) + node_count(phi.right)
    if isinstance(phi, Until):
        return 1 + node_count(phi.left) + node_count(phi.right)
    raise TypeError(f"not a formula node: {phi!r}")


def variable_set(phi: Formula) -> set[int]:
    """Set of channel indices referenced by the formula's atoms."""
    if isinstance(phi, Top):
        return set()
    if isinstance(phi, Atom):
        return {phi.var}
    if isinstance(phi, Not):
        return variable_set(phi.child)
    if isinstance(phi, (Eventually, Globally)):
        return variable_set(phi.child)
    if isinstance(phi, (And, Or, Until)):
        return variable_set(phi.left) | variable_set(phi.right)
    raise TypeError(f"not a formula node: {phi!r}")


def temporal_horizon(phi: Formula) -> int:
    """Worst-case lookahead in steps: nested sum of interval upper bounds."""
    if isinstance(phi, (Top, Atom)):
        return 0
    if isinstance(phi, Not):
        return temporal_horizon(phi.child)
    if isinstance(phi, (And, Or)):
        return max(temporal_horizon(phi.left), temporal_horizon(phi.right))
    if isinstance(phi, (Eventually, Globally)):
        return phi.interval.hi + temporal_horizon(phi.child)
    if isinstance(phi, Until):
        return phi.interval.hi + max(
            temporal_horizon(phi.left), temporal_horizon(phi.right)
        )
    raise TypeError(f"not a formula node: {phi!r}")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def rescale_time(phi: Formula, from_len: int, to_len: int) -> Formula:
    """Linearly rescale every interval bound by ``to_len / from_len``.

    Bounds are rounded half-up and clamped so lo <= hi is preserved;
    thresholds are untouched.  Rescaling L -> L is the identity.
    """
    if from_len < 1 or to_len < 1:
        raise ValueError("lengths must be >= 1")
    if from_len == to_len:
        return phi
    ratio = to_len / from_len

    def scale(iv: Interval) -> Interval:
        lo = _round_half_up(iv.lo * ratio)
        hi = _round_half_up(iv.hi * ratio)
        return Interval(lo, max(hi, lo))

    def walk(f: Formula) -> Formula:
        if isinstance(f, (Top, Atom)):
            return f
        if isinstance(f, Not):
            return Not(walk(f.child))
        if isinstance(f, And):
            return And(walk(f.left), walk(f.right))
        if isinstance(f, Or):
            return Or(walk(f.left), walk(f.right))
        if isinstance(f, Eventually):
            return Eventually(scale(f.interval), walk(f.child))
        if isinstance(f, Globally):
            return Globally(scale(f.interval), walk(f.child))
        if isinstance(f, Until):
            return Until(scale(f.interval), walk(f.left), walk(f.right))
        raise TypeError(f"not a formula node: {f!r}")

    return walk(phi)


# --------------------------------------------------------------------------
# printer

_PREC_OR = 1
_PREC_AND = 2
_PREC_UNTIL = 3
_PREC_UNARY = 4
_PREC_ATOM = 5


def _prec(phi: Formula) -> int:
    if isinstance(phi, Or):
        return _PREC_OR
    if isinstance(phi, And):
        return _PREC_AND
    if isinstance(phi, Until):
        return _PREC_UNTIL
    if isinstance(phi, (Not, Eventually, Globally)):
        return _PREC_UNARY
    return _PREC_ATOM


def _fmt_threshold(c: float) -> str:
    # repr round-trips doubles exactly through float()
    return repr(float(c))


def to_text(phi: Formula) -> str:
    """Render a formula in the concrete grammar; inverse of :func:`parse`."""
    if isinstance(phi, Top):
        return "True"
    if isinstance(phi, Atom):
        return f"x{phi.var} {phi.op} {_fmt_threshold(phi.threshold)}"
    if isinstance(phi, Not):
        return f"not ({to_text(phi.child)})"
    if isinstance(phi, Eventually):
        return f"F[{phi.interval.lo},{phi.interval.hi}]({to_text(phi.child)})"
    if isinstance(phi, Globally):
        return f"G[{phi.interval.lo},{phi.interval.hi}]({to_text(phi.child)})"
    if isinstance(phi, (And, Or, Until)):
        p = _prec(phi)
        left = to_text(phi.left)
        if _prec(phi.left) < p:
            left = f"({left})"
        right = to_text(phi.right)
        if _prec(phi.right) <= p:  # left-associative: parenthesise same level
            right = f"({right})"
        if isinstance(phi, And):
            return f"{left} and {right}"
        if isinstance(phi, Or):
            return f"{left} or {right}"
        return f"{left} U[{phi.interval.lo},{phi.interval.hi}] {right}"
    raise TypeError(f"not a formula node: {phi!r}")


# --------------------------------------------------------------------------
# parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<float>-?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<var>x\d+)
  | (?P<word>True|not|and|or|F|G|U)
  | (?P<op>>=|<=)
  | (?P<punct>[\[\],()])
  | (?P<bad>\S)
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenise(text: str) -> list[_Token]:
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            if "\n" in m.group():
                line += m.group().count("\n")
                line_start = m.start() + m.group().rfind("\n") + 1
            continue
        column = m.start() - line_start + 1
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, column)
        tokens.append(_Token(kind, m.group(), line, column))
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def parse_interval(self) -> Interval:
        self.expect("[")
        lo = self.parse_int()
        self.expect(",")
        hi = self.parse_int()
        tok = self.peek()
        self.expect("]")
        if hi < lo:
            raise ParseError(f"interval [{lo},{hi}] has hi < lo", tok.line, tok.column)
        return Interval(lo, hi)

    def parse_int(self) -> int:
        tok = self.peek()
        if tok.kind != "float" or not re.fullmatch(r"\d+", tok.text):
            self.error(f"expected a nonnegative integer, found {tok.text!r}")
        self.advance()
        return int(tok.text)

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek().text == "or":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_until()
        while self.peek().text == "and":
            self.advance()
            node = And(node, self.parse_until())
        return node

    def parse_until(self) -> Formula:
        node = self.parse_unary()
        while self.peek().text == "U":
            self.advance()
            interval = self.parse_interval()
            node = Until(interval, node, self.parse_unary())
        return node

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "not":
            self.advance()
            return Not(self.parse_unary())
        if tok.text in ("F", "G"):
            self.advance()
            interval = self.parse_interval()
            child = self.parse_unary()
            return Eventually(interval, child) if tok.text == "F" else Globally(interval, child)
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        tok = self.peek()
        if tok.text == "True":
            self.advance()
            return TRUE
        if tok.text == "(":
            self.advance()
            node = self.parse_or()
            self.expect(")")
            return node
        if tok.kind == "var":
            return self.parse_atom()
        self.error(f"expected a formula, found {tok.text or 'end of input'!r}")

    def parse_atom(self) -> Atom:
        var_tok = self.advance()
        var = int(var_tok.text[1:])
        op_tok = self.peek()
        if op_tok.kind != "op":
            self.error(f"expected '>=' or '<=', found {op_tok.text!r}")
        self.advance()
        num_tok = self.peek()
        if num_tok.kind != "float":
            self.error(f"expected a number, found {num_tok.text!r}")
        self.advance()
        return Atom(var, op_tok.text, float(num_tok.text))


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula tree.

    Raises :class:`ParseError` with line/column on malformed input,
    including intervals with hi < lo and unknown variable tokens.
    """
    parser = _Parser(_tokenise(text))
    node = parser.parse_or()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.error(f"unexpected trailing input {tok.text!r}")
    return node
