"""A small language for piecewise interval-valued maps on the real line.

Grammar::

    map     := clause (";" clause)* | setexpr
    clause  := "if" pred "->" setexpr | "otherwise" "->" setexpr
    pred    := conj ("or" conj)*
    conj    := cmp ("and" cmp)*
    cmp     := expr ("==" | "!=" | "<" | "<=" | ">" | ">=") expr
    setexpr := "[" expr "," expr "]" | "{" expr ("," expr)* "}"
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | atom
    atom    := NUMBER | "x" | ("min" | "max" | "abs") "(" args ")" | "(" expr ")"

Clauses are tried left to right and the first matching guard wins.  Binary
operators are left-associative; comparisons are exact on doubles, so
``x == 1`` matches only ``1.0``.

Example::

    >>> T = parse("if x == 1 -> {1}; otherwise -> [x/3, x/2]")
    >>> T(0.6)
    Interval(lo=0.19999999999999998, hi=0.3)
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass

from .metric import FiniteSet, Interval, SpaceError


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, token: str):
        super().__init__(f"{message} at line {line}, column {column} (near {token!r})")
        self.message = message
        self.line = line
        self.column = column
        self.token = token


class MapEvalError(ValueError):
    """Evaluation failed at ``x`` (no matching clause, division by zero, bad interval)."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} at x={x!r}")
        self.x = x


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>->|==|!=|<=|>=|[-+*/<>()\[\]{},;])
""", re.VERBOSE)

_KEYWORDS = {"if", "otherwise", "and", "or", "x", "min", "max", "abs"}


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", line, col, text[pos])
        chunk = m.group()
        if m.lastgroup != "ws":
            if m.lastgroup == "name" and chunk not in _KEYWORDS:
                raise ParseError("unknown identifier", line, col, chunk)
            tokens.append(Token(m.lastgroup, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float

    def eval(self, x):
        return self.value


@dataclass(frozen=True)
class Var:
    def eval(self, x):
        return x


_BINOPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def eval(self, x):
        a, b = self.left.eval(x), self.right.eval(x)
        if self.op == "/" and b == 0:
            raise MapEvalError("division by zero", x)
        return _BINOPS[self.op](a, b)


@dataclass(frozen=True)
class Neg:
    operand: object

    def eval(self, x):
        return -self.operand.eval(x)


_FUNCS = {"min": min, "max": max, "abs": abs}


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple

    def eval(self, x):
        return _FUNCS[self.name](*(a.eval(x) for a in self.args))


_CMPS = {"==": operator.eq, "!=": operator.ne, "<": operator.lt,
         "<=": operator.le, ">": operator.gt, ">=": operator.ge}


@dataclass(frozen=True)
class Compare:
    op: str
    left: object
    right: object

    def eval(self, x):
        return _CMPS[self.op](self.left.eval(x), self.right.eval(x))


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" | "or"
    parts: tuple

    def eval(self, x):
        if self.op == "and":
            return all(p.eval(x) for p in self.parts)
        return any(p.eval(x) for p in self.parts)


@dataclass(frozen=True)
class IntervalExpr:
    lo: object
    hi: object


@dataclass(frozen=True)
class PointsExpr:
    items: tuple


@dataclass(frozen=True)
class Clause:
    guard: object  # None for "otherwise"
    image: object


@dataclass(frozen=True)
class MapDef:
    clauses: tuple
    source: str = ""

    def __call__(self, x):
        return eval_map(self, x)

    def __str__(self):
        return to_source(self)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column, tok.text or "<end>")

    def accept(self, text):
        if self.tok.kind != "end" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text, what=None):
        if not self.accept(text):
            raise self.error(f"expected {what or repr(text)}")

    def parse_map(self):
        clauses = []
        while True:
            start = self.tok
            if clauses and clauses[-1].guard is None:
                raise self.error("'otherwise' must be the last clause", start)
            clauses.append(self.clause())
            if not self.accept(";") or self.tok.kind == "end":
                break
        if self.tok.kind != "end":
            raise self.error("expected ';' or end of input")
        return tuple(clauses)

    def clause(self):
        if self.tok.text in ("[", "{") and self.i == 0:
            # a bare set expression is shorthand for a single "otherwise" clause
            return Clause(None, self.setexpr())
        if self.accept("otherwise"):
            guard = None
        elif self.accept("if"):
            guard = self.pred()
        else:
            raise self.error("expected 'if' or 'otherwise'")
        self.expect("->")
        return Clause(guard, self.setexpr())

    def pred(self):
        parts = [self.conj()]
        while self.accept("or"):
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else BoolOp("or", tuple(parts))

    def conj(self):
        parts = [self.cmp()]
        while self.accept("and"):
            parts.append(self.cmp())
        return parts[0] if len(parts) == 1 else BoolOp("and", tuple(parts))

    def cmp(self):
        left = self.expr()
        op = self.tok.text
        if self.tok.kind != "op" or op not in _CMPS:
            raise self.error("expected a comparison operator")
        self.i += 1
        return Compare(op, left, self.expr())

    def setexpr(self):
        open_tok = self.tok
        try:
            return self._setexpr()
        except ParseError:
            if self.tok.kind == "end" and open_tok.text in ("[", "{"):
                raise self.error(f"unclosed {open_tok.text!r}", open_tok) from None
            raise

    def _setexpr(self):
        open_tok = self.tok
        if self.accept("["):
            lo = self.expr()
            self.expect(",")
            hi = self.expr()
            if not self.accept("]"):
                raise self.error(f"unclosed '[' opened at column {open_tok.column}", open_tok)
            return IntervalExpr(lo, hi)
        if self.accept("{"):
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            if not self.accept("}"):
                raise self.error(f"unclosed '{{' opened at column {open_tok.column}", open_tok)
            return PointsExpr(tuple(items))
        raise self.error("expected '[' or '{'")

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.text == "x":
            self.i += 1
            return Var()
        if tok.text in _FUNCS:
            self.i += 1
            self.expect("(")
            args = [self.expr()]
            while self.accept(","):
                args.append(self.expr())
            if not self.accept(")"):
                raise self.error(f"unclosed '(' of {tok.text}", tok)
            if tok.text == "abs" and len(args) != 1:
                raise self.error("abs takes one argument", tok)
            return Call(tok.text, tuple(args))
        if self.accept("("):
            node = self.expr()
            if not self.accept(")"):
                raise self.error("unclosed '('", tok)
            return node
        raise self.error("expected a number, 'x', a function or '('")


def parse(text: str) -> MapDef:
    """Parse map source text; raises :class:`ParseError` with a position."""
    return MapDef(_Parser(text).parse_map(), text)


# ---------------------------------------------------------------------------
# Printing and evaluation
# ---------------------------------------------------------------------------

def _expr_src(node, parent_prec=0, right=False) -> str:
    if isinstance(node, Num):
        v = node.value
        return repr(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return "-" + _expr_src(node.operand, 3)
    if isinstance(node, Call):
        return f"{node.name}({', '.join(_expr_src(a) for a in node.args)})"
    prec = _PREC[node.op]
    s = f"{_expr_src(node.left, prec)} {node.op} {_expr_src(node.right, prec, True)}"
    if prec < parent_prec or (right and prec == parent_prec):
        return f"({s})"
    return s


def _pred_src(node, parent=None) -> str:
    if isinstance(node, Compare):
        return f"{_expr_src(node.left)} {node.op} {_expr_src(node.right)}"
    inner = f" {node.op} ".join(_pred_src(p, node.op) for p in node.parts)
    # "and" binds tighter than "or"; there are no predicate parentheses, so
    # an "or" below an "and" cannot occur in parsed trees
    return inner


def _set_src(node) -> str:
    if isinstance(node, IntervalExpr):
        return f"[{_expr_src(node.lo)}, {_expr_src(node.hi)}]"
    return "{" + ", ".join(_expr_src(e) for e in node.items) + "}"


def to_source(defn: MapDef) -> str:
    parts = []
    for c in defn.clauses:
        head = "otherwise" if c.guard is None else f"if {_pred_src(c.guard)}"
        parts.append(f"{head} -> {_set_src(c.image)}")
    return "; ".join(parts)


def eval_map(defn: MapDef, x: float):
    """Evaluate the first clause whose guard holds at ``x``."""
    x = float(x)
    for c in defn.clauses:
        if c.guard is None or c.guard.eval(x):
            img = c.image
            if isinstance(img, IntervalExpr):
                lo, hi = img.lo.eval(x), img.hi.eval(x)
                if lo > hi:
                    raise MapEvalError(f"interval bounds out of order ({lo} > {hi})", x)
                try:
                    return Interval(lo, hi)
                except SpaceError as exc:
                    raise MapEvalError(str(exc), x) from None
            try:
                return FiniteSet(tuple(float(e.eval(x)) for e in img.items))
            except SpaceError as exc:
                raise MapEvalError(str(exc), x) from None
    raise MapEvalError("no clause matches", x)


def check_coverage(defn: MapDef, lo: float, hi: float, n: int = 1001) -> list[float]:
    """Sample ``[lo, hi]`` and return the points where evaluation fails."""
    from .contraction import grid_axis

    bad = []
    for x in grid_axis(lo, hi, n):
        try:
            eval_map(defn, x)
        except MapEvalError:
            bad.append(x)
    return bad
