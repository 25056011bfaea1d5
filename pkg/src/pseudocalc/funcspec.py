"""Parser and evaluator for one-variable real-function expressions.

Expression strings appear in generator JSON documents, suite files and CLI
flags.  The grammar, loosest to tightest binding:

    sum     :=  term (('+' | '-') term)*
    term    :=  unary (('*' | '/') unary)*
    unary   :=  '-' unary | power
    power   :=  atom ('^' unary)?          # right associative, so 2^-3 works
    atom    :=  NUMBER | 'x' | 'pi' | 'e' | NAME '(' sum ')' | '(' sum ')'

Recognised functions: ``exp, ln, abs, sqrt, sin, cos``.  Whitespace is
insignificant.  Parsing stops at the first offending token and reports its
byte offset; no error recovery is attempted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import PseudoCalcError

__all__ = [
    "Expr",
    "Lit",
    "Var",
    "Const",
    "Unary",
    "Binary",
    "ParseError",
    "EvalError",
    "parse",
    "eval_expr",
    "pretty_print",
    "compile_expr",
    "FUNCTIONS",
    "CONSTANTS",
]

FUNCTIONS = ("exp", "ln", "abs", "sqrt", "sin", "cos")
CONSTANTS = {"pi": math.pi, "e": math.e}


class Expr:
    """Base class for expression AST nodes (immutable)."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Const(Expr):
    name: str  # "pi" | "e"


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "neg" or a FUNCTIONS name
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # + - * / ^
    lhs: Expr
    rhs: Expr


class ParseError(PseudoCalcError):
    """Syntax error with the byte offset of the first offending token."""

    def __init__(self, position: int, message: str, expected: frozenset[str] = frozenset()):
        self.position = position
        self.message = message
        self.expected = expected
        super().__init__(f"parse error at offset {position}: {message}")


class EvalError(PseudoCalcError):
    """Evaluation failure carrying the path of the offending node."""

    def __init__(self, message: str, path: tuple[str, ...] = ()):
        self.message = message
        self.path = path
        where = "/".join(path) if path else "<root>"
        super().__init__(f"eval error at {where}: {message}")


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_NUMBER = re.compile(r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class _Token:
    kind: str  # num name op lparen rparen eof
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            toks.append(_Token("num", m.group(0), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            toks.append(_Token("name", m.group(0), i))
            i = m.end()
            continue
        if ch in "+-*/^":
            toks.append(_Token("op", ch, i))
        elif ch == "(":
            toks.append(_Token("lparen", ch, i))
        elif ch == ")":
            toks.append(_Token("rparen", ch, i))
        else:
            raise ParseError(i, f"unexpected character {ch!r}")
        i += 1
    toks.append(_Token("eof", "", n))
    return toks


# ---------------------------------------------------------------------------
# Recursive-descent parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Expr:
        if self.peek().kind == "eof":
            raise ParseError(0, "empty expression", frozenset({"expression"}))
        e = self.sum()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(tok.pos, f"unexpected trailing {tok.text!r}", frozenset({"end of input"}))
        return e

    def sum(self) -> Expr:
        e = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            e = Binary(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            e = Binary(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            return Binary("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Lit(float(tok.text))
        if tok.kind == "name":
            if tok.text == "x":
                return Var()
            if tok.text in CONSTANTS:
                return Const(tok.text)
            if tok.text in FUNCTIONS:
                opening = self.peek()
                if opening.kind != "lparen":
                    raise ParseError(opening.pos, f"expected '(' after {tok.text!r}", frozenset({"("}))
                self.advance()
                arg = self.sum()
                closing = self.peek()
                if closing.kind != "rparen":
                    raise ParseError(closing.pos, "expected ')'", frozenset({")"}))
                self.advance()
                return Unary(tok.text, arg)
            raise ParseError(tok.pos, f"unknown name {tok.text!r}", frozenset({"x", "pi", "e", *FUNCTIONS}))
        if tok.kind == "lparen":
            e = self.sum()
            closing = self.peek()
            if closing.kind != "rparen":
                raise ParseError(closing.pos, "expected ')'", frozenset({")"}))
            self.advance()
            return e
        raise ParseError(tok.pos, f"expected an operand, found {tok.text or 'end of input'!r}",
                         frozenset({"number", "name", "("}))


def parse(text: str) -> Expr:
    """Parse ``text`` into an :class:`Expr`; raise :class:`ParseError` on bad input."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _int_pow(base: float, n: int) -> float:
    # exponentiation by squaring keeps integer powers exact where floats allow
    result = 1.0
    b = base
    e = n
    while e > 0:
        if e & 1:
            result *= b
        b *= b
        e >>= 1
    return result


def _power(base: float, p: float, path: tuple[str, ...]) -> float:
    if p == math.floor(p) and abs(p) <= 2**31:
        n = int(p)
        if n >= 0:
            return _int_pow(base, n)
        if base == 0.0:
            raise EvalError("0 raised to a negative power", path)
        return 1.0 / _int_pow(base, -n)
    if base > 0.0:
        try:
            return math.exp(p * math.log(base))
        except OverflowError:
            return math.inf
    if base == 0.0:
        if p > 0:
            return 0.0
        raise EvalError("0 raised to a negative power", path)
    raise EvalError("negative base with non-integer exponent", path)


def eval_expr(e: Expr, x: float) -> float:
    """Evaluate ``e`` at ``x`` with IEEE semantics except that NaN-producing
    operations raise :class:`EvalError` instead of propagating NaN."""
    return _eval(e, x, ())


def _eval(e: Expr, x: float, path: tuple[str, ...]) -> float:
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Unary):
        v = _eval(e.arg, x, path + ("arg",))
        if e.op == "neg":
            return -v
        if e.op == "exp":
            try:
                return math.exp(v)
            except OverflowError:
                return math.inf
        if e.op == "ln":
            if v <= 0.0:
                raise EvalError(f"ln of non-positive value {v!r}", path)
            return math.log(v)
        if e.op == "abs":
            return abs(v)
        if e.op == "sqrt":
            if v < 0.0:
                raise EvalError(f"sqrt of negative value {v!r}", path)
            return math.sqrt(v)
        if e.op == "sin":
            return math.sin(v)
        if e.op == "cos":
            return math.cos(v)
        raise EvalError(f"unknown unary op {e.op!r}", path)
    if isinstance(e, Binary):
        a = _eval(e.lhs, x, path + ("lhs",))
        b = _eval(e.rhs, x, path + ("rhs",))
        if e.op == "+":
            v = a + b
        elif e.op == "-":
            v = a - b
        elif e.op == "*":
            v = a * b
        elif e.op == "/":
            if b == 0.0:
                raise EvalError("division by zero", path)
            v = a / b
        elif e.op == "^":
            v = _power(a, b, path)
        else:
            raise EvalError(f"unknown binary op {e.op!r}", path)
        if math.isnan(v):
            raise EvalError("operation produced NaN", path)
        return v
    raise EvalError(f"unknown node {type(e).__name__}", path)


def compile_expr(e: Expr):
    """Return ``f(x)`` evaluating ``e``; tiny convenience used all over."""
    return lambda x: eval_expr(e, x)


# ---------------------------------------------------------------------------
# Pretty printer (minimal parentheses, structural round-trip with parse)
# ---------------------------------------------------------------------------

_LEVEL_SUM = 10
_LEVEL_TERM = 20
_LEVEL_NEG = 30
_LEVEL_POW = 40
_LEVEL_ATOM = 50


def _level(e: Expr) -> int:
    if isinstance(e, Binary):
        if e.op in "+-":
            return _LEVEL_SUM
        if e.op in "*/":
            return _LEVEL_TERM
        return _LEVEL_POW
    if isinstance(e, Unary) and e.op == "neg":
        return _LEVEL_NEG
    return _LEVEL_ATOM


def _wrap(e: Expr, needed: int) -> str:
    s = pretty_print(e)
    return f"({s})" if _level(e) < needed else s


def pretty_print(e: Expr) -> str:
    """Render ``e`` so that ``parse(pretty_print(e))`` is structurally equal."""
    if isinstance(e, Lit):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            return "-" + _wrap(e.arg, _LEVEL_NEG)
        return f"{e.op}({pretty_print(e.arg)})"
    if isinstance(e, Binary):
        if e.op in "+-":
            # left associative: right child at the same level needs parens
            return f"{_wrap(e.lhs, _LEVEL_SUM)}{e.op}{_wrap(e.rhs, _LEVEL_SUM + 1)}"
        if e.op in "*/":
            return f"{_wrap(e.lhs, _LEVEL_TERM)}{e.op}{_wrap(e.rhs, _LEVEL_TERM + 1)}"
        # '^' is right associative and its exponent parses at unary level
        return f"{_wrap(e.lhs, _LEVEL_POW + 1)}^{_wrap(e.rhs, _LEVEL_NEG)}"
    raise ValueError(f"unknown node {type(e).__name__}")
