"""Recursive-descent parser for integer polynomial equation systems.

Grammar (UTF-8, '#' comments, equations separated by ';'):

    system   := equation (';' equation)* [';']
    equation := expr '=' expr
    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := ('-' | '+') factor | atom ['^' INT]
    atom     := INT | IDENT | '(' expr ')'

Equations are normalized on parse: lhs = rhs becomes (lhs - rhs) = 0.
All positions are 1-based (line, column).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..symbolic import MPoly, UPoly

MAX_EXPONENT = 4096


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_SYMBOLS = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET",
            "(": "LPAREN", ")": "RPAREN", "=": "EQUALS", ";": "SEMI"}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("IDENT", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Equation:
    """One source equation, normalized to expr = 0."""

    expr: object


@dataclass(frozen=True)
class SourceSystem:
    equations: tuple[Equation, ...]
    variables: tuple[str, ...]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def eat(self, kind: str) -> Token:
        tok = self.current
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        self.pos += 1
        return tok

    def parse_system(self) -> SourceSystem:
        equations = [self.parse_equation()]
        while self.current.kind == "SEMI":
            self.eat("SEMI")
            if self.current.kind == "EOF":
                break
            equations.append(self.parse_equation())
        self.eat("EOF")
        names: set[str] = set()
        for eq in equations:
            collect_variables(eq.expr, names)
        return SourceSystem(tuple(equations), tuple(sorted(names)))

    def parse_equation(self) -> Equation:
        lhs = self.parse_expr()
        tok = self.eat("EQUALS")
        rhs = self.parse_expr()
        return Equation(Sub(lhs, rhs, (tok.line, tok.col)))

    def parse_expr(self):
        node = self.parse_term()
        while self.current.kind in ("PLUS", "MINUS"):
            tok = self.current
            self.pos += 1
            rhs = self.parse_term()
            cls = Add if tok.kind == "PLUS" else Sub
            node = cls(node, rhs, (tok.line, tok.col))
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.current.kind == "STAR":
            tok = self.current
            self.pos += 1
            node = Mul(node, self.parse_factor(), (tok.line, tok.col))
        return node

    def parse_factor(self):
        tok = self.current
        if tok.kind == "MINUS":
            self.pos += 1
            return Neg(self.parse_factor(), (tok.line, tok.col))
        if tok.kind == "PLUS":
            self.pos += 1
            return self.parse_factor()
        node = self.parse_atom()
        if self.current.kind == "CARET":
            caret = self.current
            self.pos += 1
            exp_tok = self.eat("INT")
            exponent = int(exp_tok.text)
            if exponent > MAX_EXPONENT:
                raise ParseError(f"exponent overflow (max {MAX_EXPONENT})",
                                 exp_tok.line, exp_tok.col)
            node = Pow(node, exponent, (caret.line, caret.col))
        return node

    def parse_atom(self):
        tok = self.current
        if tok.kind == "INT":
            self.pos += 1
            return Num(int(tok.text), (tok.line, tok.col))
        if tok.kind == "IDENT":
            self.pos += 1
            return Var(tok.text, (tok.line, tok.col))
        if tok.kind == "LPAREN":
            self.pos += 1
            node = self.parse_expr()
            self.eat("RPAREN")
            return node
        raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}",
                         tok.line, tok.col)


def parse(text: str) -> SourceSystem:
    """Parse a ';'-separated equation system into a SourceSystem."""
    tokens = tokenize(text)
    if tokens[0].kind == "EOF":
        raise ParseError("empty system", tokens[0].line, tokens[0].col)
    return _Parser(tokens).parse_system()


def collect_variables(expr, out: set[str]) -> None:
    if isinstance(expr, Var):
        out.add(expr.name)
    elif isinstance(expr, (Add, Sub, Mul)):
        collect_variables(expr.left, out)
        collect_variables(expr.right, out)
    elif isinstance(expr, Neg):
        collect_variables(expr.operand, out)
    elif isinstance(expr, Pow):
        collect_variables(expr.base, out)


def evaluate(expr, env) -> int:
    """Direct AST evaluation over the integers."""
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Add):
        return evaluate(expr.left, env) + evaluate(expr.right, env)
    if isinstance(expr, Sub):
        return evaluate(expr.left, env) - evaluate(expr.right, env)
    if isinstance(expr, Mul):
        return evaluate(expr.left, env) * evaluate(expr.right, env)
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, env)
    if isinstance(expr, Pow):
        return evaluate(expr.base, env) ** expr.exponent
    raise TypeError(f"not an expression node: {expr!r}")


def expand(expr, variables: tuple[str, ...]) -> MPoly:
    """Expand an AST into a sparse polynomial over the given variables."""
    if isinstance(expr, Num):
        return MPoly.constant(expr.value, variables)
    if isinstance(expr, Var):
        return MPoly.var(expr.name, variables)
    if isinstance(expr, Add):
        return expand(expr.left, variables) + expand(expr.right, variables)
    if isinstance(expr, Sub):
        return expand(expr.left, variables) - expand(expr.right, variables)
    if isinstance(expr, Mul):
        return expand(expr.left, variables) * expand(expr.right, variables)
    if isinstance(expr, Neg):
        return -expand(expr.operand, variables)
    if isinstance(expr, Pow):
        return expand(expr.base, variables) ** expr.exponent
    raise TypeError(f"not an expression node: {expr!r}")


def parse_poly(text: str, var: str = "z") -> UPoly:
    """Parse a single expression in one variable as an exact polynomial.

    Shares the system grammar (minus '=' and ';'); any identifier other
    than `var` is rejected.
    """
    tokens = tokenize(text)
    if tokens[0].kind == "EOF":
        raise ParseError("empty polynomial", tokens[0].line, tokens[0].col)
    parser = _Parser(tokens)
    expr = parser.parse_expr()
    parser.eat("EOF")
    names: set[str] = set()
    collect_variables(expr, names)
    if not names <= {var}:
        bad = sorted(names - {var})[0]
        raise ParseError(f"unknown variable {bad!r} (only {var!r} is allowed)", 1, 1)
    poly = expand(expr, (var,))
    coeffs: dict[int, Fraction] = {e[0]: c for e, c in poly.terms.items()}
    top = max(coeffs, default=0)
    return UPoly([coeffs.get(k, 0) for k in range(top + 1)])
