"""Text input: field minimal polynomials, maps over K, and plane conics.

One recursive-descent grammar serves all three::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" integer)?
    atom   := integer | name | name "(" integer ")" | "(" expr ")"

Names are bound per use: ``t`` is the field generator, ``x`` the map
variable, ``X`` and ``Y`` the conic variables, ``T(n)`` and ``P(n)`` the
Chebyshev and power maps. Division is only by nonzero constants.
"""

from __future__ import annotations

import re
from typing import Callable

from .conics import Conic
from .errors import ParseError
from .numberfield import QQ, NumberField, nf_create
from .polyring import Polynomial, chebyshev, power_map

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("SYNTAX_ERROR", f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names: dict, functions: dict, constant: Callable, scalar: Callable):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names
        self.functions = functions
        self.constant = constant   # int -> ring element
        self.scalar = scalar       # ring element -> field element or None

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value:
            raise ParseError("SYNTAX_ERROR", f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("SYNTAX_ERROR", "empty expression", 0)
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError("SYNTAX_ERROR", f"unexpected {text!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                c = self.scalar(rhs)
                if c is None:
                    raise ParseError("SYNTAX_ERROR", "division only by constants", pos)
                if not c:
                    raise ParseError("DIVISION_BY_ZERO", "division by zero", pos)
                value = value * c.inverse()
        return value

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if text == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num":
                raise ParseError("SYNTAX_ERROR", "exponent must be a nonnegative integer", pos)
            base = base ** int(text)
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return self.constant(int(text))
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "name":
            if self.peek()[1] == "(" and text in self.functions:
                self.take()
                k, arg, apos = self.take()
                if k != "num":
                    raise ParseError("SYNTAX_ERROR", f"{text}(n) needs an integer argument", apos)
                self.expect(")")
                return self.functions[text](int(arg))
            if text in self.names:
                return self.names[text]
            raise ParseError("UNKNOWN_SYMBOL", f"unknown symbol {text!r}", pos)
        raise ParseError("SYNTAX_ERROR", f"unexpected {text or 'end of input'!r}", pos)


def _poly_scalar(p: Polynomial):
    return p[0] if p.degree <= 0 else None


def parse_field(text: str) -> NumberField:
    """Minimal polynomial in ``t``; ``"t"`` gives Q."""
    p = _Parser(text, {"t": Polynomial.x(QQ)}, {}, lambda n: Polynomial(QQ, [n]), _poly_scalar).parse()
    if not isinstance(p, Polynomial):
        raise ParseError("SYNTAX_ERROR", "not a polynomial in t", 0)
    if p.degree < 1:
        raise ParseError("SYNTAX_ERROR", "field polynomial must have degree >= 1", 0)
    return nf_create([c.to_fraction() for c in p.coeffs])


def parse_polynomial(text: str, K: NumberField = QQ, generator: bool = False) -> Polynomial:
    """A polynomial in ``x`` over K; ``generator=True`` also enforces degree >= 2."""
    names = {"x": Polynomial.x(K), "t": Polynomial(K, [K.gen()])}
    functions = {"T": lambda n: chebyshev(n, K), "P": lambda n: power_map(n, K)}
    for name, f in list(functions.items()):
        functions[name] = _checked_map(name, f)
    p = _Parser(text, names, functions, lambda n: Polynomial(K, [n]), _poly_scalar).parse()
    if generator and p.degree < 2:
        raise ParseError("DEGREE_LT_2", f"generator {text!r} has degree {p.degree}", 0)
    return p


def _checked_map(name, f):
    def build(n):
        if n < 1:
            raise ParseError("SYNTAX_ERROR", f"{name}(n) needs n >= 1")
        return f(n)
    return build


def split_generators(text: str) -> list[str]:
    """Split on top-level commas, so ``T(2),x^2 + 1`` gives two items."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    parts.append(cur.strip())
    if any(not p for p in parts):
        raise ParseError("SYNTAX_ERROR", "empty generator in list")
    return parts


def parse_conic(text: str, K: NumberField = QQ) -> Conic:
    """A conic in ``X`` and ``Y`` over K, e.g. ``X^2 + X*Y + Y^2 - 3``."""
    from .witness import BivariatePolynomial

    def const(n):
        return BivariatePolynomial(K, {(0, 0): n})

    def scalar(b):
        if not b.terms:
            return K.zero()
        if set(b.terms) == {(0, 0)}:
            return b.terms[(0, 0)]
        return None

    names = {"X": BivariatePolynomial(K, {(1, 0): 1}), "Y": BivariatePolynomial(K, {(0, 1): 1}),
             "t": const(K.gen())}
    F = _Parser(text, names, {}, const, scalar).parse()
    if F.total_degree() != 2:
        raise ParseError("NOT_A_CONIC", f"total degree is {F.total_degree()}, not 2", 0)
    keys = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    return Conic(*[F.terms.get(k, K.zero()) for k in keys], field=K)
