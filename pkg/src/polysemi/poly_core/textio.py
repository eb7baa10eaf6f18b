"""Text form of scalars and polynomials.

Output is canonical (descending powers, unit coefficients omitted) and always
re-parses to an equal value.  The parser is more lenient than the printer: it
accepts parentheses, implicit multiplication, ``**`` for powers and division
by constants, e.g. ``z(z+1)^2`` or ``(z^2 - 1)/3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .scalar import ONE, ZERO, ExactScalar, I

__all__ = [
    "format_scalar",
    "format_polynomial",
    "format_sparse",
    "parse_polynomial",
    "parse_sparse",
    "parse_scalar",
]


def _fmt_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c: ExactScalar) -> str:
    if not c.im:
        return _fmt_fraction(c.re)
    if c.im == 1:
        imag = "i"
    elif c.im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_fraction(c.im)}*i"
    if not c.re:
        return f"({imag})"
    sign = "" if imag.startswith("-") else "+"
    return f"({_fmt_fraction(c.re)}{sign}{imag})"


def _term(c: ExactScalar, mono: str) -> str:
    if not mono:
        return format_scalar(c)
    if c == ONE:
        return mono
    if c == -ONE:
        return "-" + mono
    return f"{format_scalar(c)}*{mono}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def format_polynomial(P, var: str = "z") -> str:
    terms = [
        _term(c, _power(var, k))
        for k, c in reversed(list(enumerate(P.coeffs)))
        if c
    ]
    return _join(terms)


def format_sparse(terms: dict[tuple[int, ...], ExactScalar], variables: tuple[str, ...]) -> str:
    """Format a sparse multivariate polynomial, highest total degree first."""
    keys = sorted((k for k, c in terms.items() if c), key=lambda k: (-sum(k), [-e for e in k]))
    parts = []
    for k in keys:
        mono = "*".join(p for p in (_power(v, e) for v, e in zip(variables, k)) if p)
        parts.append(_term(terms[k], mono))
    return _join(parts)


# -- parsing -------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


class _Sparse:
    """Sparse multivariate polynomial used only while parsing."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars):
        self.terms = {k: c for k, c in terms.items() if c}
        self.nvars = nvars

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    def constant_value(self):
        if not self.terms:
            return ZERO
        if set(self.terms) == {(0,) * self.nvars}:
            return self.terms[(0,) * self.nvars]
        return None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return _Sparse(out, self.nvars)

    def __neg__(self):
        return _Sparse({k: -c for k, c in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, ZERO) + c1 * c2
        return _Sparse(out, self.nvars)

    def scale(self, c):
        return _Sparse({k: v * c for k, v in self.terms.items()}, self.nvars)

    def power(self, e):
        result = _Sparse.const(ONE, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val = self.take()
        if val != value:
            raise ParseError(f"expected {value!r} in {self.text!r}")

    def parse(self) -> _Sparse:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input after position {self.pos} in {self.text!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + (rhs if op == "+" else -rhs)
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if val == "*":
                self.take()
                acc = acc * self.unary()
            elif val == "/":
                self.take()
                d = self.unary().constant_value()
                if d is None:
                    raise ParseError("division is only allowed by constants")
                if not d:
                    raise ParseError("division by zero")
                acc = acc.scale(d.inverse())
            elif kind in ("num", "name") or val == "(":
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        val = self.peek()[1]
        if val == "-":
            self.take()
            return -self.unary()
        if val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            if self.peek()[1] == "-":
                raise ParseError("negative exponents are not polynomial")
            if self.peek()[1] == "+":
                self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base.power(int(val))
        return base

    def atom(self):
        n = len(self.variables)
        kind, val = self.take()
        if kind == "num":
            return _Sparse.const(ExactScalar(int(val)), n)
        if kind == "name":
            if val in self.variables:
                k = [0] * n
                k[self.variables.index(val)] = 1
                return _Sparse({tuple(k): ONE}, n)
            if val == "i":
                return _Sparse.const(I, n)
            raise ParseError(f"unknown symbol {val!r}; expected one of {self.variables}")
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_sparse(text: str, variables: tuple[str, ...]) -> dict[tuple[int, ...], ExactScalar]:
    return _Parser(text, variables).parse().terms


def parse_polynomial(text: str, var: str = "z"):
    from .polynomial import Polynomial

    terms = parse_sparse(text, (var,))
    deg = max((k[0] for k in terms), default=-1)
    coeffs = [ZERO] * (deg + 1)
    for (k,), c in terms.items():
        coeffs[k] = c
    return Polynomial(coeffs)


def parse_scalar(text: str) -> ExactScalar:
    terms = parse_sparse(text, ())
    return terms.get((), ZERO)
