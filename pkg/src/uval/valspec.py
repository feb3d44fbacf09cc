"""Textual expressions denoting valuations: the --val grammar of the CLI.

Atoms are the basis elements mu[k,q], tau[k,q], pi[k,r] (primitive), the
global generators t, s, u, the unit chi, the volume vol, and rational-pi
scalar literals (pi parses as the scalar unless followed by an index
bracket).  Operators are + - * / ^ with the usual precedence, unary minus,
and the functions F(...) for the Fourier transform and iota(...).
Division is restricted to single-term scalar divisors, matching exact
Scalar division.  Scalars occurring where a valuation is needed are read
as multiples of chi.

Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .scalar import Scalar
from .sl2 import primitive_general
from .valuation import Valuation, chi, fourier, iota, mu, multiply, tau, vol
from .poly import GradedPoly
from .valuation import from_monomial

__all__ = ["ValSpecError", "parse_valspec"]


class ValSpecError(ValueError):
    """Parse or range error in a valuation expression, with byte offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


_OPS = set("+-*/^()[],")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_" or c == "π":
            if c == "π":
                tokens.append(_Token("ident", "pi", i))
                i += 1
                continue
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], i))
            i = j
            continue
        if c in _OPS:
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        raise ValSpecError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", len(text)))
    return tokens


_Value = Union[Scalar, Valuation]


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------
    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.next()
        if t.text != text:
            raise ValSpecError(f"expected {text!r}, found {t.text!r}", t.pos)
        return t

    def take_int(self) -> int:
        t = self.next()
        neg = False
        if t.text == "-":
            neg = True
            t = self.next()
        if t.kind != "num":
            raise ValSpecError(f"expected an integer, found {t.text!r}", t.pos)
        return -int(t.text) if neg else int(t.text)

    # -- grammar --------------------------------------------------------
    def parse(self) -> Valuation:
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ValSpecError(f"unexpected trailing {t.text!r}", t.pos)
        return self.as_valuation(value)

    def expr(self) -> _Value:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value, rhs = self.align(value, rhs)
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> _Value:
        value = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            if op.text == "*":
                value = self.mul(value, rhs, op.pos)
            else:
                value = self.div(value, rhs, op.pos)
        return value

    def factor(self) -> _Value:
        value = self.unary()
        while self.peek().text == "^":
            op = self.next()
            k = self.take_int()
            value = self.power(value, k, op.pos)
        return value

    def unary(self) -> _Value:
        if self.peek().text == "-":
            self.next()
            return -self.unary()
        return self.primary()

    def primary(self) -> _Value:
        t = self.next()
        if t.kind == "num":
            return Scalar.of(int(t.text))
        if t.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if t.kind != "ident":
            raise ValSpecError(f"unexpected {t.text!r}", t.pos)
        name = t.text
        if name in ("F", "iota"):
            self.expect("(")
            inner = self.as_valuation(self.expr())
            self.expect(")")
            try:
                return fourier(inner) if name == "F" else iota(inner)
            except ValueError as exc:
                raise ValSpecError(str(exc), t.pos) from None
        if name == "pi" and self.peek().text != "[":
            return Scalar.pi(1)
        if name in ("mu", "tau", "pi"):
            self.expect("[")
            k = self.take_int()
            self.expect(",")
            q = self.take_int()
            self.expect("]")
            try:
                if name == "mu":
                    return mu(self.n, k, q)
                if name == "tau":
                    return tau(self.n, k, q)
                return primitive_general(self.n, k, q)
            except ValueError as exc:
                raise ValSpecError(str(exc), t.pos) from None
        if name == "chi":
            return chi(self.n)
        if name == "vol":
            return vol(self.n)
        if name in ("t", "s", "u"):
            poly = {"t": GradedPoly.t(), "s": GradedPoly.s_in_tu(), "u": GradedPoly.u()}[name]
            return from_monomial(self.n, poly)
        raise ValSpecError(f"unknown name {name!r}", t.pos)

    # -- value algebra --------------------------------------------------
    def as_valuation(self, value: _Value) -> Valuation:
        if isinstance(value, Valuation):
            return value
        return chi(self.n) * value

    def align(self, a: _Value, b: _Value) -> tuple[_Value, _Value]:
        """Promote scalars to chi multiples when mixed with valuations."""
        if isinstance(a, Valuation) or isinstance(b, Valuation):
            return self.as_valuation(a), self.as_valuation(b)
        return a, b

    def mul(self, a: _Value, b: _Value, pos: int) -> _Value:
        if isinstance(a, Valuation) and isinstance(b, Valuation):
            return multiply(a, b)
        return a * b

    def div(self, a: _Value, b: _Value, pos: int) -> _Value:
        if isinstance(b, Valuation):
            raise ValSpecError("division by a valuation is not defined", pos)
        try:
            return a / b
        except (ValueError, ZeroDivisionError) as exc:
            raise ValSpecError(str(exc), pos) from None

    def power(self, a: _Value, k: int, pos: int) -> _Value:
        if isinstance(a, Scalar):
            try:
                return a**k
            except ValueError as exc:
                raise ValSpecError(str(exc), pos) from None
        if k < 0:
            raise ValSpecError("negative power of a valuation", pos)
        out: _Value = chi(self.n)
        for _ in range(k):
            out = multiply(out, a)
        return out


def parse_valspec(text: str, n: int) -> Valuation:
    """Parse a valuation expression at level n; exact and deterministic."""
    return _Parser(text, n).parse()
