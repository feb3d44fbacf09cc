"""Exact arithmetic for the coefficient field Q[pi, pi^-1].

Every constant in the hermitian integral geometry of C^n is a rational
multiple of an integer power of pi, and sums of such terms appear as soon
as valuations of mixed degree are combined.  A :class:`Scalar` is therefore
a Laurent polynomial in pi with Fraction coefficients, stored sparsely as
a map {pi-exponent: coefficient}.  pi is treated as a formal transcendental:
no floating point enters any algebraic computation.  The only numeric exits
are :meth:`Scalar.to_float` (for display and the Monte-Carlo module) and
:func:`sign`, which decides signs exactly using adaptive rational
enclosures of pi.

The module also houses the small combinatorial constants used throughout:
ball volumes omega_k, odd double factorials, binomials.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]

__all__ = [
    "Scalar",
    "UndecidableSignError",
    "omega",
    "double_factorial",
    "binomial",
    "factorial",
    "pi_bounds",
    "sign",
]


class UndecidableSignError(ArithmeticError):
    """Raised when the sign of a Scalar cannot be decided at the smallest
    pi-enclosure width this module is willing to use (10^-30)."""


class Scalar:
    """A Laurent polynomial sum_e c_e * pi^e with c_e in Q, c_e != 0.

    Instances are immutable; all operations return fresh objects.  The zero
    scalar is the empty term map.  Equality is exact, term by term.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Scalar is immutable")

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero() -> "Scalar":
        return _ZERO

    @staticmethod
    def one() -> "Scalar":
        return _ONE

    @staticmethod
    def of(value: RationalLike, pi_exp: int = 0) -> "Scalar":
        """The scalar value * pi^pi_exp."""
        return Scalar({pi_exp: Fraction(value)})

    @staticmethod
    def pi(exp: int = 1) -> "Scalar":
        return Scalar({exp: Fraction(1)})

    # ------------------------------------------------------------------
    # inspection

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms as (exponent, coefficient), ascending in the exponent."""
        return sorted(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        """True iff the scalar has exactly one term c * pi^e."""
        return len(self._terms) == 1

    def monomial(self) -> tuple[int, Fraction]:
        """The (exponent, coefficient) of a one-term scalar."""
        if len(self._terms) != 1:
            raise ValueError(f"not a monomial scalar: {self}")
        return next(iter(self._terms.items()))

    def coefficient(self, pi_exp: int) -> Fraction:
        return self._terms.get(pi_exp, Fraction(0))

    def as_fraction(self) -> Fraction:
        """The value as a Fraction; requires a pure pi^0 scalar."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {0}:
            raise ValueError(f"not a rational scalar: {self}")
        return self._terms[0]

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, _F0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return _raw(terms)

    def __sub__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, _F0) - c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return _raw(terms)

    def __neg__(self) -> "Scalar":
        return _raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: Union["Scalar", RationalLike]) -> "Scalar":
        if isinstance(other, Scalar):
            out: dict[int, Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = e1 + e2
                    s = out.get(e, _F0) + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return _raw(out)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _ZERO
            q = Fraction(other)
            return _raw({e: c * q for e, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Scalar", RationalLike]) -> "Scalar":
        """Exact division; the divisor must be a nonzero monomial scalar."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of Scalar by zero")
            q = Fraction(other)
            return _raw({e: c / q for e, c in self._terms.items()})
        if isinstance(other, Scalar):
            e0, c0 = other.monomial()  # raises on zero / multi-term
            return _raw({e - e0: c / c0 for e, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            raise TypeError("Scalar exponent must be an integer")
        if k < 0:
            e0, c0 = self.monomial()
            return Scalar({k * e0: c0**k})
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Scalar.of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # numeric exits

    def to_float(self, digits: int | None = None) -> float:
        """Approximate float value, for display and numeric checks only.

        With ``digits`` given, pi is replaced by the midpoint of a rational
        enclosure of width 10^-digits before converting; otherwise the
        hardware pi is used.
        """
        if digits is None:
            return float(sum(float(c) * math.pi**e for e, c in self._terms.items()))
        lo, hi = pi_bounds(Fraction(1, 10**digits))
        mid = (lo + hi) / 2
        return float(sum(c * mid**e for e, c in self._terms.items()))

    def sign(self) -> int:
        return sign(self)

    def __abs__(self) -> "Scalar":
        return self if sign(self) >= 0 else -self

    # ------------------------------------------------------------------
    # serialization and printing

    def to_json(self) -> list[dict]:
        return [
            {"pi": e, "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in self.items()
        ]

    @staticmethod
    def from_json(data: Iterable[Mapping]) -> "Scalar":
        terms: dict[int, Fraction] = {}
        for entry in data:
            e = int(entry["pi"])
            c = Fraction(int(entry["num"]), int(entry["den"]))
            if c:
                terms[e] = terms.get(e, _F0) + c
        return Scalar(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items()):
            body = _term_str(e, abs(c))
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _raw(terms: dict[int, Fraction]) -> Scalar:
    s = Scalar.__new__(Scalar)
    object.__setattr__(s, "_terms", terms)
    return s


_F0 = Fraction(0)
_ZERO = Scalar()
_ONE = Scalar({0: 1})


def _term_str(e: int, c: Fraction) -> str:
    """Render |c| * pi^e as p/q, pi^m*p/q or p/(q*pi^m)."""
    p, q = c.numerator, c.denominator
    if e == 0:
        return str(p) if q == 1 else f"{p}/{q}"
    pi_s = "π" if abs(e) == 1 else f"π^{abs(e)}"
    if e > 0:
        num = pi_s if p == 1 else f"{p}{pi_s}"
        return num if q == 1 else f"{num}/{q}"
    den = pi_s if q == 1 else f"{q}{pi_s}"
    return f"{p}/({den})" if q != 1 else f"{p}/{den}"


# ----------------------------------------------------------------------
# sign determination via rational enclosures of pi

# Classical convergents: 333/106 < pi < 355/113.
_pi_lo = Fraction(333, 106)
_pi_hi = Fraction(355, 113)
_pi_terms = 2  # arctan series terms used so far


def _arctan_inv_bounds(x: int, m: int) -> tuple[Fraction, Fraction]:
    """Bounds for arctan(1/x) from m and m+1 terms of the alternating series."""
    s = Fraction(0)
    lo = hi = s
    for j in range(m + 1):
        term = Fraction((-1) ** j, (2 * j + 1) * x ** (2 * j + 1))
        s += term
        if j == m - 1:
            lo = s
        if j == m:
            hi = s
    if lo > hi:
        lo, hi = hi, lo
    return lo, hi


def pi_bounds(eps: Fraction) -> tuple[Fraction, Fraction]:
    """A rational enclosure (lo, hi) of pi with hi - lo < eps.

    Uses Machin's formula pi = 16*arctan(1/5) - 4*arctan(1/239), whose
    alternating partial sums bracket the true values.  Results are cached
    module-wide and refined on demand.
    """
    global _pi_lo, _pi_hi, _pi_terms
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    while _pi_hi - _pi_lo >= eps:
        _pi_terms += 2
        lo5, hi5 = _arctan_inv_bounds(5, _pi_terms)
        lo239, hi239 = _arctan_inv_bounds(239, _pi_terms)
        lo = 16 * lo5 - 4 * hi239
        hi = 16 * hi5 - 4 * lo239
        _pi_lo = max(_pi_lo, lo)
        _pi_hi = min(_pi_hi, hi)
    return _pi_lo, _pi_hi


_MIN_WIDTH = Fraction(1, 10**30)


def sign(s: Scalar) -> int:
    """The exact sign (-1, 0, 1) of a Scalar evaluated at the real pi.

    Monomials are decided from the rational coefficient.  Multi-term
    scalars are evaluated in interval arithmetic over enclosures of pi,
    refined adaptively; an interval still straddling zero at width 10^-30
    raises UndecidableSignError rather than guessing.
    """
    terms = s.items()
    if not terms:
        return 0
    if len(terms) == 1:
        c = terms[0][1]
        return 1 if c > 0 else -1
    eps = Fraction(1, 10**6)
    while True:
        lo_pi, hi_pi = pi_bounds(eps)
        lo = hi = Fraction(0)
        for e, c in terms:
            if e >= 0:
                b_lo, b_hi = lo_pi**e, hi_pi**e
            else:
                b_lo, b_hi = hi_pi**e, lo_pi**e
            if c >= 0:
                lo += c * b_lo
                hi += c * b_hi
            else:
                lo += c * b_hi
                hi += c * b_lo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == hi == 0:
            return 0
        if eps <= _MIN_WIDTH:
            raise UndecidableSignError(
                f"sign of {s} undecided at enclosure width 1e-30"
            )
        eps = eps * eps


# ----------------------------------------------------------------------
# combinatorial constants

factorial = math.factorial
binomial = math.comb


def double_factorial(m: int) -> int:
    """m!! = m (m-2) (m-4) ... with the convention (-1)!! = 1.

    Only m >= -1 is admitted; odd arguments are the ones that occur in the
    kinematic coefficients.
    """
    if m < -1:
        raise ValueError(f"double factorial undefined for m={m}")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@lru_cache(maxsize=None)
def omega(k: int) -> Scalar:
    """Volume of the k-dimensional euclidean unit ball, as an exact Scalar.

    omega_{2l} = pi^l / l! and omega_{2l+1} = 2^{l+1} pi^l / (2l+1)!!,
    the latter obtained from the Gamma function at half-integers.
    """
    if k < 0:
        raise ValueError(f"omega({k}) undefined")
    l, r = divmod(k, 2)
    if r == 0:
        return Scalar.of(Fraction(1, factorial(l)), l)
    return Scalar.of(Fraction(2 ** (l + 1), double_factorial(2 * l + 1)), l)
