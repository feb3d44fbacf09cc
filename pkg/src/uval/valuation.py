"""Unitary-invariant valuations on C^n in the hermitian intrinsic volume basis.

A :class:`Valuation` stores an element of the finite-dimensional graded
algebra of continuous, translation- and U(n)-invariant convex valuations.
The internal coordinates are the hermitian intrinsic volumes mu_{k,q},
indexed by degree 0 <= k <= 2n and max(0, k-n) <= q <= floor(k/2); these
form a genuine basis in every degree and the Fourier transform permutes
them.  The Tasaki valuations tau_{k,q} (whose Klain functions are the
elementary symmetric polynomials of the squared cosines of the multiple
Kaehler angle), the global monomials in (t, u), and the primitive elements
are views computed from the mu coordinates.

Locality is concentrated in a single map: :func:`from_monomial`, which
sends a global polynomial to its restriction at level n by expanding each
monomial in Tasaki valuations and dropping the mu terms that vanish
locally.  Every other conversion is derived from it, so the quotient by
the relation ideal (f_{n+1}, f_{n+2}) is handled in exactly one place.
The Alesker product is computed through this quotient map:
multiply(a, b) = from_monomial(n, to_monomial(a) * to_monomial(b)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .poly import GradedPoly, change_vars
from .scalar import RationalLike, Scalar, binomial, factorial, omega

__all__ = [
    "Valuation",
    "KlainPolynomial",
    "dim_val",
    "q_range",
    "mu",
    "tau",
    "chi",
    "vol",
    "from_monomial",
    "to_monomial",
    "multiply",
    "fourier",
    "iota",
    "klain",
    "tau_coords",
    "from_tau_coords",
]


def q_range(n: int, k: int) -> range:
    """Valid mu indices q at degree k in C^n: max(0, k-n) <= q <= floor(k/2)."""
    if n < 1:
        raise ValueError("ambient complex dimension must be >= 1")
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range for n={n}")
    return range(max(0, k - n), k // 2 + 1)


def dim_val(n: int, k: int) -> int:
    """dim of the degree-k graded piece: min(floor(k/2), floor((2n-k)/2)) + 1."""
    return len(q_range(n, k))


class Valuation:
    """An element of the valuation algebra at level n, in mu coordinates.

    The coefficient map {(k, q): Scalar} stores no zeros and only valid
    indices.  Instances are immutable values; all operations are pure.
    """

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[tuple[int, int], Scalar | RationalLike] | None = None):
        if n < 1:
            raise ValueError("ambient complex dimension must be >= 1")
        clean: dict[tuple[int, int], Scalar] = {}
        if coeffs:
            for (k, q), c in coeffs.items():
                if q not in q_range(n, k):
                    raise ValueError(f"mu index (k={k}, q={q}) out of range at n={n}")
                if not isinstance(c, Scalar):
                    c = Scalar.of(c)
                if not c.is_zero:
                    clean[(k, q)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Valuation is immutable")

    # ------------------------------------------------------------------
    @staticmethod
    def zero(n: int) -> "Valuation":
        return Valuation(n)

    def items(self) -> list[tuple[tuple[int, int], Scalar]]:
        return sorted(self._coeffs.items())

    def coefficient(self, k: int, q: int) -> Scalar:
        return self._coeffs.get((k, q), Scalar.zero())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def degrees(self) -> list[int]:
        return sorted({k for k, _ in self._coeffs})

    def component(self, k: int) -> "Valuation":
        return _raw(self.n, {kq: c for kq, c in self._coeffs.items() if kq[0] == k})

    def homogeneous_degree(self) -> int | None:
        """The degree if homogeneous (zero counts as every degree), else None."""
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) == 1:
            return ds[0]
        return None

    def mu_vector(self, k: int) -> list[Scalar]:
        """Coefficients (a_q) of the degree-k component, q ascending."""
        return [self.coefficient(k, q) for q in q_range(self.n, k)]

    # ------------------------------------------------------------------
    def _check_n(self, other: "Valuation") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Valuation") -> "Valuation":
        if not isinstance(other, Valuation):
            return NotImplemented
        self._check_n(other)
        out = dict(self._coeffs)
        for kq, c in other._coeffs.items():
            s = out.get(kq, Scalar.zero()) + c
            if s.is_zero:
                out.pop(kq, None)
            else:
                out[kq] = s
        return _raw(self.n, out)

    def __sub__(self, other: "Valuation") -> "Valuation":
        return self + (-other)

    def __neg__(self) -> "Valuation":
        return _raw(self.n, {kq: -c for kq, c in self._coeffs.items()})

    def __mul__(self, other):
        """Scalar rescaling; use :func:`multiply` for the Alesker product."""
        if isinstance(other, (Scalar, int, Fraction)):
            if not isinstance(other, Scalar):
                other = Scalar.of(other)
            if other.is_zero:
                return Valuation.zero(self.n)
            return _raw(self.n, {kq: c * other for kq, c in self._coeffs.items()})
        if isinstance(other, Valuation):
            return multiply(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational or monomial Scalar."""
        if isinstance(other, (Scalar, int, Fraction)):
            return _raw(self.n, {kq: c / other for kq, c in self._coeffs.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.items())))

    # ------------------------------------------------------------------
    def to_json(self) -> dict:
        components: dict[str, list] = {}
        for (k, q), c in self.items():
            components.setdefault(str(k), []).append({"q": q, "coeff": c.to_json()})
        return {"n": self.n, "components": components}

    @staticmethod
    def from_json(data: Mapping) -> "Valuation":
        n = int(data["n"])
        coeffs: dict[tuple[int, int], Scalar] = {}
        for k_str, entries in data.get("components", {}).items():
            for entry in entries:
                coeffs[(int(k_str), int(entry["q"]))] = Scalar.from_json(entry["coeff"])
        return Valuation(n, coeffs)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for (k, q), c in self.items():
            atom = f"mu[{k},{q}]"
            if c == Scalar.one():
                term = atom
            elif c == -Scalar.one():
                term = f"-{atom}"
            else:
                term = f"({c})*{atom}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Valuation(n={self.n}, {self})"


def _raw(n: int, coeffs: dict[tuple[int, int], Scalar]) -> Valuation:
    v = Valuation.__new__(Valuation)
    object.__setattr__(v, "n", n)
    object.__setattr__(v, "_coeffs", coeffs)
    return v


# ----------------------------------------------------------------------
# canonical basis constructors

def mu(n: int, k: int, q: int) -> Valuation:
    """The hermitian intrinsic volume mu_{k,q}; rejects out-of-range indices.

    mu_{0,0} is the Euler characteristic and mu_{2n,n} the volume.  Inside
    formulas an out-of-range mu is zero, but as a constructor request it is
    an error.
    """
    if q not in q_range(n, k):
        raise ValueError(f"mu index (k={k}, q={q}) out of range at n={n}")
    return _raw(n, {(k, q): Scalar.one()})


def tau(n: int, k: int, q: int) -> Valuation:
    """The Tasaki valuation tau_{k,q} = sum_i C(i,q) mu_{k,i} at level n.

    Indices require 0 <= q <= floor(k/2) and k <= 2n; mu terms with
    i < k - n vanish locally and are dropped (so e.g. tau_{2,0} = mu_{2,1}
    at n = 1).
    """
    if n < 1:
        raise ValueError("ambient complex dimension must be >= 1")
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range for n={n}")
    if not 0 <= q <= k // 2:
        raise ValueError(f"tau index (k={k}, q={q}) out of range")
    coeffs = {
        (k, i): Scalar.of(binomial(i, q))
        for i in q_range(n, k)
        if i >= q
    }
    return _raw(n, coeffs)


def chi(n: int) -> Valuation:
    """The Euler characteristic, the unit of the algebra."""
    return mu(n, 0, 0)


def vol(n: int) -> Valuation:
    """The Lebesgue volume of C^n, the top-degree basis element mu_{2n,n}."""
    return mu(n, 2 * n, n)


# ----------------------------------------------------------------------
# the quotient map and its canonical section

@lru_cache(maxsize=None)
def _tau_monomial(k: int, q: int) -> GradedPoly:
    """Global representative of tau_{k,q}: pi^k/(omega_k (k-2q)!(2q)!) t^{k-2q} u^q."""
    c = Scalar.pi(k) / (omega(k) * Fraction(factorial(k - 2 * q) * factorial(2 * q)))
    return GradedPoly.monomial(k - 2 * q, q, c)


@lru_cache(maxsize=None)
def _mu_monomial(k: int, q: int) -> GradedPoly:
    """Global representative of mu_{k,q} = sum_i (-1)^{i+q} C(i,q) tau_{k,i}."""
    out = GradedPoly.zero()
    for i in range(q, k // 2 + 1):
        out = out + _tau_monomial(k, i) * Fraction((-1) ** (i + q) * binomial(i, q))
    return out


@lru_cache(maxsize=None)
def _monomial_image(n: int, a: int, b: int) -> Valuation:
    """Image of the monomial t^a u^b under the quotient map at level n."""
    k = a + 2 * b
    if k > 2 * n:
        return Valuation.zero(n)
    factor = omega(k) * Fraction(factorial(a) * factorial(2 * b)) / Scalar.pi(k)
    return tau(n, k, b) * factor


def from_monomial(n: int, p: GradedPoly) -> Valuation:
    """The quotient map Q[t, u] -> Val at level n (also accepts the (s, t) chart).

    Each monomial t^{k-2q} u^q maps to omega_k (k-2q)!(2q)!/pi^k times the
    local Tasaki valuation tau_{k,q}; graded pieces of degree above 2n map
    to zero.
    """
    p = change_vars(p, "tu")
    out = Valuation.zero(n)
    for (a, b), c in p.items():
        img = _monomial_image(n, a, b)
        if not img.is_zero:
            out = out + img * c
    return out


def to_monomial(v: Valuation) -> GradedPoly:
    """The canonical global polynomial representative of v, in the (t, u) chart.

    mu_{k,q} lifts to sum_i (-1)^{i+q} C(i,q) pi^k/(omega_k (k-2i)!(2i)!)
    t^{k-2i} u^i; from_monomial inverts this lift exactly.
    """
    out = GradedPoly.zero()
    for (k, q), c in v.items():
        out = out + _mu_monomial(k, q) * c
    return out


def multiply(a: Valuation, b: Valuation) -> Valuation:
    """The Alesker product, computed on global representatives.

    Commutative and graded, with unit chi; exact by construction since the
    quotient map is an algebra homomorphism.
    """
    if a.n != b.n:
        raise ValueError(f"ambient dimension mismatch: {a.n} vs {b.n}")
    return from_monomial(a.n, to_monomial(a) * to_monomial(b))


# ----------------------------------------------------------------------
# involutions

def fourier(v: Valuation) -> Valuation:
    """The Alesker-Fourier transform: the index permutation
    mu_{k,q} -> mu_{2n-k, n-k+q}.  An involution that reverses degree."""
    n = v.n
    return _raw(n, {(2 * n - k, n - k + q): c for (k, q), c in v.items()})


def iota(v: Valuation) -> Valuation:
    """The degree-preserving algebra involution tau_{2l,q} -> tau_{2l,l-q}.

    Defined on valuations of even degree only.  On the canonical global
    representative it is the monomial swap t^a u^b -> t^{2b} u^{a/2}, which
    is applied there and pushed back through the quotient map.
    """
    if any(k % 2 for k in v.degrees()):
        raise ValueError("iota is defined on even-degree valuations only")
    p = to_monomial(v)
    swapped = {}
    for (a, b), c in p.items():
        swapped[(2 * b, a // 2)] = c
    return from_monomial(v.n, GradedPoly(swapped))


# ----------------------------------------------------------------------
# Tasaki coordinates and Klain functions

def tau_coords(v: Valuation, k: int) -> list[Scalar]:
    """Coordinates of the degree-k component in the canonical degree-k basis.

    For k <= n this is the Tasaki basis tau_{k,j}; for k > n it is the
    Fourier-transformed basis F(tau_{2n-k,j}), obtained by transforming the
    component back below the middle degree.
    """
    n = v.n
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range for n={n}")
    if k > n:
        return tau_coords(fourier(v.component(k)), 2 * n - k)
    # invert tau_{k,q} = sum_i C(i,q) mu_{k,i}: coefficient of tau_{k,j}
    # in mu_{k,q} is (-1)^{j+q} C(j,q)
    a = v.mu_vector(k)
    p = k // 2
    return [
        sum(
            (Scalar.of((-1) ** (j + q) * binomial(j, q)) * a[q] for q in range(j + 1)),
            Scalar.zero(),
        )
        for j in range(p + 1)
    ]


def from_tau_coords(n: int, k: int, coords: Sequence[Scalar | RationalLike]) -> Valuation:
    """The valuation sum_j coords[j] * tau_{k,j} (k <= n), inverse of tau_coords."""
    if k > n:
        raise ValueError("from_tau_coords requires k <= n")
    out = Valuation.zero(n)
    for j, c in enumerate(coords):
        if not isinstance(c, Scalar):
            c = Scalar.of(c)
        if not c.is_zero:
            out = out + tau(n, k, j) * c
    return out


@dataclass(frozen=True)
class KlainPolynomial:
    """The Klain function of a degree-k invariant valuation, written as
    sum_q sigma_coeffs[q] * sigma_q(cos^2 theta_1, ..., cos^2 theta_p) in the
    multiple Kaehler angle of the argument plane (p = floor(k/2))."""

    degree: int
    sigma_coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.sigma_coeffs) != self.degree // 2 + 1:
            raise ValueError("sigma coefficient vector has wrong length")

    def evaluate(self, cos2: Sequence[float]) -> float:
        """Numeric value at a plane with the given squared angle cosines."""
        if len(cos2) != self.degree // 2:
            raise ValueError("wrong number of angle cosines")
        es = elementary_symmetric_float(cos2)
        return sum(float(c.to_float()) * e for c, e in zip(self.sigma_coeffs, es))

    def evaluate_exact(self, cos2: Sequence[Fraction]) -> Scalar:
        """Exact value at rational squared cosines."""
        if len(cos2) != self.degree // 2:
            raise ValueError("wrong number of angle cosines")
        es = elementary_symmetric_exact([Fraction(x) for x in cos2])
        out = Scalar.zero()
        for c, e in zip(self.sigma_coeffs, es):
            out = out + c * e
        return out


def elementary_symmetric_float(xs: Sequence[float]) -> list[float]:
    """All elementary symmetric polynomials e_0..e_len(xs) of the values."""
    es = [1.0] + [0.0] * len(xs)
    for x in xs:
        for j in range(len(xs), 0, -1):
            es[j] += x * es[j - 1]
    return es


def elementary_symmetric_exact(xs: Sequence[Fraction]) -> list[Fraction]:
    es = [Fraction(1)] + [Fraction(0)] * len(xs)
    for x in xs:
        for j in range(len(xs), 0, -1):
            es[j] += x * es[j - 1]
    return es


def klain(v: Valuation, k: int) -> KlainPolynomial:
    """The Klain function of the degree-k component, k <= n.

    For degrees above the middle the Klain function factors through the
    orthogonal complement; call klain(fourier(v), 2n - k) instead, which is
    what the error message directs to.
    """
    if k > v.n:
        raise ValueError(
            f"klain is computed for degree <= n = {v.n}; for degree {k} use "
            f"klain(fourier(v), {2 * v.n - k}) per the complement convention"
        )
    return KlainPolynomial(k, tuple(tau_coords(v, k)))
