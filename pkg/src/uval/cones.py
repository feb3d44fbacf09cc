"""Positivity, monotonicity and Crofton-positivity of invariant valuations.

Three nested cones are tested here.  The positive cone P is spanned by the
hermitian intrinsic volumes, so membership is a sign condition on mu
coordinates.  The Crofton-positive cone CP is dual to P under the
symmetric pairing; its coordinates are taken in the dual basis nu_{k,p}
(the unit-mass invariant Crofton measures concentrated on one orbit), so
membership asks that all pairings <v, mu_{k,q}> be nonnegative.  The
monotone cone M sits strictly between them and is cut out, degree by
degree, by the two families of linear inequalities

    (k-2q) a_q       >= (k-2q-1) a_{q+1}
    (n+q-k+1) a_q    <= (n+q-k+3/2) a_{q+1},

together with a nonnegative value on points (the chi coefficient).

The first-variation map delta sends a valuation to a formal combination
of the hermitian curvature-measure symbols B_{k,q} and Gamma_{k,q}; only
the signs of its coefficients matter for monotonicity, and the sign
pattern reproduces the inequalities above.  The symbols are never
evaluated on convex bodies.

All sign decisions are exact (see scalar.sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .kinematic import pairing_fourier
from .linalg import invert_scalar_matrix
from .scalar import Scalar, factorial, omega
from .valuation import Valuation, mu, q_range

__all__ = [
    "ConeVerdict",
    "CurvExpr",
    "nu",
    "nu_coeffs",
    "mu_gram",
    "is_positive",
    "is_monotone",
    "is_crofton_positive",
    "first_variation",
    "norm_inf",
    "norm_one",
]


@dataclass(frozen=True)
class ConeVerdict:
    """Outcome of a cone membership test; carries a witness on failure."""

    member: bool
    witness: Optional[dict] = None

    def __post_init__(self):
        if self.member and self.witness is not None:
            raise ValueError("a member verdict carries no witness")
        if not self.member and self.witness is None:
            raise ValueError("a failure verdict requires a witness")

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        return {"member": self.member, "witness": self.witness}


_MEMBER = ConeVerdict(True)


# ----------------------------------------------------------------------
# dual basis and Crofton positivity

@lru_cache(maxsize=None)
def mu_gram(n: int, k: int) -> tuple[tuple[Scalar, ...], ...]:
    """Gram matrix G_pq = <mu_{k,p}, mu_{k,q}> of the symmetric pairing."""
    qs = list(q_range(n, k))
    basis = [mu(n, k, q) for q in qs]
    return tuple(
        tuple(pairing_fourier(basis[i], basis[j]) for j in range(len(qs)))
        for i in range(len(qs))
    )


@lru_cache(maxsize=None)
def _mu_gram_inverse(n: int, k: int) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(tuple(row) for row in invert_scalar_matrix(mu_gram(n, k)))


def nu(n: int, k: int, p: int) -> Valuation:
    """The Crofton-dual basis element nu_{k,p}: <nu_{k,p}, mu_{l,q}> = delta.

    Geometrically the valuation of the unit-mass invariant Crofton measure
    on the orbit of planes of type (k, p).
    """
    qs = list(q_range(n, k))
    if p not in qs:
        raise ValueError(f"nu index (k={k}, p={p}) out of range at n={n}")
    inv = _mu_gram_inverse(n, k)
    row = inv[qs.index(p)]
    out = Valuation.zero(n)
    for q, c in zip(qs, row):
        out = out + mu(n, k, q) * c
    return out


def nu_coeffs(v: Valuation, k: int) -> list[Scalar]:
    """Coordinates of a degree-k homogeneous valuation in the nu basis.

    b_q = <v, mu_{k,q}>, computed through the cached Gram matrix (equal to
    the direct pairing by bilinearity).
    """
    if v.degrees() not in ([], [k]):
        raise ValueError("nu_coeffs requires a homogeneous valuation of the stated degree")
    gram = mu_gram(v.n, k)
    a = v.mu_vector(k)
    out = []
    for q in range(len(gram)):
        s = Scalar.zero()
        for p, ap in enumerate(a):
            if not ap.is_zero:
                s = s + gram[p][q] * ap
        out.append(s)
    return out


# ----------------------------------------------------------------------
# the three cones

def is_positive(v: Valuation) -> ConeVerdict:
    """Membership in P: every mu coefficient nonnegative."""
    for (k, q), c in v.items():
        if c.sign() < 0:
            return ConeVerdict(
                False,
                {"kind": "negative_mu_coefficient", "k": k, "q": q, "coefficient": str(c)},
            )
    return _MEMBER


def is_crofton_positive(v: Valuation) -> ConeVerdict:
    """Membership in CP: every nu coordinate of every degree nonnegative."""
    for k in v.degrees():
        qs = list(q_range(v.n, k))
        for q, b in zip(qs, nu_coeffs(v.component(k), k)):
            if b.sign() < 0:
                return ConeVerdict(
                    False,
                    {"kind": "negative_nu_coordinate", "k": k, "q": q, "coordinate": str(b)},
                )
    return _MEMBER


def is_monotone(v: Valuation) -> ConeVerdict:
    """Membership in the monotone cone M.

    The value on points (the chi coefficient) must be nonnegative, and
    every degree component must satisfy both inequality families; indices
    outside the valid mu range enter with coefficient zero, matching the
    local vanishing of the corresponding basis elements.
    """
    n = v.n
    c0 = v.coefficient(0, 0)
    if c0.sign() < 0:
        return ConeVerdict(False, {"kind": "negative_point_value", "value": str(c0)})
    for k in v.degrees():
        if k == 0:
            continue
        verdict = _component_monotone(n, k, {q: v.coefficient(k, q) for q in q_range(n, k)})
        if not verdict.member:
            return verdict
    return _MEMBER


def _component_monotone(n: int, k: int, a: dict[int, Scalar]) -> ConeVerdict:
    def coeff(q: int) -> Scalar:
        return a.get(q, Scalar.zero())

    for q in range(max(0, k - n), (k - 1) // 2 + 1):
        lhs = coeff(q) * (k - 2 * q) - coeff(q + 1) * (k - 2 * q - 1)
        if lhs.sign() < 0:
            return ConeVerdict(
                False,
                {"kind": "inequality", "family": 1, "k": k, "q": q, "slack": str(lhs)},
            )
    for q in range(max(0, k - n - 1), (k - 2) // 2 + 1):
        lhs = coeff(q + 1) * Fraction(2 * (n + q - k) + 3, 2) - coeff(q) * (n + q - k + 1)
        if lhs.sign() < 0:
            return ConeVerdict(
                False,
                {"kind": "inequality", "family": 2, "k": k, "q": q, "slack": str(lhs)},
            )
    return _MEMBER


# ----------------------------------------------------------------------
# first variation

@dataclass(frozen=True)
class CurvExpr:
    """A formal combination of curvature-measure symbols.

    terms maps ("B" | "Gamma", k, q) to a Scalar coefficient.  B_{k,q}
    requires k > 2q and Gamma_{k,q} requires n > k - q; both conditions
    are enforced at construction.  The symbols stay formal: only their
    coefficients are ever inspected.
    """

    n: int
    terms: dict[tuple[str, int, int], Scalar]

    def __post_init__(self):
        for (sym, k, q), c in self.terms.items():
            if sym == "B":
                if not k > 2 * q:
                    raise ValueError(f"B_({k},{q}) needs k > 2q")
            elif sym == "Gamma":
                if not self.n > k - q:
                    raise ValueError(f"Gamma_({k},{q}) needs n > k - q")
            else:
                raise ValueError(f"unknown curvature symbol {sym!r}")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, sym: str, k: int, q: int) -> Scalar:
        return self.terms.get((sym, k, q), Scalar.zero())

    def items(self):
        return sorted(self.terms.items())

    def all_nonnegative(self) -> bool:
        return all(c.sign() >= 0 for c in self.terms.values())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{sym}[{k},{q}]" for (sym, k, q), c in self.items())


@lru_cache(maxsize=None)
def _c_const(n: int, k: int, q: int) -> Scalar:
    """c_{n,k,q} = 1/(q! (n-k+q)! (k-2q)! omega_{2n-k})."""
    return Scalar.of(
        Fraction(1, factorial(q) * factorial(n - k + q) * factorial(k - 2 * q))
    ) / omega(2 * n - k)


def first_variation(n: int, v: Valuation) -> CurvExpr:
    """The first-variation curvature measure delta(v), as a CurvExpr.

    Linear extension of the four-term expression for delta(mu_{k,q}); the
    Euler characteristic spans the kernel.  Degree drops by exactly one.
    """
    if v.n != n:
        raise ValueError(f"ambient dimension mismatch: {v.n} vs {n}")
    acc: dict[tuple[str, int, int], Scalar] = {}

    def add(sym: str, k: int, q: int, c: Scalar) -> None:
        if c.is_zero:
            return
        key = (sym, k, q)
        s = acc.get(key, Scalar.zero()) + c
        if s.is_zero:
            acc.pop(key, None)
        else:
            acc[key] = s

    for (k, q), a in v.items():
        if k == 0:
            continue
        c2 = a * 2 * _c_const(n, k, q)
        r_same = c2 / _c_const(n, k - 1, q) if k - 1 >= 2 * q else None
        r_down = c2 / _c_const(n, k - 1, q - 1) if q >= 1 else None
        if r_same is not None:
            add("Gamma", k - 1, q, r_same * (k - 2 * q) ** 2)
            add("B", k - 1, q, r_same * (-(k - 2 * q) * (k - 2 * q - 1)))
        if r_down is not None:
            add("Gamma", k - 1, q - 1, r_down * (-(n + q - k) * q))
            add("B", k - 1, q - 1, r_down * Fraction(q * (2 * (n + q - k) + 1), 2))
    return CurvExpr(n, acc)


# ----------------------------------------------------------------------
# norms

def norm_inf(v: Valuation) -> Scalar:
    """max_q |a_q| over the mu coefficients of a homogeneous valuation."""
    k = _require_homogeneous(v)
    best = Scalar.zero()
    for q in q_range(v.n, k):
        c = abs(v.coefficient(k, q))
        if (c - best).sign() > 0:
            best = c
    return best


def norm_one(v: Valuation) -> Scalar:
    """sum_q |b_q| over the nu coordinates of a homogeneous valuation."""
    k = _require_homogeneous(v)
    total = Scalar.zero()
    for b in nu_coeffs(v, k):
        total = total + abs(b)
    return total


def _require_homogeneous(v: Valuation) -> int:
    k = v.homogeneous_degree()
    if k is None:
        raise ValueError("norms are defined on homogeneous valuations only")
    return k
