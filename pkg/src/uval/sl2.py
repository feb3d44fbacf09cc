"""The sl(2,R)-structure on the unitary valuation algebra.

The raising operator L, lowering operator Lambda and grading operator H
act on mu coordinates by

    L  mu_{k,q} = 2(q+1) mu_{k+1,q+1} + (k-2q+1) mu_{k+1,q}
    La mu_{k,q} = 2(n-k+q+1) mu_{k-1,q} + (k-2q+1) mu_{k-1,q-1}
    H  = (2k - 2n) on the degree-k component,

with out-of-range targets understood as zero.  L is implemented directly
on coordinates rather than as multiplication by mu_1, which avoids a
circular dependency on the product; the multiplicative description
survives as a cross-check invariant in the test suite.

Primitive elements pi_{k,r} (kernel of Lambda, one per admissible (k, r))
are built from their closed Tasaki expansion, normalised so that the
tau_{2r,r} coefficient of pi_{2r,r} is 1; pi_{k,r} = L^{k-2r} pi_{2r,r}.
The Lefschetz decomposition expands each graded piece in this basis by
exact rational linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import invert_fraction_matrix
from .scalar import Scalar, double_factorial, factorial
from .valuation import Valuation, dim_val, q_range, tau

__all__ = [
    "apply_L",
    "apply_Lambda",
    "apply_H",
    "Sl2Operator",
    "primitive",
    "primitive_general",
    "lefschetz_decompose",
    "reconstruct",
]


def _add_term(out: dict, n: int, k: int, q: int, c: Scalar) -> None:
    if c.is_zero or not 0 <= k <= 2 * n or q not in q_range(n, k):
        return
    s = out.get((k, q), Scalar.zero()) + c
    if s.is_zero:
        out.pop((k, q), None)
    else:
        out[(k, q)] = s


def apply_L(v: Valuation) -> Valuation:
    """The degree-raising operator; kills the top-degree component."""
    n = v.n
    out: dict[tuple[int, int], Scalar] = {}
    for (k, q), c in v.items():
        _add_term(out, n, k + 1, q + 1, c * 2 * (q + 1))
        _add_term(out, n, k + 1, q, c * (k - 2 * q + 1))
    return Valuation(n, out)


def apply_Lambda(v: Valuation) -> Valuation:
    """The degree-lowering operator; kills the Euler characteristic."""
    n = v.n
    out: dict[tuple[int, int], Scalar] = {}
    for (k, q), c in v.items():
        _add_term(out, n, k - 1, q, c * 2 * (n - k + q + 1))
        _add_term(out, n, k - 1, q - 1, c * (k - 2 * q + 1))
    return Valuation(n, out)


def apply_H(v: Valuation) -> Valuation:
    """The grading operator: eigenvalue 2k - 2n on the degree-k component."""
    n = v.n
    out = {
        (k, q): c * (2 * k - 2 * n)
        for (k, q), c in v.items()
        if k != n
    }
    return Valuation(n, out)


@dataclass(frozen=True)
class Sl2Operator:
    """One of the three sl(2) generators, dispatchable by name."""

    kind: str  # "L" | "Lambda" | "H"

    def __post_init__(self):
        if self.kind not in ("L", "Lambda", "H"):
            raise ValueError(f"unknown sl2 operator {self.kind!r}")

    def apply(self, v: Valuation) -> Valuation:
        if self.kind == "L":
            return apply_L(v)
        if self.kind == "Lambda":
            return apply_Lambda(v)
        return apply_H(v)


# ----------------------------------------------------------------------
# primitive elements

def primitive(n: int, r: int) -> Valuation:
    """The primitive element pi_{2r,r}, 0 <= 2r <= n.

    pi_{2r,r} = (-1)^r (2n-4r+1)!! sum_i (-1)^i (2r-2i-1)!!/(2n-2r-2i+1)!!
    tau_{2r,i}; it spans the kernel of Lambda in degree 2r and its leading
    tau_{2r,r} coefficient is 1.
    """
    if r < 0 or 2 * r > n:
        raise ValueError(f"primitive element needs 0 <= 2r <= n, got r={r}, n={n}")
    out = Valuation.zero(n)
    lead = (-1) ** r * double_factorial(2 * n - 4 * r + 1)
    for i in range(r + 1):
        c = Fraction(
            lead * (-1) ** i * double_factorial(2 * r - 2 * i - 1),
            double_factorial(2 * n - 2 * r - 2 * i + 1),
        )
        out = out + tau(n, 2 * r, i) * c
    return out


def primitive_general(n: int, k: int, r: int) -> Valuation:
    """pi_{k,r} = L^{k-2r} pi_{2r,r} via its closed Tasaki expansion.

    Admissible range 2r <= k <= 2n - 2r.  The operator-iteration route is
    equivalent and kept as a test invariant.
    """
    if not (0 <= 2 * r <= k <= 2 * n - 2 * r):
        raise ValueError(f"primitive element needs 2r <= k <= 2n-2r, got (n,k,r)=({n},{k},{r})")
    out = Valuation.zero(n)
    lead = (-1) ** r * double_factorial(2 * n - 4 * r + 1)
    for i in range(r + 1):
        c = Fraction(
            lead * (-1) ** i * factorial(k - 2 * i) * double_factorial(2 * r - 2 * i - 1),
            factorial(2 * r - 2 * i) * double_factorial(2 * n - 2 * r - 2 * i + 1),
        )
        out = out + tau(n, k, i) * c
    return out


@lru_cache(maxsize=None)
def _primitive_basis_inverse(n: int, k: int) -> list[list[Fraction]]:
    """Inverse of the matrix whose columns are the mu coordinates of
    pi_{k,r}, r = 0..p; the coordinates are rational numbers."""
    qs = list(q_range(n, k))
    cols = []
    for r in range(dim_val(n, k)):
        p = primitive_general(n, k, r)
        cols.append([p.coefficient(k, q).as_fraction() for q in qs])
    matrix = [[cols[r][i] for r in range(len(cols))] for i in range(len(qs))]
    return invert_fraction_matrix(matrix)


def lefschetz_decompose(v: Valuation) -> list[tuple[int, int, Scalar]]:
    """Expansion of v in the primitive basis: [(k, r, coefficient), ...].

    The pi_{k,r} with 0 <= r <= min(k, 2n-k)/2 form a basis of each graded
    piece; coefficients are recovered by exact linear algebra and
    reconstruction (sum of c * pi_{k,r}) is exact.
    """
    n = v.n
    out: list[tuple[int, int, Scalar]] = []
    for k in v.degrees():
        inv = _primitive_basis_inverse(n, k)
        a = v.mu_vector(k)
        for r, row in enumerate(inv):
            c = Scalar.zero()
            for x, coeff in zip(row, a):
                if x:
                    c = c + coeff * x
            if not c.is_zero:
                out.append((k, r, c))
    return out


def reconstruct(n: int, parts: list[tuple[int, int, Scalar]]) -> Valuation:
    """Inverse of :func:`lefschetz_decompose`."""
    out = Valuation.zero(n)
    for k, r, c in parts:
        out = out + primitive_general(n, k, r) * c
    return out
