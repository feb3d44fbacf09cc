"""Poincare pairings, Tasaki matrices and the unitary kinematic formulas.

The kinematic operator at level n sends an invariant valuation m to the
tensor describing the motion-group average of m(A intersect gB); with
Haar measure normalised so that the translation mass of {g : g.o in S}
is vol(S).  Its blocks are computed from inverse pairing matrices: if
phi_i, psi_j run through bases of the degree-k piece and its complementary
piece and M_ij = (phi_i, psi_j) is the duality pairing, then the degree-k
contribution is sum K_ij (m phi_i) x psi_j with K = M^{-1}.

Two fully independent routes produce the Tasaki matrices T^n_k = K for the
Tasaki basis: exact inversion of the pairing Gram matrix, and the closed
double-factorial sum obtained from the primitive (Lefschetz) basis, in
which the pairing is antidiagonal.  Their exact agreement is the central
cross-check of the package.

Block convention: the leg of degree a is expressed in tau_{a, .} when
a <= n and in the Fourier-transformed basis F(tau_{2n-a, .}) otherwise,
so every matrix printed here pairs angle data of a submanifold with angle
data of the orthogonal complement of the other, as in the Crofton form of
the formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .linalg import invert_scalar_matrix, scalar_matrix_det
from .scalar import Scalar, binomial, double_factorial, factorial, omega
from .valuation import (
    Valuation,
    chi,
    dim_val,
    fourier,
    multiply,
    mu,
    tau,
    tau_coords,
)

__all__ = [
    "pairing_pd",
    "pairing_fourier",
    "TasakiMatrix",
    "tasaki_matrix_closed",
    "tasaki_matrix_oracle",
    "KinematicTensor",
    "principal_kinematic",
    "kinematic",
    "additive_kinematic",
    "cpn_normalize",
    "bezout_check",
    "primitive_pairing_closed",
    "basis_label",
    "canonical_basis",
]


def pairing_pd(a: Valuation, b: Valuation) -> Scalar:
    """Poincare duality pairing: the volume coefficient of the product."""
    if a.n != b.n:
        raise ValueError(f"ambient dimension mismatch: {a.n} vs {b.n}")
    prod = multiply(a, b)
    return prod.coefficient(2 * a.n, a.n)


def pairing_fourier(a: Valuation, b: Valuation) -> Scalar:
    """The symmetric pairing <a, b> = (a, fourier(b))."""
    return pairing_pd(a, fourier(b))


# ----------------------------------------------------------------------
# Tasaki matrices

@dataclass(frozen=True)
class TasakiMatrix:
    """The (p+1)x(p+1) coefficient matrix of the degree-(k, 2n-k) Crofton
    formula over the bases tau_{k,i} and F(tau_{k,j})."""

    n: int
    k: int
    entries: tuple[tuple[Scalar, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        return self.entries[ij[0]][ij[1]]

    def leading_minor_dets(self) -> list[Scalar]:
        rows = [list(r) for r in self.entries]
        return [
            scalar_matrix_det([row[: j + 1] for row in rows[: j + 1]])
            for j in range(self.size)
        ]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "matrix": [[s.to_json() for s in row] for row in self.entries],
        }

    def pretty(self) -> str:
        """Render as `common_factor * [[...], [...]]` with integer-leaning
        entries; the factor is the gcd of the entries (single pi power)."""
        exps = {s.monomial()[0] for row in self.entries for s in row if not s.is_zero}
        if len(exps) > 1:  # pragma: no cover - prevented by pairing structure
            raise ValueError("mixed pi powers in Tasaki matrix")
        m = exps.pop() if exps else 0
        fracs = [[s.coefficient(m) for s in row] for row in self.entries]
        num = 0
        den = 1
        for row in fracs:
            for c in row:
                num = gcd(num, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
        factor = Fraction(num, den) if num else Fraction(1)
        body = "[" + ",".join(
            "[" + ",".join(_frac_str(c / factor) for c in row) + "]" for row in fracs
        ) + "]"
        return f"{Scalar.of(factor, m)} * {body}"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def tasaki_matrix_closed(n: int, k: int) -> TasakiMatrix:
    """T^n_k from the closed double-factorial sum (0 <= k <= n).

    Entry (i, j) is (-1)^{i+j} omega_k omega_{2n-k} / pi^n times a finite
    sum over the primitive degrees r = max(i,j) .. floor(k/2); no further
    simplification of the sum is attempted.
    """
    if not 0 <= k <= n:
        raise ValueError("tasaki_matrix_closed needs 0 <= k <= n; use the Fourier symmetry above the middle degree")
    p = k // 2
    pref = omega(k) * omega(2 * n - k) / Scalar.pi(n)
    rows = []
    for i in range(p + 1):
        row = []
        for j in range(p + 1):
            total = Fraction(0)
            for r in range(max(i, j), p + 1):
                num = (
                    factorial(2 * n - 2 * r - k)
                    * factorial(n - r)
                    * factorial(k - 2 * i)
                    * factorial(k - 2 * j)
                    * double_factorial(2 * n - 2 * r + 1)
                    * double_factorial(2 * n - 4 * r + 1)
                    * double_factorial(2 * r - 2 * i - 1)
                    * double_factorial(2 * r - 2 * j - 1)
                )
                den = (
                    binomial(n, 2 * r)
                    * 8**r
                    * factorial(k - 2 * r)
                    * factorial(2 * n - 4 * r)
                    * factorial(2 * r - 2 * i)
                    * factorial(2 * r - 2 * j)
                    * double_factorial(2 * n - 2 * r - 2 * i + 1)
                    * double_factorial(2 * n - 2 * r - 2 * j + 1)
                )
                total += Fraction(num, den)
            row.append(pref * ((-1) ** (i + j) * total))
        rows.append(tuple(row))
    return TasakiMatrix(n, k, tuple(rows))


@lru_cache(maxsize=None)
def tasaki_matrix_oracle(n: int, k: int) -> TasakiMatrix:
    """T^n_k as the exact inverse of the pairing Gram matrix
    M_ij = (tau_{k,i}, F(tau_{k,j})), the independent route."""
    if not 0 <= k <= n:
        raise ValueError("tasaki_matrix_oracle needs 0 <= k <= n; use the Fourier symmetry above the middle degree")
    p = k // 2
    taus = [tau(n, k, i) for i in range(p + 1)]
    ftaus = [fourier(t) for t in taus]
    gram = [[pairing_pd(taus[i], ftaus[j]) for j in range(p + 1)] for i in range(p + 1)]
    inv = invert_scalar_matrix(gram)
    return TasakiMatrix(n, k, tuple(tuple(row) for row in inv))


# ----------------------------------------------------------------------
# kinematic tensors

def basis_label(n: int, a: int) -> str:
    """Canonical basis name for the degree-a leg of a tensor block."""
    return f"tau[{a}]" if a <= n else f"F(tau[{2 * n - a}])"


def canonical_basis(n: int, a: int) -> list[Valuation]:
    """The canonical basis of the degree-a piece matching basis_label."""
    if a <= n:
        return [tau(n, a, i) for i in range(dim_val(n, a))]
    return [fourier(tau(n, 2 * n - a, i)) for i in range(dim_val(n, a))]


@dataclass(frozen=True)
class KinematicTensor:
    """A bigraded array of Scalars over pairs of canonical basis elements.

    blocks maps a bidegree (a, b) to a dim(a) x dim(b) matrix; the bases
    are determined by the block convention (see basis_label).  kind is
    "kinematic" (intersection) or "additive" (Minkowski sum); the
    cpn_normalized flag records whether the probability normalisation of
    complex projective space has been applied, which is never implicit.
    """

    n: int
    mu: Valuation
    blocks: dict[tuple[int, int], tuple[tuple[Scalar, ...], ...]] = field(compare=True)
    kind: str = "kinematic"
    cpn_normalized: bool = False

    def block(self, a: int, b: int) -> tuple[tuple[Scalar, ...], ...]:
        return self.blocks[(a, b)]

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted(self.blocks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "cpn_normalized": self.cpn_normalized,
            "mu": self.mu.to_json(),
            "blocks": [
                {
                    "a": a,
                    "b": b,
                    "left_basis": basis_label(self.n, a),
                    "right_basis": basis_label(self.n, b),
                    "matrix": [[s.to_json() for s in row] for row in matrix],
                }
                for (a, b), matrix in sorted(self.blocks.items())
            ],
        }

    def pretty(self) -> str:
        lines = []
        for (a, b), matrix in sorted(self.blocks.items()):
            lines.append(
                f"bidegree ({a},{b})  rows {basis_label(self.n, a)}  cols {basis_label(self.n, b)}"
            )
            for row in matrix:
                lines.append("  [" + ", ".join(str(s) for s in row) + "]")
        return "\n".join(lines)


def _degree_inverse_gram(n: int, k: int) -> TasakiMatrix:
    return tasaki_matrix_oracle(n, k if k <= n else 2 * n - k)


def kinematic(n: int, m: Valuation) -> KinematicTensor:
    """The kinematic tensor of m: sum over degrees k of
    K_ij (m phi_i) x psi_j with phi the canonical basis, psi its Fourier
    transform and K the inverse pairing matrix of the degree."""
    if m.n != n:
        raise ValueError(f"ambient dimension mismatch: {m.n} vs {n}")
    acc: dict[tuple[int, int], list[list[Scalar]]] = {}
    for k in range(2 * n + 1):
        kmat = _degree_inverse_gram(n, k)
        basis = canonical_basis(n, k)
        b_deg = 2 * n - k
        for i, phi in enumerate(basis):
            prod = multiply(m, phi)
            if prod.is_zero:
                continue
            for a in prod.degrees():
                coords = tau_coords(prod, a)
                block = acc.setdefault(
                    (a, b_deg),
                    [[Scalar.zero()] * dim_val(n, b_deg) for _ in range(dim_val(n, a))],
                )
                for row, cval in enumerate(coords):
                    if cval.is_zero:
                        continue
                    for j in range(len(basis)):
                        kij = kmat[i, j]
                        if not kij.is_zero:
                            block[row][j] = block[row][j] + kij * cval
    blocks = {
        ab: tuple(tuple(row) for row in matrix)
        for ab, matrix in acc.items()
        if any(not s.is_zero for row in matrix for s in row)
    }
    return KinematicTensor(n=n, mu=m, blocks=blocks)


def _pi_tau_coeff(n: int, k: int, r: int, i: int) -> Fraction:
    """Coefficient of tau_{k,i} in the closed expansion of pi_{k,r}."""
    if i > r:
        return Fraction(0)
    return Fraction(
        (-1) ** (r + i)
        * double_factorial(2 * n - 4 * r + 1)
        * factorial(k - 2 * i)
        * double_factorial(2 * r - 2 * i - 1),
        factorial(2 * r - 2 * i) * double_factorial(2 * n - 2 * r - 2 * i + 1),
    )


def _principal_primitive_route(n: int) -> dict[tuple[int, int], tuple[tuple[Scalar, ...], ...]]:
    """k(chi) assembled from the primitive-basis formula, converted to the
    tau x F(tau) block convention."""
    blocks: dict[tuple[int, int], tuple[tuple[Scalar, ...], ...]] = {}
    for k in range(2 * n + 1):
        p = min(k // 2, (2 * n - k) // 2)
        dim_left = dim_val(n, k)
        matrix = [[Scalar.zero()] * dim_left for _ in range(dim_left)]
        low = min(k, 2 * n - k)  # tau degree used for the expansions
        for r in range(p + 1):
            c = (
                omega(k)
                * omega(2 * n - k)
                / Scalar.pi(n)
                * Fraction(
                    factorial(2 * n - 2 * r - k)
                    * factorial(n - r)
                    * double_factorial(2 * n - 2 * r + 1),
                    8**r
                    * factorial(k - 2 * r)
                    * factorial(2 * n - 4 * r)
                    * double_factorial(2 * n - 4 * r + 1)
                    * binomial(n, 2 * r),
                )
            )
            if k > n:
                # pi_{k,r} = (k-2r)!/(low-2r)! F(pi_{low,r}); same factor on
                # the Fourier side, squared in the block
                ratio = Fraction(factorial(k - 2 * r), factorial(low - 2 * r))
                c = c * (ratio * ratio)
            expansion = [_pi_tau_coeff(n, low, r, i) for i in range(dim_left)]
            for i, ci in enumerate(expansion):
                if not ci:
                    continue
                for j, cj in enumerate(expansion):
                    if cj:
                        matrix[i][j] = matrix[i][j] + c * (ci * cj)
        blocks[(k, 2 * n - k)] = tuple(tuple(row) for row in matrix)
    return blocks


def principal_kinematic(n: int, cross_check: bool = True) -> KinematicTensor:
    """The principal kinematic tensor k(chi).

    Assembled from the per-degree inverse pairing matrices; with
    cross_check (the default) the primitive-basis closed formula is also
    assembled and exact agreement of all blocks is enforced.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tensor = kinematic(n, chi(n))
    if cross_check:
        alt = _principal_primitive_route(n)
        if alt != tensor.blocks:
            raise AssertionError(
                f"principal kinematic routes disagree at n={n}"
            )  # pragma: no cover - guarded by the test suite
    return tensor


def additive_kinematic(n: int, m: Valuation) -> KinematicTensor:
    """The additive (Minkowski sum) kinematic tensor of m.

    Computed as Fourier of the intersection tensor of fourier(m): each
    block (a, b) moves to (2n-a, 2n-b) with the same matrix, because the
    Fourier transform maps the canonical degree-a basis to the canonical
    degree-(2n-a) basis element by element.
    """
    base = kinematic(n, fourier(m))
    blocks = {
        (2 * n - a, 2 * n - b): matrix for (a, b), matrix in base.blocks.items()
    }
    return KinematicTensor(n=n, mu=m, blocks=blocks, kind="additive")


def cpn_normalize(t: KinematicTensor) -> KinematicTensor:
    """Rescale to the probability normalisation of CP^n: every block is
    multiplied by n!/pi^n.  Refuses to apply twice."""
    if t.cpn_normalized:
        raise ValueError("tensor is already CP^n-normalized")
    factor = Scalar.of(factorial(t.n)) / Scalar.pi(t.n)
    blocks = {
        ab: tuple(tuple(s * factor for s in row) for row in matrix)
        for ab, matrix in t.blocks.items()
    }
    return replace(t, blocks=blocks, cpn_normalized=True)


def bezout_check(n: int, a: int, b: int) -> Scalar:
    """Contract the CP^n-normalised principal tensor against the Tasaki
    values of degree-1 algebraic subvarieties of complex dimensions a and
    b = n - a; the intersection count of such a pair is exactly 1.

    On a degree-1 variety V of complex dimension a, tau_{2a,q}(V) =
    C(a,q) pi^a/a!, and the Fourier-side values carry the complementary
    binomials.
    """
    if a < 1 or b < 1 or a + b != n:
        raise ValueError("bezout_check needs a, b >= 1 with a + b = n")
    tensor = cpn_normalize(principal_kinematic(n, cross_check=False))
    block = tensor.block(2 * a, 2 * b)

    def leg_values(deg: int, cdim_self: int, cdim_other: int) -> list[Scalar]:
        # basis tau[deg] if deg <= n (values C(cdim_self, i) pi^a/a!),
        # else F(tau[2n-deg]) (values C(cdim_other, i) pi^{cdim_self}/cdim_self!)
        top = cdim_self if 2 * cdim_self <= n else cdim_other
        scale = Scalar.of(Fraction(1, factorial(cdim_self)), cdim_self)
        return [scale * binomial(top, i) for i in range(dim_val(n, deg))]

    left = leg_values(2 * a, a, b)
    right = leg_values(2 * b, b, a)
    total = Scalar.zero()
    for i, lv in enumerate(left):
        for j, rv in enumerate(right):
            total = total + block[i][j] * lv * rv
    return total


def primitive_pairing_closed(n: int, k: int, r: int) -> Scalar:
    """Closed form of the pairing (pi_{k,r}, F(pi_{k,r})):

    8^r pi^n/(omega_k omega_{2n-k}) C(n,2r) (k-2r)!(2n-4r)!/((n-r)!(2n-2r-k)!)
    * (2n-4r+1)!!/(2n-2r+1)!!.
    """
    if not (0 <= 2 * r <= min(k, 2 * n - k)):
        raise ValueError(f"(k,r)=({k},{r}) out of range at n={n}")
    num = Fraction(
        8**r
        * binomial(n, 2 * r)
        * factorial(k - 2 * r)
        * factorial(2 * n - 4 * r)
        * double_factorial(2 * n - 4 * r + 1),
        factorial(n - r)
        * factorial(2 * n - 2 * r - k)
        * double_factorial(2 * n - 2 * r + 1),
    )
    return Scalar.pi(n) / (omega(k) * omega(2 * n - k)) * num
