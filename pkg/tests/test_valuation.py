"""The valuation algebra: bases, quotient map, product, involutions, Klain."""

import random
from fractions import Fraction

import pytest

from uval.poly import GradedPoly, change_vars, f_closed
from uval.scalar import Scalar, binomial, factorial, omega
from uval.valuation import (
    Valuation,
    chi,
    dim_val,
    fourier,
    from_monomial,
    iota,
    klain,
    mu,
    multiply,
    q_range,
    tau,
    tau_coords,
    to_monomial,
    vol,
)


def _rand_valuation(rng, n, max_terms=4):
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, 2 * n)
        q = rng.choice(list(q_range(n, k)))
        coeffs[(k, q)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Valuation(n, coeffs)


# ----------------------------------------------------------------------
# constructors

def test_mu_unit_and_volume():
    assert mu(2, 0, 0) == chi(2)
    assert mu(2, 4, 2) == vol(2)


def test_mu_rejects_out_of_range():
    with pytest.raises(ValueError):
        mu(1, 2, 0)  # q >= k - n = 1 required at n = 1
    with pytest.raises(ValueError):
        mu(2, 3, 2)  # q <= floor(k/2)
    with pytest.raises(ValueError):
        mu(2, 5, 2)  # k <= 2n


def test_tau_examples():
    assert tau(2, 2, 0) == mu(2, 2, 0) + mu(2, 2, 1)
    assert tau(1, 2, 0) == mu(1, 2, 1)  # truncation at n = 1
    assert tau(2, 4, 1) == mu(2, 4, 2) * 2  # only i = 2 survives, C(2,1) = 2


def test_dim_val():
    assert dim_val(2, 2) == 2
    assert dim_val(4, 0) == 1
    assert dim_val(3, 3) == 2


# ----------------------------------------------------------------------
# quotient map and canonical representative

def test_from_monomial_t():
    expected = tau(3, 1, 0) * (Scalar.of(2) / Scalar.pi(1))
    assert from_monomial(3, GradedPoly.t()) == expected


def test_from_monomial_u():
    for n in (1, 2, 4):
        assert from_monomial(n, GradedPoly.u()) == mu(n, 2, 1) * (
            Scalar.of(2) / Scalar.pi(1)
        )


def test_from_monomial_kills_f2_at_n1():
    assert from_monomial(1, f_closed(2)).is_zero


def test_to_monomial_examples():
    assert to_monomial(mu(2, 2, 1)) == GradedPoly.monomial(0, 1, Scalar.of(Fraction(1, 2), 1))
    assert to_monomial(mu(2, 1, 0)) == GradedPoly.monomial(1, 0, Scalar.of(Fraction(1, 2), 1))
    # mu_{2,0} = pi t^2 - 2 pi s in the (s, t) chart
    st = change_vars(to_monomial(mu(3, 2, 0)), "st")
    assert st == GradedPoly(
        {(2, 0): Scalar.pi(1), (0, 1): Scalar.of(-2, 1)}, "st"
    )


def test_monomial_roundtrip_random():
    rng = random.Random(4)
    for n in range(1, 7):
        for _ in range(15):
            v = _rand_valuation(rng, n)
            assert from_monomial(n, to_monomial(v)) == v


def test_ideal_vanishes():
    for n in range(1, 7):
        for shift in (1, 2):
            f = f_closed(n + shift)
            bound = 2 * n - (n + shift)
            for a in range(bound + 1):
                for b in range((bound - a) // 2 + 1):
                    assert from_monomial(n, GradedPoly.monomial(a, b) * f).is_zero, (
                        n,
                        shift,
                        a,
                        b,
                    )


# ----------------------------------------------------------------------
# product

def test_product_unit():
    rng = random.Random(5)
    for n in (1, 3):
        v = _rand_valuation(rng, n)
        assert multiply(chi(n), v) == v


def test_product_tau1_squared():
    for n in (1, 2, 3, 4):
        assert multiply(tau(n, 1, 0), tau(n, 1, 0)) == tau(n, 2, 0) * Scalar.of(
            Fraction(1, 2), 1
        )


def test_product_tau20_squared_at_n2():
    assert multiply(tau(2, 2, 0), tau(2, 2, 0)) == mu(2, 4, 2) * 3


def test_product_commutative_associative():
    rng = random.Random(6)
    for n in range(1, 5):
        for _ in range(5):
            a, b, c = (_rand_valuation(rng, n, 2) for _ in range(3))
            assert multiply(a, b) == multiply(b, a)
            assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_product_dimension_mismatch():
    with pytest.raises(ValueError):
        multiply(chi(2), chi(3))


def test_tasaki_product_formula():
    for n in range(1, 6):
        for k in range(0, 2 * n + 1):
            for l in range(0, 2 * n + 1 - k):
                for p in range(k // 2 + 1):
                    for q in range(l // 2 + 1):
                        coeff = (
                            omega(k + l)
                            / (omega(k) * omega(l))
                            * Fraction(
                                binomial(k + l - 2 * p - 2 * q, k - 2 * p)
                                * binomial(2 * p + 2 * q, 2 * p)
                            )
                        )
                        assert multiply(tau(n, k, p), tau(n, l, q)) == tau(
                            n, k + l, p + q
                        ) * coeff, (n, k, l, p, q)


def test_anisotropic_ideal():
    rng = random.Random(7)
    for n in range(1, 6):
        u_val = from_monomial(n, GradedPoly.u())
        for _ in range(10):
            v = _rand_valuation(rng, n)
            prod = multiply(u_val, v)
            for k in range(0, n + 1):
                assert prod.coefficient(k, 0).is_zero


def test_kazarnovskii_normalization():
    n = 10
    for k in range(1, 11):
        pref = Scalar.of(
            Fraction((-1) ** (k + 1) * 2**k, 2 * factorial(k - 1)), k
        ) / omega(k)
        assert to_monomial(mu(n, k, 0)) == f_closed(k) * pref, k


def test_multiplication_by_u_exact():
    # exact equality, which subsumes the congruence modulo higher mu terms
    for n in range(1, 6):
        u_val = from_monomial(n, GradedPoly.u())
        for k in range(0, 2 * n - 1):
            for p in q_range(n, k):
                lhs = multiply(u_val, mu(n, k, p))
                pref = Scalar.of(Fraction(4 * (p + 1), k + 2), -1)
                rhs = Valuation.zero(n)
                if p + 1 in q_range(n, k + 2):
                    rhs = rhs + mu(n, k + 2, p + 1) * (2 * p + 1)
                if p + 2 in q_range(n, k + 2):
                    rhs = rhs - mu(n, k + 2, p + 2) * (2 * (p + 2))
                assert lhs == rhs * pref, (n, k, p)
                # the congruence statement itself: no mu_{k+2,i}, i > p+2
                for i in q_range(n, k + 2):
                    if i > p + 2:
                        assert lhs.coefficient(k + 2, i).is_zero


# ----------------------------------------------------------------------
# involutions

def test_fourier_examples():
    assert fourier(mu(2, 0, 0)) == mu(2, 4, 2)
    assert fourier(mu(2, 2, 1)) == mu(2, 2, 1)
    rng = random.Random(8)
    for n in range(1, 6):
        v = _rand_valuation(rng, n)
        assert fourier(fourier(v)) == v


def test_iota_examples():
    assert iota(tau(2, 2, 0)) == tau(2, 2, 1)
    for n in range(1, 5):
        assert iota(vol(n)) == vol(n)
        assert iota(mu(n, 2 * n, n) * Scalar.pi(3)) == mu(n, 2 * n, n) * Scalar.pi(3)
    for n in (4, 5):
        f4_img = from_monomial(n, f_closed(4))
        assert iota(f4_img) == f4_img


def test_iota_rejects_odd_degree():
    with pytest.raises(ValueError):
        iota(mu(2, 1, 0))


def test_iota_commutes_with_fourier():
    rng = random.Random(9)
    for n in range(1, 6):
        for _ in range(6):
            v = _rand_valuation(rng, n)
            even = sum(
                (v.component(k) for k in v.degrees() if k % 2 == 0), Valuation.zero(n)
            )
            assert iota(fourier(even)) == fourier(iota(even))


def test_fourier_is_restriction_on_tasaki():
    # F(tau_{2(n-p),i}) in tau_{2p,.} coordinates carries C(n-2p, i-j)
    for n in range(1, 6):
        for p in range(0, n // 2 + 1):
            m = n - p
            for i in range(m + 1):
                coords = tau_coords(fourier(tau(n, 2 * m, i)), 2 * p)
                for j, c in enumerate(coords):
                    want = binomial(m - p, i - j) if 0 <= i - j <= m - p else 0
                    assert c == Scalar.of(want), (n, p, i, j)


# ----------------------------------------------------------------------
# Klain functions

def test_klain_delta_relation():
    kp = klain(mu(2, 2, 1), 2)
    assert list(kp.sigma_coeffs) == [Scalar.zero(), Scalar.one()]


def test_klain_tau_is_sigma_basis():
    for n in range(1, 5):
        for k in range(0, n + 1):
            for q in range(0, k // 2 + 1):
                kp = klain(tau(n, k, q), k)
                expected = [
                    Scalar.one() if j == q else Scalar.zero()
                    for j in range(k // 2 + 1)
                ]
                assert list(kp.sigma_coeffs) == expected


def test_klain_mu41():
    kp = klain(mu(4, 4, 1), 4)
    assert list(kp.sigma_coeffs) == [Scalar.zero(), Scalar.one(), Scalar.of(-2)]


def test_klain_rejects_high_degree():
    with pytest.raises(ValueError, match="fourier"):
        klain(mu(2, 3, 1), 3)


# ----------------------------------------------------------------------
# serialization

def test_json_roundtrip():
    rng = random.Random(10)
    for n in (1, 2, 4):
        v = _rand_valuation(rng, n)
        data = v.to_json()
        assert set(data) == {"n", "components"}
        assert Valuation.from_json(data) == v


def test_str_rendering():
    assert str(mu(2, 2, 0) + mu(2, 2, 1)) == "mu[2,0] + mu[2,1]"
    assert str(mu(2, 2, 0) - mu(2, 2, 1)) == "mu[2,0] - mu[2,1]"
    assert str(Valuation.zero(2)) == "0"
