"""Pairings, Tasaki matrices and kinematic tensors."""

from fractions import Fraction

import pytest

from uval.kinematic import (
    additive_kinematic,
    basis_label,
    bezout_check,
    cpn_normalize,
    kinematic,
    pairing_fourier,
    pairing_pd,
    primitive_pairing_closed,
    principal_kinematic,
    tasaki_matrix_closed,
    tasaki_matrix_oracle,
)
from uval.scalar import Scalar
from uval.sl2 import primitive_general
from uval.valuation import chi, fourier, mu, tau, vol


def test_pairing_pd_examples():
    assert pairing_pd(chi(2), vol(2)) == Scalar.one()
    # the degree-1 generator t at n = 1: (t, t) = 2/pi
    t_val = tau(1, 1, 0) * (Scalar.of(2) / Scalar.pi(1))
    assert pairing_pd(t_val, t_val) == Scalar.of(2) / Scalar.pi(1)
    assert pairing_pd(tau(2, 2, 0), tau(2, 2, 0)) == Scalar.of(3)


def test_pairing_fourier_symmetric():
    assert pairing_fourier(chi(2), chi(2)) == Scalar.one()
    assert pairing_fourier(vol(2), vol(2)) == Scalar.one()
    assert pairing_fourier(chi(2), vol(2)).is_zero
    assert pairing_fourier(tau(2, 2, 0), tau(2, 2, 0)) == Scalar.of(3)
    for a in (mu(3, 2, 0), tau(3, 4, 1)):
        for b in (mu(3, 4, 1), tau(3, 2, 1)):
            assert pairing_fourier(a, b) == pairing_fourier(b, a)


def test_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        pairing_pd(chi(2), chi(3))


# ----------------------------------------------------------------------
# Tasaki matrices

def test_gram_matrix_n2_k2():
    taus = [tau(2, 2, i) for i in range(2)]
    gram = [[pairing_pd(a, fourier(b)) for b in taus] for a in taus]
    assert gram == [[Scalar.of(3), Scalar.one()], [Scalar.one(), Scalar.of(3)]]


def test_oracle_examples():
    t = tasaki_matrix_oracle(2, 2)
    pref = Scalar.of(Fraction(1, 8))
    grid = [[3, -1], [-1, 3]]
    for i in range(2):
        for j in range(2):
            assert t[i, j] == pref * grid[i][j]
    assert tasaki_matrix_oracle(1, 0).entries == ((Scalar.one(),),)


def test_closed_printed_n2():
    for n in range(2, 9):
        t = tasaki_matrix_closed(n, 2)
        pref = Scalar.of(Fraction(1, 4 * n * (n - 1)))
        grid = [[2 * n - 1, -1], [-1, 2 * n - 1]]
        for i in range(2):
            for j in range(2):
                assert t[i, j] == pref * grid[i][j], (n, i, j)


def test_closed_printed_n3():
    t = tasaki_matrix_closed(3, 3)
    pref = Scalar.of(Fraction(2, 9), -1)
    assert t[0, 0] == pref * 3
    assert t[0, 1] == pref * (-1)
    assert t[1, 1] == pref * Fraction(5, 3)


def test_closed_printed_n4():
    t = tasaki_matrix_closed(4, 4)
    pref = Scalar.of(Fraction(1, 384))
    grid = [[45, -15, 9], [-15, 19, -15], [9, -15, 45]]
    for i in range(3):
        for j in range(3):
            assert t[i, j] == pref * grid[i][j]


def test_routes_agree():
    for n in range(1, 7):
        for k in range(0, n + 1):
            assert tasaki_matrix_closed(n, k).entries == tasaki_matrix_oracle(n, k).entries, (n, k)


def test_symmetry_palindrome_and_pi_powers():
    for n in range(1, 9):
        for k in range(0, n + 1):
            t = tasaki_matrix_closed(n, k)
            p = t.size - 1
            for i in range(p + 1):
                for j in range(p + 1):
                    assert t[i, j] == t[j, i]
                    if k % 2 == 0:
                        assert t[i, j] == t[k // 2 - i, k // 2 - j]
            want = 0 if k % 2 == 0 else -1
            for row in t.entries:
                for s in row:
                    assert s.is_zero or s.monomial()[0] == want


def test_positive_definite_minors():
    for n in range(1, 7):
        for k in range(0, n + 1):
            for minor in tasaki_matrix_closed(n, k).leading_minor_dets():
                assert minor.sign() > 0, (n, k)


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        tasaki_matrix_closed(2, 3)
    with pytest.raises(ValueError):
        tasaki_matrix_oracle(2, 3)


def test_pretty():
    assert tasaki_matrix_closed(2, 2).pretty() == "1/8 * [[3,-1],[-1,3]]"


# ----------------------------------------------------------------------
# kinematic tensors

def test_principal_n1_classical():
    pk = principal_kinematic(1)
    assert pk.block(0, 2) == ((Scalar.one(),),)
    assert pk.block(2, 0) == ((Scalar.one(),),)
    assert pk.block(1, 1) == ((Scalar.of(2) / Scalar.pi(1),),)
    assert pk.bidegrees() == [(0, 2), (1, 1), (2, 0)]


def test_principal_routes_cross_checked():
    # cross_check=True raises if the primitive-basis assembly disagrees
    for n in range(1, 5):
        pk = principal_kinematic(n, cross_check=True)
        assert pk.block(0, 2 * n) == ((Scalar.one(),),)
        mid = pk.block(n, n)
        want = tasaki_matrix_oracle(n, n)
        assert mid == want.entries


def test_kinematic_of_chi_is_principal():
    assert kinematic(2, chi(2)).blocks == principal_kinematic(2).blocks


def test_kinematic_of_volume():
    kv = kinematic(2, vol(2))
    assert set(kv.blocks) == {(4, 4)}
    assert kv.block(4, 4) == ((Scalar.one(),),)


def test_worked_length_block():
    kt = kinematic(4, tau(4, 1, 0))
    raw = kt.block(4, 5)
    expected = [[Fraction(1, 4), Fraction(-1, 20)], [Fraction(-1, 40), Fraction(7, 120)], [0, 0]]
    for i in range(3):
        for j in range(2):
            assert raw[i][j] == Scalar.of(expected[i][j])
    normalized = cpn_normalize(kt).block(4, 5)
    grid = [[30, -6], [-3, 7], [0, 0]]
    for i in range(3):
        for j in range(2):
            assert normalized[i][j] == Scalar.of(Fraction(grid[i][j], 5), -4)


def test_additive_minkowski_block():
    ak = additive_kinematic(4, tau(4, 7, 0))
    grid = [[30, -6], [-3, 7], [0, 0]]
    block34 = ak.block(3, 4)
    for i in range(2):
        for j in range(3):
            assert block34[i][j] == Scalar.of(Fraction(grid[j][i], 120))
    assert ak.kind == "additive"


def test_additive_of_volume_mirrors_principal():
    n = 2
    ak = additive_kinematic(n, vol(n))
    pk = principal_kinematic(n)
    for (a, b), matrix in pk.blocks.items():
        assert ak.block(2 * n - a, 2 * n - b) == matrix


def test_additive_leg_swap_symmetry():
    ak = additive_kinematic(3, vol(3))
    for (a, b), matrix in ak.blocks.items():
        mirror = ak.block(b, a)
        for i, row in enumerate(matrix):
            for j, s in enumerate(row):
                assert mirror[j][i] == s


def test_cpn_normalize():
    pk = principal_kinematic(1)
    normalized = cpn_normalize(pk)
    assert normalized.block(0, 2) == ((Scalar.one() / Scalar.pi(1),),)
    assert normalized.cpn_normalized
    with pytest.raises(ValueError):
        cpn_normalize(normalized)


def test_basis_labels():
    assert basis_label(4, 3) == "tau[3]"
    assert basis_label(4, 4) == "tau[4]"
    assert basis_label(4, 5) == "F(tau[3])"


def test_tensor_json_schema():
    data = kinematic(2, chi(2)).to_json()
    assert data["n"] == 2
    assert {"a", "b", "left_basis", "right_basis", "matrix"} <= set(data["blocks"][0])


# ----------------------------------------------------------------------
# Bezout and primitive pairings

def test_bezout():
    for n, a, b in [(2, 1, 1), (3, 1, 2), (4, 1, 3), (4, 2, 2)]:
        assert bezout_check(n, a, b) == Scalar.one(), (n, a, b)
    with pytest.raises(ValueError):
        bezout_check(3, 2, 2)


def test_primitive_pairing_closed_chi():
    # (chi, F chi) = (chi, vol) = 1, so the closed form collapses to 1
    for n in range(1, 6):
        assert primitive_pairing_closed(n, 0, 0) == Scalar.one()


def test_primitive_pairing_closed_n2():
    p21 = primitive_general(2, 2, 1)
    assert primitive_pairing_closed(2, 2, 1) == pairing_pd(p21, fourier(p21))
    p20 = primitive_general(2, 2, 0)
    assert primitive_pairing_closed(2, 2, 0) == pairing_pd(p20, fourier(p20))


def test_primitive_pairing_closed_all_small():
    for n in range(1, 6):
        for k in range(0, 2 * n + 1):
            for r in range(0, min(k, 2 * n - k) // 2 + 1):
                pk = primitive_general(n, k, r)
                assert primitive_pairing_closed(n, k, r) == pairing_pd(pk, fourier(pk)), (n, k, r)


def test_primitive_pairing_positive():
    # positivity of the pkf coefficients: each pairing is a positive scalar
    for n in range(1, 6):
        for r in range(0, n // 2 + 1):
            assert primitive_pairing_closed(n, 2 * r, r).sign() > 0
