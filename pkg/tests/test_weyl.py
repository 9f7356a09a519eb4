import itertools

import numpy as np
import pytest

from nonstab.weyl import (
    AlphabetGroup,
    WeylElement,
    compose,
    dense_matrix,
    enumerate_bounded,
    gamma,
    inverse,
    phase_value,
    prime_group,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

Z2 = prime_group(2)
Z3 = prime_group(3)


def test_group_basics():
    g = AlphabetGroup((2, 3))
    assert g.size == 6
    assert g.exponent == 6
    assert g.phase_denominator == 12
    assert g.word([3, 4]) == (1, 1)
    with pytest.raises(ValueError):
        AlphabetGroup((1,))


def test_bicharacter_z2():
    p = Z2.phase_denominator
    assert Z2.bicharacter_exponent((1,), (1,)) == p // 2
    assert phase_value(p // 2, p) == pytest.approx(-1)
    for b in ((0,), (1,)):
        assert Z2.bicharacter_exponent((0,), b) == 0


def test_bicharacter_product_group_matches_direct_complex():
    g = AlphabetGroup((2, 3))
    w2 = np.exp(2j * np.pi / 2)
    w3 = np.exp(2j * np.pi / 3)
    for a in g.letters():
        for b in g.letters():
            e = g.bicharacter_exponent(a, b)
            direct = w2 ** (a[0] * b[0]) * w3 ** (a[1] * b[1])
            assert phase_value(e, g.phase_denominator) == pytest.approx(direct)
    assert phase_value(
        g.bicharacter_exponent((1, 1), (1, 2)), g.phase_denominator
    ) == pytest.approx(w2 * w3**2)


def test_bicharacter_extends_multiplicatively_over_positions():
    a, b = (1, 0, 1), (1, 1, 1)
    total = Z2.bicharacter_exponent(a, b)
    parts = sum(Z2.bicharacter_exponent((a[i],), (b[i],)) for i in range(3))
    assert total == parts % Z2.phase_denominator


def test_compose_identity_law():
    g = WeylElement(Z2, 1, (1, 0), (0, 1))
    ident = WeylElement.identity(Z2, 2)
    assert compose(ident, g) == g
    assert compose(g, ident) == g


def test_compose_against_matrix_oracle_xz():
    # over Z_2 with n=1: U_1 = X, V_1 = Z
    xz = WeylElement(Z2, 0, (1,), (1,))
    x = WeylElement.shift(Z2, (1,))
    out = compose(xz, x)
    assert (out.a, out.b) == ((0,), (1,))
    assert out.phase_factor() == pytest.approx(-1)  # (XZ)X = -Z
    np.testing.assert_allclose(dense_matrix(out), (X @ Z) @ X, atol=1e-12)

    sq = compose(xz, xz)
    assert (sq.a, sq.b) == ((0,), (0,))
    assert sq.phase_factor() == pytest.approx(-1)  # (XZ)^2 = -I
    np.testing.assert_allclose(dense_matrix(sq), (X @ Z) @ (X @ Z), atol=1e-12)


def test_compose_inverse_gives_identity():
    rng = np.random.default_rng(3)
    for group, n in ((Z2, 3), (Z3, 2), (AlphabetGroup((2, 3)), 2)):
        width = n * group.k
        for _ in range(25):
            g = WeylElement(
                group,
                int(rng.integers(0, group.phase_denominator)),
                tuple(rng.integers(0, 5, size=width)),
                tuple(rng.integers(0, 5, size=width)),
            )
            assert compose(g, inverse(g)) == WeylElement.identity(group, n)
            assert compose(inverse(g), g) == WeylElement.identity(group, n)


def test_weight():
    assert WeylElement.identity(Z2, 3).weight() == 0
    g = WeylElement(Z2, 0, (1, 0, 1), (0, 0, 1))
    assert g.weight() == 2
    assert WeylElement(Z2, 3, (0, 0, 0), (0, 0, 0)).weight() == 0


def test_gamma_examples():
    x = WeylElement.shift(Z2, (1,))
    z = WeylElement.mult(Z2, (1,))
    assert gamma(x, x) == 0
    assert phase_value(gamma(x, z), Z2.phase_denominator) == pytest.approx(-1)
    # matrix oracle: X Z X^-1 Z^-1 = -I
    comm = X @ Z @ np.linalg.inv(X) @ np.linalg.inv(Z)
    np.testing.assert_allclose(comm, -np.eye(2), atol=1e-12)


def test_gamma_matches_matrix_commutator():
    rng = np.random.default_rng(11)
    for group, n in ((Z2, 2), (Z3, 1)):
        for _ in range(20):
            g = WeylElement(group, 0, tuple(rng.integers(0, group.size, n)), tuple(rng.integers(0, group.size, n)))
            h = WeylElement(group, 0, tuple(rng.integers(0, group.size, n)), tuple(rng.integers(0, group.size, n)))
            mg, mh = dense_matrix(g), dense_matrix(h)
            comm = mg @ mh @ np.linalg.inv(mg) @ np.linalg.inv(mh)
            expected = phase_value(gamma(g, h), group.phase_denominator) * np.eye(len(mg))
            np.testing.assert_allclose(comm, expected, atol=1e-10)


def test_gamma_bimultiplicative_and_conjugate_symmetric():
    rng = np.random.default_rng(5)
    p = Z3.phase_denominator
    for _ in range(50):
        els = [
            WeylElement(Z3, int(rng.integers(0, p)), tuple(rng.integers(0, 3, 3)), tuple(rng.integers(0, 3, 3)))
            for _ in range(3)
        ]
        g1, g2, h = els
        assert gamma(compose(g1, g2), h) == (gamma(g1, h) + gamma(g2, h)) % p
        assert gamma(h, compose(g1, g2)) == (gamma(h, g1) + gamma(h, g2)) % p
        assert gamma(g1, h) == (-gamma(h, g1)) % p


def test_dense_matrix_basics():
    ident = WeylElement.identity(Z2, 1)
    np.testing.assert_allclose(dense_matrix(ident), np.eye(2), atol=1e-12)
    u1 = WeylElement.shift(Z2, (1,))
    np.testing.assert_allclose(dense_matrix(u1), X, atol=1e-12)
    with pytest.raises(ValueError):
        dense_matrix(WeylElement.identity(Z2, 13))


def test_dense_matrix_unitary_and_trace():
    # Tr U_a V_b = 0 unless (a, b) = (0, 0), where it equals #A^n
    for a in itertools.product(range(2), repeat=2):
        for b in itertools.product(range(2), repeat=2):
            g = WeylElement(Z2, 0, a, b)
            m = dense_matrix(g)
            np.testing.assert_allclose(m @ m.conj().T, np.eye(4), atol=1e-12)
            tr = np.trace(m)
            if any(a) or any(b):
                assert abs(tr) < 1e-12
            else:
                assert tr == pytest.approx(4)


def test_dense_matrix_homomorphism_exhaustive_z2():
    for n in (1, 2, 3):
        words = list(itertools.product(range(2), repeat=n))
        els = [WeylElement(Z2, 0, a, b) for a in words for b in words]
        mats = [dense_matrix(e) for e in els]
        for g, mg in zip(els, mats):
            for h, mh in zip(els, mats):
                np.testing.assert_allclose(
                    dense_matrix(compose(g, h)), mg @ mh, atol=1e-10
                )


def test_dense_matrix_homomorphism_random_z3():
    rng = np.random.default_rng(17)
    for _ in range(30):
        g = WeylElement(Z3, int(rng.integers(0, 6)), tuple(rng.integers(0, 3, 2)), tuple(rng.integers(0, 3, 2)))
        h = WeylElement(Z3, int(rng.integers(0, 6)), tuple(rng.integers(0, 3, 2)), tuple(rng.integers(0, 3, 2)))
        np.testing.assert_allclose(
            dense_matrix(compose(g, h)), dense_matrix(g) @ dense_matrix(h), atol=1e-10
        )


def test_weyl_commutation_relation():
    # <a,b> U_a V_b = V_b U_a
    rng = np.random.default_rng(23)
    for group, n in ((Z2, 3), (Z3, 2)):
        for _ in range(20):
            a = tuple(rng.integers(0, group.size, n))
            b = tuple(rng.integers(0, group.size, n))
            ua = WeylElement.shift(group, a)
            vb = WeylElement.mult(group, b)
            lhs = compose(vb, ua)
            rhs = compose(ua, vb)
            assert lhs.a == rhs.a and lhs.b == rhs.b
            assert lhs.phase == (rhs.phase + group.bicharacter_exponent(a, b)) % group.phase_denominator


def test_orthogonality_of_distinct_elements():
    # Tr(dense(g)^dagger dense(h)) = 0 for g != h modulo phase
    words = list(itertools.product(range(2), repeat=2))
    for (a1, b1), (a2, b2) in itertools.combinations(
        [(a, b) for a in words for b in words], 2
    ):
        g = WeylElement(Z2, 0, a1, b1)
        h = WeylElement(Z2, 0, a2, b2)
        assert abs(np.trace(dense_matrix(g).conj().T @ dense_matrix(h))) < 1e-12


def test_enumerate_bounded_counts():
    assert len(list(enumerate_bounded(Z2, 5, 1))) == 15
    assert list(enumerate_bounded(Z2, 4, 0)) == []
    pairs = list(enumerate_bounded(Z2, 15, 2))
    assert len(pairs) == 990


def test_enumerate_bounded_order_and_uniqueness():
    pairs = list(enumerate_bounded(Z3, 3, 2))
    assert len(pairs) == len(set(pairs))
    weights = [Z3.weight(a, b) for a, b in pairs]
    assert weights == sorted(weights)
    assert pairs == list(enumerate_bounded(Z3, 3, 2))
    with pytest.raises(ValueError):
        list(enumerate_bounded(Z2, 40, 12, cap=1000))
