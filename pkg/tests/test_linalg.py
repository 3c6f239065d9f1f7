import numpy as np
import pytest

from stcodes.linalg import (
    RankDeficiencyError,
    det,
    frob_inner,
    qr_decompose,
    realify,
)
from stcodes.codebook import alamouti

from conftest import random_channel


def test_realify_one_by_one():
    assert np.allclose(realify(np.array([[1 + 2j]])), [1.0, 2.0])


def test_realify_zero_matrix():
    assert np.array_equal(realify(np.zeros((2, 2), dtype=complex)), np.zeros(8))


def test_realify_row_major_order():
    x = np.array([[1 + 2j, 3 + 4j], [5 + 6j, 7 + 8j]])
    assert np.allclose(realify(x), [1, 2, 3, 4, 5, 6, 7, 8])


def test_realify_channel_times_identity_block(rng):
    # H (1x2) against the first Alamouti basis matrix: the effective
    # column is just the interleaved channel coefficients.
    h = random_channel(rng, 1, 2)
    b1 = alamouti().basis[0]
    expected = [h[0, 0].real, h[0, 0].imag, h[0, 1].real, h[0, 1].imag]
    assert np.allclose(realify(h @ b1), expected)


def test_realify_linear(rng):
    x = random_channel(rng, 3, 3)
    y = random_channel(rng, 3, 3)
    assert np.allclose(realify(2.5 * x - 0.5 * y), 2.5 * realify(x) - 0.5 * realify(y))


def test_frob_inner_is_squared_norm(rng):
    a = random_channel(rng, 4, 4)
    assert frob_inner(a, a) == pytest.approx(np.linalg.norm(a) ** 2, rel=1e-12)


def test_frob_inner_alamouti_basis_orthogonal():
    basis = alamouti().basis
    for i in range(4):
        for j in range(4):
            value = frob_inner(basis[i], basis[j])
            assert value == pytest.approx(2.0 if i == j else 0.0, abs=1e-12)


def test_frob_inner_channel_invariant_pair(rng):
    # The Alamouti pair (B1, B3) stays orthogonal under every 1x2 channel.
    basis = alamouti().basis
    for _ in range(100):
        h = random_channel(rng, 1, 2)
        assert frob_inner(h @ basis[0], h @ basis[2]) == pytest.approx(0.0, abs=1e-12)


def test_frob_inner_shape_mismatch():
    with pytest.raises(ValueError):
        frob_inner(np.eye(2), np.eye(3))


def test_frob_inner_matches_realified_dot(rng):
    for _ in range(1000):
        a = random_channel(rng, 2, 3)
        b = random_channel(rng, 2, 3)
        direct = frob_inner(a, b)
        via_real = float(np.dot(realify(a), realify(b)))
        assert direct == pytest.approx(via_real, rel=1e-12, abs=1e-12)


def test_isometry(rng):
    for _ in range(200):
        x = random_channel(rng, 3, 4)
        assert np.linalg.norm(x) == pytest.approx(
            np.linalg.norm(realify(x)), rel=1e-12
        )


def test_qr_identity():
    q, r = qr_decompose(np.eye(5))
    assert np.allclose(q, np.eye(5))
    assert np.allclose(r, np.eye(5))


def test_qr_orthogonal_columns_give_scaled_identity(rng):
    # Orthogonal columns of equal norm c leave nothing above the diagonal.
    c = 3.0
    q_rand, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    b = c * q_rand
    _, r = qr_decompose(b)
    assert np.allclose(r, c * np.eye(6), atol=1e-10)


def test_qr_reconstruction(rng):
    b = rng.standard_normal((16, 16))
    q, r = qr_decompose(b)
    assert np.max(np.abs(b - q @ r)) < 1e-10
    assert np.allclose(q.T @ q, np.eye(16), atol=1e-12)
    assert np.all(np.diag(r) > 0)
    # strict upper triangularity
    assert np.allclose(np.tril(r, -1), 0.0, atol=1e-12)


def test_qr_det_equals_diagonal_product(rng):
    for _ in range(20):
        b = rng.standard_normal((8, 8))
        _, r = qr_decompose(b)
        assert abs(np.linalg.det(b)) == pytest.approx(
            float(np.prod(np.diag(r))), rel=1e-9
        )


def test_qr_rank_deficiency_raises(rng):
    b = rng.standard_normal((6, 4))
    b[:, 3] = b[:, 0] + b[:, 1]
    with pytest.raises(RankDeficiencyError):
        qr_decompose(b)


def test_det_identity_and_zero():
    assert det(np.eye(4)) == pytest.approx(1.0)
    assert det(np.zeros((3, 3))) == pytest.approx(0.0)


def test_det_alamouti_codeword(rng):
    # det [[x1, -x2*], [x2, x1*]] = |x1|^2 + |x2|^2 (2x2 expansion).
    for _ in range(20):
        x1 = complex(rng.standard_normal(), rng.standard_normal())
        x2 = complex(rng.standard_normal(), rng.standard_normal())
        word = np.array([[x1, -x2.conjugate()], [x2, x1.conjugate()]])
        assert det(word) == pytest.approx(abs(x1) ** 2 + abs(x2) ** 2, rel=1e-12)


def test_det_requires_square():
    with pytest.raises(ValueError):
        det(np.ones((2, 3)))
