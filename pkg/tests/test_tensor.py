import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qgent.errors import ShapeError, SizeLimitError
from qgent.tensor import SIGMA_X, dagger, format_matrix, is_unitary, kron, kron_all

MY = np.array([[0, 1j], [-1j, 0]])


def kron_loop(a, b):
    """Index-loop Kronecker product, independent of numpy.kron."""
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    out = [[0j] * (ca * cb) for _ in range(ra * rb)]
    for ia in range(ra):
        for ja in range(ca):
            for ib in range(rb):
                for jb in range(cb):
                    out[ia * rb + ib][ja * cb + jb] = a[ia][ja] * b[ib][jb]
    return np.array(out)


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma_x_identity_permutation():
    expected = np.zeros((4, 4))
    for i, j in [(0, 2), (1, 3), (2, 0), (3, 1)]:
        expected[i, j] = 1
    assert np.array_equal(kron(SIGMA_X, np.eye(2)), expected)


def test_kron_minus_sigma_y_squared():
    expected = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    assert np.array_equal(kron_loop(MY.tolist(), MY.tolist()), expected)
    assert np.array_equal(kron(MY, MY), expected)


def test_kron_rectangular_matches_loop(rng):
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 1)) + 1j * rng.normal(size=(3, 1))
    res = kron(a, b)
    assert res.shape == (6, 3)
    np.testing.assert_allclose(res, kron_loop(a.tolist(), b.tolist()), rtol=1e-15, atol=1e-15)


def test_kron_size_limit():
    with pytest.raises(SizeLimitError):
        kron(np.eye(64), np.eye(128))
    with pytest.raises(SizeLimitError):
        kron(np.eye(4), np.eye(4), max_dim=8)


def test_rejects_nonfinite():
    with pytest.raises(ShapeError):
        kron([[np.nan]], [[1]])


def test_dagger_examples():
    assert np.array_equal(dagger(np.eye(2)), np.eye(2))
    assert np.array_equal(dagger(MY), MY)
    assert np.array_equal(dagger([[1, 2 + 1j], [0, 1]]), np.array([[1, 0], [2 - 1j, 1]]))


def test_is_unitary_examples():
    assert is_unitary(np.eye(8), 1e-12)
    assert is_unitary(np.diag([1, 1, 1, -1]), 1e-12)
    assert not is_unitary(np.diag([1, 0.5]), 1e-12)
    with pytest.raises(ShapeError):
        is_unitary(np.ones((2, 3)))


def test_format_matrix():
    text = format_matrix([[1, 1j], [-0.5, 0]])
    assert text.splitlines() == ["1+0i\t0+1i", "-0.5+0i\t0+0i"]


# Gaussian-integer entries keep every product exact, so equality is bitwise.
gaussian_int = st.builds(complex, st.integers(-9, 9), st.integers(-9, 9))
small = arrays(np.complex128, st.tuples(st.integers(1, 3), st.integers(1, 3)), elements=gaussian_int)


@settings(max_examples=50, deadline=None)
@given(small, small, small)
def test_kron_associative(a, b, c):
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


@settings(max_examples=50, deadline=None)
@given(small, small)
def test_dagger_distributes_over_kron(a, b):
    assert np.array_equal(dagger(kron(a, b)), kron(dagger(a), dagger(b)))
    assert np.array_equal(dagger(dagger(a)), a)


def _random_unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_kron_of_unitaries_is_unitary(rng):
    for _ in range(20):
        a = _random_unitary(rng, 2)
        b = _random_unitary(rng, 4)
        assert is_unitary(kron_all([a, b, a]), 1e-12)
