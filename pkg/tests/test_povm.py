import numpy as np
import pytest

from qgent.errors import DomainError, IncompleteSpecError, UnsupportedDimensionError
from qgent.povm import (
    PhaseSpec,
    QubitSetting,
    delta,
    delta_tilde,
    povm_probability,
    povm_resolution_check,
    qubit_op,
    tensor_operator,
)
from qgent.state import conjugate_state, inner, random_state
from qgent.tensor import SIGMA_X, SIGMA_Y, is_unitary, kron_all

HALF, PI, ID = QubitSetting.HALF_PI, QubitSetting.PI, QubitSetting.IDENTITY


def test_delta_examples():
    np.testing.assert_allclose(delta(PhaseSpec.qubit(np.pi / 2)), [[1, 1j], [-1j, 1]], atol=1e-15)
    np.testing.assert_array_equal(delta(PhaseSpec.qubit(0.0)), np.ones((2, 2)))
    np.testing.assert_array_equal(delta(PhaseSpec.uniform(3, 0.0)), np.ones((3, 3)))


def test_delta_general_layout():
    spec = PhaseSpec(3, {(1, 2): 0.3, (1, 3): -1.1, (2, 3): 2.0})
    d = delta(spec)
    assert d[0, 2] == np.exp(-1.1j) and d[2, 0] == np.exp(1.1j)
    assert d[1, 2] == np.exp(2.0j)
    assert np.array_equal(d, d.conj().T)


def test_delta_missing_phase():
    with pytest.raises(IncompleteSpecError):
        delta(PhaseSpec(3, {(1, 2): 0.0, (1, 3): 0.0}))


def test_phase_spec_validation():
    with pytest.raises(DomainError):
        PhaseSpec(1, {})
    with pytest.raises(DomainError):
        PhaseSpec(2, {(2, 1): 0.0})
    with pytest.raises(DomainError):
        PhaseSpec(2, {(1, 2): float("nan")})


def test_delta_tilde_examples():
    np.testing.assert_allclose(delta_tilde(PhaseSpec.qubit(np.pi / 2)), -SIGMA_Y, atol=1e-15)
    np.testing.assert_allclose(delta_tilde(PhaseSpec.qubit(np.pi)), -SIGMA_X, atol=1e-15)
    np.testing.assert_array_equal(delta_tilde(PhaseSpec.qubit(0.0)), SIGMA_X)


def test_delta_properties(rng):
    for phi in rng.uniform(-10, 10, size=50):
        spec = PhaseSpec.qubit(phi)
        d = delta(spec)
        assert np.array_equal(d, d.conj().T)
        np.testing.assert_allclose(np.linalg.eigvalsh(d), [0, 2], atol=1e-12)
        assert np.array_equal(delta_tilde(spec), d - np.eye(2))
    spec = PhaseSpec(4, {p: phi for p, phi in zip(PhaseSpec.uniform(4, 0).pairs(), rng.uniform(0, 6, 6))})
    assert np.array_equal(delta_tilde(spec), delta(spec) - np.eye(4))


def test_qubit_op_examples():
    assert np.array_equal(qubit_op(ID), np.eye(2))
    assert np.array_equal(qubit_op(PI), [[0, 1], [1, 0]])
    assert np.array_equal(qubit_op(HALF), [[0, -1j], [1j, 0]])
    # sign-flipped realizations of the zero-diagonal phase matrices
    np.testing.assert_allclose(qubit_op(HALF), -delta_tilde(PhaseSpec.qubit(np.pi / 2)), atol=1e-15)
    np.testing.assert_allclose(qubit_op(PI), -delta_tilde(PhaseSpec.qubit(np.pi)), atol=1e-15)


def test_qubit_ops_hermitian_unitary_involutive():
    for s in QubitSetting:
        u = qubit_op(s)
        assert np.array_equal(u, u.conj().T)
        assert is_unitary(u, 1e-15)
        assert np.array_equal(u @ u, np.eye(2))


def test_tensor_operator_examples():
    assert np.array_equal(tensor_operator([ID, ID]).matrix, np.eye(4))
    assert np.array_equal(tensor_operator([HALF, HALF]).matrix, np.kron(SIGMA_Y, SIGMA_Y))
    op = tensor_operator([HALF, HALF, PI, PI])
    assert op.matrix.shape == (16, 16)
    assert np.array_equal(op.matrix, kron_all([SIGMA_Y, SIGMA_Y, SIGMA_X, SIGMA_X]))
    assert op.pauli_string == "YYXX"
    with pytest.raises(DomainError):
        tensor_operator([])


def test_every_tensor_operator_unitary():
    import itertools

    for m in range(1, 5):
        for settings in itertools.product(list(QubitSetting), repeat=m):
            assert is_unitary(tensor_operator(settings).matrix, 1e-12)


@pytest.mark.parametrize("k", [2, 3, 4, 8, 16])
def test_resolution_check(k):
    assert povm_resolution_check(2, k) <= 1e-14


def test_resolution_check_errors():
    with pytest.raises(UnsupportedDimensionError):
        povm_resolution_check(3, 8)
    with pytest.raises(DomainError):
        povm_resolution_check(2, 1)


def test_povm_probability_examples(rng):
    for phi in rng.uniform(0, 2 * np.pi, 5):
        assert abs(povm_probability(np.eye(2) / 2, PhaseSpec.qubit(phi)) - 1) < 1e-12
    assert abs(povm_probability(np.diag([1, 0]), PhaseSpec.qubit(np.pi / 2)) - 1) < 1e-12
    assert abs(povm_probability(np.full((2, 2), 0.5), PhaseSpec.qubit(0.0)) - 2) < 1e-12


@pytest.mark.parametrize(
    "rho",
    [np.eye(2), np.array([[0.5, 0.6], [0.1, 0.5]]), np.diag([1.5, -0.5]), np.eye(3) / 3],
)
def test_povm_probability_rejects_invalid(rho):
    with pytest.raises(DomainError):
        povm_probability(rho, PhaseSpec.qubit(0.2))


@pytest.mark.parametrize("factor", [-1, 1j, np.exp(0.7j)])
def test_global_sign_irrelevance(rng, factor):
    for m in (2, 3, 4):
        s = random_state(m, rng)
        conj = conjugate_state(s).amplitudes
        for settings in ([HALF] * m, [HALF, PI] + [ID] * (m - 2)):
            mat = tensor_operator(settings).matrix
            base = abs(inner(s, mat @ conj)) ** 2
            scaled = abs(inner(s, (factor * mat) @ conj)) ** 2
            assert abs(base - scaled) <= 1e-14
