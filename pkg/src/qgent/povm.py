"""Symmetric phase POVM matrices, their zero-diagonal complements and
tensor-product phase operators."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, IncompleteSpecError, UnsupportedDimensionError
from .tensor import I2, SIGMA_X, SIGMA_Y, as_matrix, kron_all


@dataclass(frozen=True)
class PhaseSpec:
    """Relative phases ``phi[(k, l)]`` (1-based, ``k < l``) of an N-level POVM."""

    dim: int
    phases: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"POVM dimension must be >= 2, got {self.dim}")
        for (k, l), phi in self.phases.items():
            if not (1 <= k < l <= self.dim):
                raise DomainError(f"invalid phase index pair ({k}, {l}) for N={self.dim}")
            if not np.isfinite(phi):
                raise DomainError(f"phase ({k}, {l}) is not finite")

    @classmethod
    def qubit(cls, phi: float) -> "PhaseSpec":
        return cls(2, {(1, 2): phi})

    @classmethod
    def uniform(cls, dim: int, phi: float) -> "PhaseSpec":
        return cls(dim, {(k, l): phi for k in range(1, dim + 1) for l in range(k + 1, dim + 1)})

    def pairs(self):
        return [(k, l) for k in range(1, self.dim + 1) for l in range(k + 1, self.dim + 1)]


def delta(spec: PhaseSpec) -> np.ndarray:
    """Phase POVM element: ones on the diagonal, ``e^{i phi_kl}`` above it and
    the conjugate below."""
    missing = [p for p in spec.pairs() if p not in spec.phases]
    if missing:
        raise IncompleteSpecError(f"missing phases for pairs {missing}")
    out = np.eye(spec.dim, dtype=complex)
    for (k, l), phi in spec.phases.items():
        out[k - 1, l - 1] = np.exp(1j * phi)
        out[l - 1, k - 1] = np.exp(-1j * phi)
    return out


def delta_tilde(spec: PhaseSpec) -> np.ndarray:
    """``delta(spec)`` with the diagonal removed."""
    out = delta(spec)
    np.fill_diagonal(out, 0.0)
    return out


class QubitSetting(enum.Enum):
    HALF_PI = "HalfPi"
    PI = "Pi"
    IDENTITY = "Identity"

    @property
    def symbol(self) -> str:
        return {"HalfPi": "Y", "Pi": "X", "Identity": "I"}[self.value]


# Realized with the global sign flipped relative to delta_tilde(pi/2) and
# delta_tilde(pi); squared concurrence terms do not see the sign.
_QUBIT_OPS = {
    QubitSetting.HALF_PI: SIGMA_Y,
    QubitSetting.PI: SIGMA_X,
    QubitSetting.IDENTITY: I2,
}
for _m in _QUBIT_OPS.values():
    _m.flags.writeable = False


def qubit_op(setting: QubitSetting) -> np.ndarray:
    return _QUBIT_OPS[QubitSetting(setting)]


def qubit_phase(setting: QubitSetting) -> float | None:
    """The POVM phase a setting stands for, or None for the identity."""
    return {QubitSetting.HALF_PI: np.pi / 2, QubitSetting.PI: np.pi}.get(QubitSetting(setting))


@dataclass(frozen=True, eq=False)
class PhaseOperator:
    settings: tuple[QubitSetting, ...]
    matrix: np.ndarray
    label: tuple = ()

    @property
    def num_qubits(self) -> int:
        return len(self.settings)

    @property
    def pauli_string(self) -> str:
        return "".join(s.symbol for s in self.settings)

    def __repr__(self):
        return f"PhaseOperator({self.pauli_string}, label={self.label})"


@lru_cache(maxsize=None)
def _tensor_matrix(settings: tuple[QubitSetting, ...]) -> np.ndarray:
    mat = kron_all(qubit_op(s) for s in settings)
    mat.flags.writeable = False
    return mat


def tensor_operator(settings: Sequence[QubitSetting], label: tuple = ()) -> PhaseOperator:
    settings = tuple(QubitSetting(s) for s in settings)
    if not settings:
        raise DomainError("tensor_operator needs at least one qubit setting")
    return PhaseOperator(settings, _tensor_matrix(settings), label)


def povm_resolution_check(n: int, grid_points: int) -> float:
    """Max-norm residual of the equally weighted phase-grid average of
    ``delta`` against the identity.

    Only ``n == 2`` is supported.
    """
    if n != 2:
        raise UnsupportedDimensionError(f"resolution check supports N=2 only, got N={n}")
    if grid_points < 2:
        raise DomainError(f"grid needs at least 2 points, got {grid_points}")
    total = sum(delta(PhaseSpec.qubit(2 * np.pi * k / grid_points)) for k in range(grid_points))
    return float(np.max(np.abs(total / grid_points - np.eye(n))))


def povm_probability(rho, spec: PhaseSpec, tol: float = 1e-10) -> float:
    """``Tr(rho @ delta(spec))`` for a valid density matrix ``rho``."""
    rho = as_matrix(rho)
    if rho.shape != (spec.dim, spec.dim):
        raise DomainError(f"density matrix shape {rho.shape} does not match N={spec.dim}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DomainError("density matrix trace is not 1")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise DomainError("density matrix is not positive semidefinite")
    p = np.trace(rho @ delta(spec))
    if abs(p.imag) > tol:
        raise DomainError(f"probability has imaginary part {p.imag:.3g}")
    return float(p.real)
