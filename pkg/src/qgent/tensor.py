"""Dense complex matrix helpers: Kronecker products, adjoints, unitarity.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Qubit 1 is the most significant bit of a basis index, so
``kron_all([A1, A2, ..., Am])`` applies ``Aj`` to qubit ``j``.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np

from .errors import ShapeError, SizeLimitError

MAX_DIM = 2**12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix contains NaN or Inf entries")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce ``v`` to a finite 1-D complex array."""
    x = np.asarray(v, dtype=complex)
    if x.ndim != 1 or x.size == 0:
        raise ShapeError(f"expected a non-empty 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ShapeError("vector contains NaN or Inf entries")
    return x


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product ``a ⊗ b``.

    Entry ``[ia*b.rows + ib, ja*b.cols + jb]`` of the result is
    ``a[ia, ja] * b[ib, jb]``.  Raises :class:`SizeLimitError` when either
    result dimension would exceed ``max_dim``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise SizeLimitError(f"kron result {rows}x{cols} exceeds cap {max_dim}")
    return np.kron(a, b)


def kron_all(factors: Iterable, max_dim: int = MAX_DIM) -> np.ndarray:
    factors = list(factors)
    if not factors:
        raise ShapeError("kron_all needs at least one factor")
    return reduce(lambda x, y: kron(x, y, max_dim=max_dim), factors[1:], as_matrix(factors[0]))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def is_unitary(a, tol: float = 1e-12) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"is_unitary needs a square matrix, got {a.shape}")
    residual = dagger(a) @ a - np.eye(a.shape[0])
    return bool(np.max(np.abs(residual)) <= tol)


def _fmt_entry(z: complex) -> str:
    re = z.real + 0.0
    im = z.imag + 0.0
    return f"{re:.12g}{im:+.12g}i"


def format_matrix(a) -> str:
    """Debug text: one row per line, tab-separated ``re+imi`` entries."""
    a = as_matrix(a)
    return "\n".join("\t".join(_fmt_entry(z) for z in row) for row in a)
