"""Pure multi-qubit states, canonical constructors and the separability oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInputError, DomainError, ShapeError
from .tensor import as_vector

NORM_TOL = 1e-10
DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MultiQubitState:
    """Amplitude vector over the basis ``|x1 x2 ... xm>``, qubit 1 most significant.

    ``normalized`` is False only for states built in raw mode whose norm is
    not one.
    """

    num_qubits: int
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        amps = as_vector(self.amplitudes).copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of length 2 per qubit."""
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def __repr__(self):
        return f"MultiQubitState(m={self.num_qubits}, normalized={self.normalized})"


@dataclass(frozen=True)
class Bipartition:
    left: tuple[int, ...]
    right: tuple[int, ...]

    @classmethod
    def of(cls, left: Iterable[int], m: int) -> "Bipartition":
        left_set = set(left)
        if not left_set or not left_set.issubset(range(1, m + 1)):
            raise DomainError(f"left part {sorted(left_set)} is not a subset of 1..{m}")
        right = tuple(q for q in range(1, m + 1) if q not in left_set)
        if not right:
            raise DomainError("right part of a bipartition must be non-empty")
        return cls(tuple(sorted(left_set)), right)

    @property
    def m(self) -> int:
        return len(self.left) + len(self.right)


def make_state(m: int, amplitudes, normalize: bool = True) -> MultiQubitState:
    """Build an ``m``-qubit state.

    With ``normalize`` the amplitudes are rescaled to unit norm. Without it
    the vector is kept as given and the ``normalized`` flag reports whether
    it already had unit norm (within 1e-10).
    """
    if m < 1:
        raise DomainError(f"number of qubits must be positive, got {m}")
    amps = as_vector(amplitudes)
    if amps.size != 2**m:
        raise ShapeError(f"{m} qubits need {2**m} amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise DegenerateInputError("amplitude vector is all zero")
    if normalize:
        return MultiQubitState(m, amps / norm, True)
    return MultiQubitState(m, amps, abs(norm**2 - 1.0) <= NORM_TOL)


def basis_state(bits: str | Sequence[int]) -> MultiQubitState:
    bits = [int(b) for b in bits]
    if not bits or any(b not in (0, 1) for b in bits):
        raise DomainError("basis label must be a non-empty bit string")
    m = len(bits)
    amps = np.zeros(2**m, dtype=complex)
    amps[int("".join(map(str, bits)), 2)] = 1.0
    return MultiQubitState(m, amps)


def ghz_state(m: int) -> MultiQubitState:
    if m < 2:
        raise DomainError(f"GHZ state needs m >= 2, got {m}")
    amps = np.zeros(2**m, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return MultiQubitState(m, amps)


def w_state(m: int) -> MultiQubitState:
    if m < 2:
        raise DomainError(f"W state needs m >= 2, got {m}")
    amps = np.zeros(2**m, dtype=complex)
    for j in range(m):
        amps[1 << j] = 1 / np.sqrt(m)
    return MultiQubitState(m, amps)


def product_state(factors: Sequence[Sequence[complex]]) -> MultiQubitState:
    """Tensor product of single-qubit vectors, each normalized first."""
    if not factors:
        raise DomainError("product state needs at least one factor")
    psi = np.ones(1, dtype=complex)
    for f in factors:
        v = as_vector(f)
        if v.size != 2:
            raise ShapeError(f"single-qubit factor must have 2 entries, got {v.size}")
        n = np.linalg.norm(v)
        if n == 0.0:
            raise DegenerateInputError("single-qubit factor is all zero")
        psi = np.kron(psi, v / n)
    return MultiQubitState(len(factors), psi)


def canonical_state(kind: str, m: int | None = None, arg=None) -> MultiQubitState:
    """Dispatch by name: ``"GHZ"``, ``"W"``, ``"basis"`` (arg = bits) or
    ``"product"`` (arg = list of single-qubit pairs)."""
    key = kind.lower()
    if key == "ghz":
        return ghz_state(m)
    if key == "w":
        return w_state(m)
    if key == "basis":
        st = basis_state(arg)
    elif key == "product":
        st = product_state(arg)
    else:
        raise DomainError(f"unknown canonical state kind {kind!r}")
    if m is not None and st.num_qubits != m:
        raise ShapeError(f"{kind} state has {st.num_qubits} qubits, expected {m}")
    return st


def conjugate_state(s: MultiQubitState) -> MultiQubitState:
    """Complex conjugation of every amplitude in the computational basis."""
    return MultiQubitState(s.num_qubits, s.amplitudes.conj(), s.normalized)


def inner(a: MultiQubitState, b) -> complex:
    """``<a|b>``; ``b`` may be a state or a raw vector."""
    vec = b.amplitudes if isinstance(b, MultiQubitState) else as_vector(b)
    if vec.size != a.dim:
        raise ShapeError(f"dimension mismatch: {a.dim} vs {vec.size}")
    return complex(np.vdot(a.amplitudes, vec))


def _check_indices(keep: Iterable[int], m: int) -> list[int]:
    keep = sorted(set(keep))
    if not keep or keep[0] < 1 or keep[-1] > m:
        raise DomainError(f"qubit index set {keep} must be a non-empty subset of 1..{m}")
    return keep


def _split_matrix(s: MultiQubitState, keep: list[int]) -> np.ndarray:
    """Amplitudes as a (2^|keep|, 2^rest) matrix."""
    m = s.num_qubits
    axes = [q - 1 for q in keep] + [q - 1 for q in range(1, m + 1) if q not in keep]
    t = np.transpose(s.tensor(), axes)
    return t.reshape(2 ** len(keep), -1)


def reduced_density(s: MultiQubitState, keep: Iterable[int]) -> np.ndarray:
    """Density matrix of the qubits in ``keep`` (1-based), others traced out."""
    keep = _check_indices(keep, s.num_qubits)
    mat = _split_matrix(s, keep)
    return mat @ mat.conj().T


def schmidt_rank(s: MultiQubitState, cut: Bipartition, tol: float = DEFAULT_TOL) -> int:
    if cut.m != s.num_qubits:
        raise ShapeError(f"bipartition is over {cut.m} qubits, state has {s.num_qubits}")
    sv = np.linalg.svd(_split_matrix(s, list(cut.left)), compute_uv=False)
    return int(np.sum(sv > tol))


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def is_fully_separable(s: MultiQubitState, tol: float = DEFAULT_TOL) -> bool:
    """True iff every single-qubit marginal is pure (purity >= 1 - tol)."""
    return all(
        purity(reduced_density(s, [j])) >= 1.0 - tol for j in range(1, s.num_qubits + 1)
    )


def random_state(m: int, rng: np.random.Generator) -> MultiQubitState:
    """Haar-random pure state."""
    v = rng.normal(size=2**m) + 1j * rng.normal(size=2**m)
    return make_state(m, v, normalize=True)


def random_product_state(m: int, rng: np.random.Generator) -> MultiQubitState:
    factors = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(m)]
    return product_state(factors)


def state_from_json(obj: dict, normalize: bool = True) -> MultiQubitState:
    """Parse ``{"m": int, "amplitudes": [[re, im], ...]}``.

    Raises :class:`ShapeError` for schema problems and
    :class:`DegenerateInputError` for an all-zero vector.
    """
    if not isinstance(obj, dict) or "m" not in obj or "amplitudes" not in obj:
        raise ShapeError('state JSON must be an object with keys "m" and "amplitudes"')
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ShapeError(f'"m" must be a positive integer, got {m!r}')
    amps = parse_complex_list(obj["amplitudes"], "amplitudes")
    if len(amps) != 2**m:
        raise ShapeError(f"m={m} needs {2**m} amplitudes, got {len(amps)}")
    return make_state(m, amps, normalize=normalize)


def state_to_json(s: MultiQubitState) -> dict:
    return {
        "m": s.num_qubits,
        "amplitudes": [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in s.amplitudes],
    }


def parse_complex_list(raw, field: str) -> list[complex]:
    if not isinstance(raw, list):
        raise ShapeError(f'"{field}" must be a list of [re, im] pairs')
    out = []
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ShapeError(f'"{field}"[{k}] must be a [re, im] pair of numbers, got {pair!r}')
        z = complex(pair[0], pair[1])
        if not np.isfinite(z):
            raise ShapeError(f'"{field}"[{k}] is not finite')
        out.append(z)
    return out
