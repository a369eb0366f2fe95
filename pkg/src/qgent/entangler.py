"""Block-diagonal quantum gate entanglers acting on the uniform superposition."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .concurrence import (
    CANONICAL,
    ClassTag,
    ConcurrenceReport,
    NormalizationPolicy,
    classify,
    w_class_discrepancy,
)
from .errors import DegenerateInputError, DomainError, NonUnitaryAmplitudeError, ShapeError
from .state import DEFAULT_TOL, MultiQubitState, is_fully_separable, make_state
from .tensor import I2, SIGMA_X, SIGMA_Z, as_vector, is_unitary, kron

UNIT_TOL = 1e-10

SWAP_BLOCK = SIGMA_X


class Branch(enum.Enum):
    DIAGONAL = "diag"
    ANTI_DIAGONAL = "antidiag"


@dataclass(frozen=True, eq=False)
class EntanglerMatrix:
    m: int
    branch: Branch
    alphas: np.ndarray
    matrix: np.ndarray
    unitary: bool

    @property
    def dim(self) -> int:
        return 2**self.m

    def summary(self) -> dict:
        return {"m": self.m, "dimension": self.dim, "branch": self.branch.value, "unitary": self.unitary}


def _block(a0: complex, a1: complex, branch: Branch) -> np.ndarray:
    if branch is Branch.DIAGONAL:
        return np.array([[a0, 0], [0, a1]], dtype=complex)
    u = np.array([[0, a0], [a1, 0]], dtype=complex)
    return u @ SWAP_BLOCK


def build_entangler(m: int, alphas, branch=Branch.DIAGONAL, strict: bool = True) -> EntanglerMatrix:
    """Assemble ``Z = Z^0 Z^1 ... Z^{2^{m-1}-1}`` as a direct sum of 2x2 blocks.

    Block ``x`` carries ``alpha_{2x}`` and ``alpha_{2x+1}`` so that
    ``Z H^{(x)m} |0...0>`` has amplitude ``alpha_x / 2^{m/2}`` at index ``x``.
    In the anti-diagonal branch the block is ``[[0, a0], [a1, 0]] @ S`` with
    ``S`` the swap, which gives back ``diag(a0, a1)``.
    """
    if m < 1:
        raise DomainError(f"entangler needs m >= 1, got {m}")
    alphas = as_vector(alphas)
    if alphas.size != 2**m:
        raise ShapeError(f"m={m} needs {2**m} alphas, got {alphas.size}")
    branch = Branch(branch)
    if strict:
        bad = [int(i) for i in np.flatnonzero(np.abs(np.abs(alphas) - 1.0) > UNIT_TOL)]
        if bad:
            raise NonUnitaryAmplitudeError(f"alphas at indices {bad} do not have unit modulus", bad)
    dim = 2**m
    mat = np.zeros((dim, dim), dtype=complex)
    for x in range(dim // 2):
        mat[2 * x : 2 * x + 2, 2 * x : 2 * x + 2] = _block(alphas[2 * x], alphas[2 * x + 1], branch)
    mat.flags.writeable = False
    alphas = alphas.copy()
    alphas.flags.writeable = False
    return EntanglerMatrix(m, branch, alphas, mat, is_unitary(mat, UNIT_TOL))


def hadamard_input(m: int) -> MultiQubitState:
    """``H^{(x)m} |0...0>``: every amplitude equal to ``2^{-m/2}``."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    dim = 2**m
    return MultiQubitState(m, np.full(dim, 1 / np.sqrt(dim), dtype=complex))


def apply_entangler(z: EntanglerMatrix) -> MultiQubitState:
    """Apply ``z`` to the uniform superposition.

    The output is exact when every alpha has unit modulus; otherwise it is
    renormalized and ``normalized`` on the returned state is False.
    """
    out = z.matrix @ hadamard_input(z.m).amplitudes
    norm = np.linalg.norm(out)
    if norm == 0.0:
        raise DegenerateInputError("entangler maps the uniform superposition to zero")
    if abs(norm - 1.0) <= UNIT_TOL:
        return MultiQubitState(z.m, out, True)
    st = make_state(z.m, out, normalize=True)
    return MultiQubitState(z.m, st.amplitudes, False)


def cz_gate() -> np.ndarray:
    """Controlled-Z from the Pauli-z expansion ``(II + IZ + ZI - ZZ) / 2``."""
    return 0.5 * (kron(I2, I2) + kron(I2, SIGMA_Z) + kron(SIGMA_Z, I2) - kron(SIGMA_Z, SIGMA_Z))


def verify_entangler(
    m: int,
    alphas,
    tag: ClassTag | str | None = None,
    tol: float = DEFAULT_TOL,
    policy: NormalizationPolicy = CANONICAL,
    branch=Branch.DIAGONAL,
    strict: bool = True,
) -> ConcurrenceReport:
    """Build the entangler, apply it to the uniform superposition and classify.

    The report carries the gate summary; when ``tag`` is given,
    ``condition_holds`` says whether that class's aggregate is nonzero.
    """
    z = build_entangler(m, alphas, branch, strict)
    state = apply_entangler(z)
    report = classify(state, tol, policy, state_id="Z H|0>")
    gate = z.summary()
    if not z.unitary:
        gate["note"] = "not a gate: matrix is not unitary"
    report.gate = gate
    if tag is not None:
        tag = ClassTag.parse(tag, m) if isinstance(tag, str) else tag
        report.target = tag.name
        report.condition_holds = report.by_name(tag.name).nonzero
    return report


def random_unit_alphas(m: int, rng: np.random.Generator) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(2**m))


@dataclass
class AuditResult:
    m: int
    samples: int
    seed: int
    agreements: int
    disagreements: list[dict] = field(default_factory=list)
    discrepancy: dict | None = None

    @property
    def agreement_rate(self) -> float:
        return self.agreements / self.samples if self.samples else 1.0

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "samples": self.samples,
            "seed": self.seed,
            "agreements": self.agreements,
            "agreement_rate": self.agreement_rate,
            "disagreements": self.disagreements,
            "w_class_discrepancy": self.discrepancy,
        }


def audit_separability(
    m: int,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    policy: NormalizationPolicy = CANONICAL,
) -> AuditResult:
    """Compare "some class aggregate nonzero" with oracle non-separability on
    entangler outputs for random unit-modulus alphas.

    Disagreements are listed individually. The GHZ_3 / W_3 check from
    :func:`w_class_discrepancy` is attached to every result.
    """
    if samples < 0:
        raise DomainError("sample count must be nonnegative")
    rng = np.random.default_rng(seed)
    agree = 0
    disagreements = []
    for k in range(samples):
        alphas = random_unit_alphas(m, rng)
        state = apply_entangler(build_entangler(m, alphas))
        report = classify(state, tol, policy)
        entangled = not is_fully_separable(state, tol)
        if report.any_nonzero == entangled:
            agree += 1
        else:
            disagreements.append(
                {"sample": k, "any_class_nonzero": report.any_nonzero, "oracle_entangled": entangled}
            )
    return AuditResult(m, samples, seed, agree, disagreements, w_class_discrepancy(3))
