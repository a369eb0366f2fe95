"""Phase-POVM concurrence classes and block quantum gate entanglers for pure multi-qubit states."""

from .concurrence import (
    CANONICAL,
    RAW,
    ClassTag,
    ConcurrenceReport,
    NormalizationPolicy,
    class_concurrence,
    classify,
    enumerate_ghz_m1_ops,
    enumerate_ghz_m_ops,
    enumerate_w_ops,
    pair_term,
)
from .entangler import (
    Branch,
    EntanglerMatrix,
    apply_entangler,
    audit_separability,
    build_entangler,
    cz_gate,
    hadamard_input,
    verify_entangler,
)
from .povm import PhaseOperator, PhaseSpec, QubitSetting, delta, delta_tilde, qubit_op, tensor_operator
from .state import (
    Bipartition,
    MultiQubitState,
    canonical_state,
    conjugate_state,
    ghz_state,
    inner,
    is_fully_separable,
    make_state,
    reduced_density,
    schmidt_rank,
    w_state,
)
from .tensor import dagger, is_unitary, kron

__version__ = "0.1.0"
