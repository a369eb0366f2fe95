"""W / GHZ concurrence classes for pure multi-qubit states.

Each class is a family of tensor-product phase operators. A state's term
for one operator ``O`` is ``|<psi| O conj(psi)>|^2`` and the class
aggregate is ``sqrt(N * sum(terms))`` for a normalization constant ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import DomainError, ShapeError
from .povm import PhaseOperator, QubitSetting, tensor_operator
from .state import (
    DEFAULT_TOL,
    MultiQubitState,
    conjugate_state,
    ghz_state,
    inner,
    is_fully_separable,
)

W = "W"
GHZ_M = "GHZm"
GHZ_M1 = "GHZm1"

GHZM1_PAPER = "paper"
GHZM1_FULL = "full"


@dataclass(frozen=True)
class ClassTag:
    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in (W, GHZ_M, GHZ_M1):
            raise DomainError(f"unknown class kind {self.kind!r}")
        lowest = 3 if self.kind == GHZ_M1 else 2
        if self.m < lowest:
            raise DomainError(f"{self.kind} class needs m >= {lowest}, got {self.m}")

    @property
    def name(self) -> str:
        """Short name as used in reports: ``W4``, ``GHZ4``, ``GHZ3`` (for GHZm1 at m=4)."""
        if self.kind == W:
            return f"W{self.m}"
        if self.kind == GHZ_M:
            return f"GHZ{self.m}"
        return f"GHZ{self.m - 1}"

    @classmethod
    def parse(cls, text: str, m: int) -> "ClassTag":
        """Accepts ``W``/``GHZm``/``GHZm1`` or a report name such as ``GHZ3``."""
        t = text.strip()
        if t in (W, GHZ_M, GHZ_M1):
            return cls(t, m)
        for tag in classes_for(m):
            if tag.name == t:
                return tag
        raise DomainError(f"class {text!r} is not defined for m={m}")


def classes_for(m: int) -> list[ClassTag]:
    tags = []
    if m >= 2:
        tags += [ClassTag(W, m), ClassTag(GHZ_M, m)]
    if m >= 3:
        tags.append(ClassTag(GHZ_M1, m))
    return tags


@dataclass(frozen=True)
class NormalizationPolicy:
    """``raw`` uses N = 1; ``canonical`` scales so the class's reference
    state has aggregate 1 (W_m for W, GHZ_m for GHZm, GHZ_{m-1} x |0> for GHZm1)."""

    mode: str = "canonical"
    ghz_m1: str = GHZM1_PAPER

    def __post_init__(self):
        if self.mode not in ("raw", "canonical"):
            raise DomainError(f"normalization mode must be raw or canonical, got {self.mode!r}")
        if self.ghz_m1 not in (GHZM1_PAPER, GHZM1_FULL):
            raise DomainError(f"GHZm1 enumeration must be paper or full, got {self.ghz_m1!r}")

    def constant(self, tag: ClassTag) -> float:
        if self.mode == "raw":
            return 1.0
        m = tag.m
        if tag.kind == W:
            return m / (2 * (m - 1))
        if tag.kind == GHZ_M:
            return 2 / (m * (m - 1))
        # GHZ_{m-1} x |0> scores 1 on every operator that excludes the last qubit.
        per_excluded = 1 if self.ghz_m1 == GHZM1_PAPER else math.comb(m - 1, 2)
        return 1 / per_excluded


RAW = NormalizationPolicy("raw")
CANONICAL = NormalizationPolicy("canonical")


def _settings(m: int, half_pi: tuple[int, ...], pi: tuple[int, ...]) -> list[QubitSetting]:
    out = [QubitSetting.IDENTITY] * m
    for q in pi:
        out[q - 1] = QubitSetting.PI
    for q in half_pi:
        out[q - 1] = QubitSetting.HALF_PI
    return out


@lru_cache(maxsize=None)
def enumerate_w_ops(m: int) -> tuple[PhaseOperator, ...]:
    """One operator per qubit pair: sigma_y on the pair, identity elsewhere."""
    ClassTag(W, m)
    return tuple(
        tensor_operator(_settings(m, pair, ()), label=pair)
        for pair in combinations(range(1, m + 1), 2)
    )


@lru_cache(maxsize=None)
def enumerate_ghz_m_ops(m: int) -> tuple[PhaseOperator, ...]:
    """One operator per qubit pair: sigma_y on the pair, sigma_x elsewhere."""
    ClassTag(GHZ_M, m)
    everyone = tuple(range(1, m + 1))
    return tuple(
        tensor_operator(_settings(m, pair, everyone), label=pair)
        for pair in combinations(everyone, 2)
    )


@lru_cache(maxsize=None)
def enumerate_ghz_m1_ops(m: int, mode: str = GHZM1_PAPER) -> tuple[PhaseOperator, ...]:
    """Operators acting on ``m - 1`` qubits with identity on the excluded one.

    In ``paper`` mode there is one operator per excluded qubit, with sigma_y on
    the two smallest remaining indices and sigma_x on the rest; at m=4 this
    yields the labels (12,3), (12,4), (13,4), (23,4). ``full`` mode takes every
    sigma_y pair inside the remaining set. Labels are ``((r1, r2), rest)``.
    """
    ClassTag(GHZ_M1, m)
    if mode not in (GHZM1_PAPER, GHZM1_FULL):
        raise DomainError(f"unknown GHZm1 enumeration {mode!r}")
    ops = []
    for excluded in range(m, 0, -1):
        kept = tuple(q for q in range(1, m + 1) if q != excluded)
        pairs = [kept[:2]] if mode == GHZM1_PAPER else list(combinations(kept, 2))
        for pair in pairs:
            rest = tuple(q for q in kept if q not in pair)
            ops.append(tensor_operator(_settings(m, pair, kept), label=(pair, rest)))
    return tuple(sorted(ops, key=lambda op: op.label))


def class_operators(tag: ClassTag, ghz_m1: str = GHZM1_PAPER) -> tuple[PhaseOperator, ...]:
    if tag.kind == W:
        return enumerate_w_ops(tag.m)
    if tag.kind == GHZ_M:
        return enumerate_ghz_m_ops(tag.m)
    return enumerate_ghz_m1_ops(tag.m, ghz_m1)


def pair_term(s: MultiQubitState, op: PhaseOperator) -> float:
    """``|<psi| O conj(psi)>|^2``."""
    if op.matrix.shape[0] != s.dim:
        raise ShapeError(f"operator dimension {op.matrix.shape[0]} does not match state dimension {s.dim}")
    return abs(inner(s, op.matrix @ conjugate_state(s).amplitudes)) ** 2


def class_concurrence(
    s: MultiQubitState, tag: ClassTag, policy: NormalizationPolicy = CANONICAL
) -> float:
    if tag.m != s.num_qubits:
        raise ShapeError(f"class {tag.name} is for {tag.m} qubits, state has {s.num_qubits}")
    terms = [pair_term(s, op) for op in class_operators(tag, policy.ghz_m1)]
    return math.sqrt(policy.constant(tag) * math.fsum(terms))


def label_text(label) -> str:
    """``(1, 2)`` -> ``"12"``; ``((1, 2), (3,))`` -> ``"12,3"``."""
    if label and isinstance(label[0], tuple):
        return ",".join("".join(map(str, part)) for part in label)
    return "".join(map(str, label))


@dataclass
class TermEntry:
    label: tuple
    operator: str
    value: float

    def to_dict(self) -> dict:
        idx = [list(p) for p in self.label] if self.label and isinstance(self.label[0], tuple) else list(self.label)
        return {"idx": idx, "label": label_text(self.label), "operator": self.operator, "value": self.value}


@dataclass
class ClassResult:
    tag: ClassTag
    terms: list[TermEntry]
    constant: float
    aggregate: float
    nonzero: bool

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.name,
            "kind": self.tag.kind,
            "normalization": self.constant,
            "terms": [t.to_dict() for t in self.terms],
            "aggregate": self.aggregate,
            "nonzero": self.nonzero,
        }


@dataclass
class ConcurrenceReport:
    state_id: str
    m: int
    tolerance: float
    policy: NormalizationPolicy
    classes: list[ClassResult]
    oracle_separable: bool
    consistent: bool
    notes: list[str] = field(default_factory=list)
    # Filled in by entangler verification only.
    gate: dict | None = None
    target: str | None = None
    condition_holds: bool | None = None

    def by_name(self, name: str) -> ClassResult:
        for c in self.classes:
            if c.tag.name == name or c.tag.kind == name:
                return c
        raise KeyError(name)

    @property
    def any_nonzero(self) -> bool:
        return any(c.nonzero for c in self.classes)

    def to_dict(self) -> dict:
        out = {
            "state": {"id": self.state_id, "m": self.m},
            "tolerance": self.tolerance,
            "normalization": self.policy.mode,
            "ghz_m1_enumeration": self.policy.ghz_m1,
            "classes": [c.to_dict() for c in self.classes],
            "oracle_separable": self.oracle_separable,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }
        if self.gate is not None:
            out["gate"] = self.gate
            out["target"] = self.target
            out["condition_holds"] = self.condition_holds
        return out


def classify(
    s: MultiQubitState,
    tol: float = DEFAULT_TOL,
    policy: NormalizationPolicy = CANONICAL,
    state_id: str = "",
) -> ConcurrenceReport:
    """Evaluate every class defined for ``s.num_qubits`` and cross-check the
    W verdict against the single-qubit-purity separability oracle.

    ``consistent`` is True when "all W terms zero" agrees with the oracle.
    It is False for e.g. GHZ_3, whose W terms all vanish although the state
    is entangled; such cases are reported, not corrected.
    """
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    m = s.num_qubits
    results = []
    for tag in classes_for(m):
        ops = class_operators(tag, policy.ghz_m1)
        terms = [TermEntry(op.label, op.pauli_string, pair_term(s, op)) for op in ops]
        const = policy.constant(tag)
        agg = math.sqrt(const * math.fsum(t.value for t in terms))
        results.append(ClassResult(tag, terms, const, agg, agg > tol))

    separable = is_fully_separable(s, tol)
    notes = []
    if m == 2:
        notes.append("W2 and GHZ2 use the same operator (sigma_y x sigma_y); the classes coincide at m=2")
    w = next((r for r in results if r.tag.kind == W), None)
    if w is None:
        consistent = True
    else:
        consistent = (not w.nonzero) == separable
        if not consistent:
            if separable:
                notes.append(f"{w.tag.name} aggregate is nonzero for a fully separable state")
            else:
                notes.append(f"{w.tag.name} terms all vanish but the oracle reports an entangled state")
    return ConcurrenceReport(state_id, m, tol, policy, results, separable, consistent, notes)


def w_class_discrepancy(m: int = 3, tol: float = 1e-12) -> dict:
    """Evaluate the W class on GHZ_m.

    For m >= 3 every W term is zero on GHZ_m even though GHZ_m is entangled,
    so "W concurrence vanishes only on fully separable states" fails there.
    """
    ghz = ghz_state(m)
    terms = [pair_term(ghz, op) for op in enumerate_w_ops(m)]
    max_term = max(terms)
    separable = is_fully_separable(ghz)
    return {
        "state": f"GHZ{m}",
        "class": f"W{m}",
        "max_term": max_term,
        "oracle_separable": separable,
        "reproduced": bool(max_term < tol and not separable),
    }
