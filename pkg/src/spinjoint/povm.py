"""Generalized one-qubit measurements.

An ``Effect`` is one labelled outcome operator; a ``Povm`` is an ordered
collection of them.  Construction only checks structure (shape,
Hermiticity), so defective candidates can be built and inspected;
``validate`` reports positivity and completeness, and the Born-rule
evaluators refuse POVMs that fail it.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPovm, InvalidState, NotHermitian
from .qubit import (
    ATOL,
    ID2,
    QubitState,
    TwoQubitState,
    hermitian_eigenvalues,
    is_hermitian,
    pauli_dot,
    tensor2,
    unit3,
)

# User-supplied matrices carry float rounding; construction code in this
# package is exact to ~1e-15, so validation is looser than ATOL.
VALIDATION_TOL = 1e-10


@dataclass(frozen=True)
class Effect:
    """One labelled POVM outcome operator (Hermitian 2x2)."""

    label: str
    op: np.ndarray

    def __post_init__(self):
        m = np.array(self.op, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"effect operator must be 2x2, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("effect operator entries must be finite")
        if not is_hermitian(m, ATOL):
            raise NotHermitian(f"effect {self.label!r} is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "op", m)

    def min_eigenvalue(self) -> float:
        return hermitian_eigenvalues(self.op)[0]


@dataclass(frozen=True)
class Povm:
    """Ordered, uniquely labelled set of effects."""

    effects: tuple[Effect, ...]

    def __post_init__(self):
        effects = tuple(self.effects)
        if not effects:
            raise ValueError("a POVM needs at least one effect")
        labels = [e.label for e in effects]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate outcome labels: {labels}")
        object.__setattr__(self, "effects", effects)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.effects)

    def effect(self, label: str) -> Effect:
        for e in self.effects:
            if e.label == label:
                return e
        raise KeyError(label)

    def __len__(self) -> int:
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a POVM: per-effect minimum eigenvalues and the
    completeness defect max|sum(effects) - identity|."""

    min_eigenvalues: tuple[float, ...]
    completeness_defect: float
    tolerance: float
    passes: bool
    failures: tuple[str, ...]


def projective_povm(a) -> Povm:
    """Sharp two-outcome measurement along a unit direction: (1 +- a.sigma)/2."""
    u = unit3(a)
    s = pauli_dot(u)
    return Povm(
        (Effect("+", 0.5 * (ID2 + s)), Effect("-", 0.5 * (ID2 - s)))
    )


def validate(povm: Povm, tol: float = VALIDATION_TOL) -> ValidationReport:
    """Check positivity of every effect and completeness of the sum."""
    mins = tuple(e.min_eigenvalue() for e in povm.effects)
    total = np.sum([e.op for e in povm.effects], axis=0)
    defect = float(np.max(np.abs(total - ID2)))
    failures = []
    for e, lo in zip(povm.effects, mins):
        if lo < -tol:
            failures.append(f"effect {e.label!r} has eigenvalue {lo}")
    if defect > tol:
        failures.append(f"completeness defect {defect}")
    return ValidationReport(
        min_eigenvalues=mins,
        completeness_defect=defect,
        tolerance=tol,
        passes=not failures,
        failures=tuple(failures),
    )


def _require_valid(povm: Povm, tol: float) -> None:
    report = validate(povm, tol)
    if not report.passes:
        raise InvalidPovm("; ".join(report.failures))


def outcome_probabilities(
    povm: Povm, state: QubitState, tol: float = VALIDATION_TOL
) -> list[tuple[str, float]]:
    """Born-rule probabilities Re tr(effect rho), in effect order.

    Tiny negatives from rounding are clamped to 0 and flagged with a
    RuntimeWarning so downstream sampling stays deterministic.
    """
    _require_valid(povm, tol)
    if not isinstance(state, QubitState):
        raise InvalidState("expected a QubitState")
    out = []
    for e in povm.effects:
        p = float(np.trace(e.op @ state.rho).real)
        if -tol <= p < 0.0:
            warnings.warn(
                f"clamped negative probability {p} for outcome {e.label!r}",
                RuntimeWarning,
                stacklevel=2,
            )
            p = 0.0
        out.append((e.label, p))
    return out


def two_party_probabilities(
    povm1: Povm, povm2: Povm, state: TwoQubitState, tol: float = VALIDATION_TOL
) -> np.ndarray:
    """Joint outcome matrix p[i, j] = Re tr((effect1_i x effect2_j) rho4).

    Row sums depend only on povm1 and the reduced state of qubit 1, which
    is the exact operational statement that observer 2's choice of
    measurement cannot be detected on observer 1's side.
    """
    _require_valid(povm1, tol)
    _require_valid(povm2, tol)
    if not isinstance(state, TwoQubitState):
        raise InvalidState("expected a TwoQubitState")
    probs = np.empty((len(povm1), len(povm2)))
    for i, e1 in enumerate(povm1.effects):
        for j, e2 in enumerate(povm2.effects):
            probs[i, j] = float(np.trace(tensor2(e1.op, e2.op) @ state.rho4).real)
    return probs


def povm_to_json(povm: Povm) -> str:
    """Serialize as a JSON document; complex entries become [re, im] pairs.

    Round-trips bit-exactly at double precision.
    """
    effects = []
    for e in povm.effects:
        flat = [[z.real, z.imag] for z in e.op.reshape(-1)]
        effects.append({"label": e.label, "op": flat})
    return json.dumps({"effects": effects}, indent=2)


def povm_from_json(text: str) -> Povm:
    doc = json.loads(text)
    effects = []
    for item in doc["effects"]:
        entries = [complex(re, im) for re, im in item["op"]]
        if len(entries) != 4:
            raise ValueError("each effect needs exactly 4 complex entries")
        op = np.array(entries, dtype=complex).reshape(2, 2)
        effects.append(Effect(item["label"], op))
    return Povm(tuple(effects))
