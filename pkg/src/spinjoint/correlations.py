"""Two-observer singlet experiment.

Observer 1 measures jointly along a and a_prime, observer 2 sharply along
b or b_prime.  On the singlet the sharp correlation is E(A, B) = -a.b and
every joint-measurement correlation is damped by its sharpness factor,
E(A_J, B) = -alpha a.b.  The CHSH-type combination

    |E(A_J, B) + E(A'_J, B)| + |E(A_J, B') - E(A'_J, B')|

can never exceed 2 for a joint measurement (a joint probability table for
the outcome triples exists, and marginals cannot signal), while sharp
measurements on separate systems reach 2 sqrt(2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection
from .joint import (
    JointSpec,
    general_joint_povm,
    outcome_values,
    require_admissible,
)
from .povm import Povm, projective_povm, two_party_probabilities
from .qubit import TwoQubitState, norm3, unit3

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

_SINGLET_VEC = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True)
class Settings:
    """Observer 2's two analyzer directions."""

    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        b = unit3(self.b)
        bp = unit3(self.b_prime)
        b.setflags(write=False)
        bp.setflags(write=False)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "b_prime", bp)


@dataclass(frozen=True)
class CorrelationSet:
    """The four correlation functions E(A_J, B), E(A'_J, B), E(A_J, B'),
    E(A'_J, B')."""

    e_ab: float
    e_apb: float
    e_abp: float
    e_apbp: float

    def __post_init__(self):
        for name in ("e_ab", "e_apb", "e_abp", "e_apbp"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or abs(v) > 1.0 + 1e-12:
                raise ValueError(f"{name} = {v} outside [-1, 1]")
            object.__setattr__(self, name, v)


def singlet() -> TwoQubitState:
    """The maximally entangled two-qubit state with E(a, b) = -a.b."""
    return TwoQubitState(np.outer(_SINGLET_VEC, _SINGLET_VEC.conj()))


def sharp_correlation(a, b) -> float:
    """Singlet correlation of sharp measurements along a and b: -a.b."""
    return -float(unit3(a) @ unit3(b))


def sharp_correlations(a, a_prime, settings: Settings) -> CorrelationSet:
    """Correlation set for sharp (unit-sharpness) measurements of both
    observables on separate singlet halves; this is the configuration the
    joint-measurement bound does NOT constrain."""
    return CorrelationSet(
        e_ab=sharp_correlation(a, settings.b),
        e_apb=sharp_correlation(a_prime, settings.b),
        e_abp=sharp_correlation(a, settings.b_prime),
        e_apbp=sharp_correlation(a_prime, settings.b_prime),
    )


def joint_correlations(spec: JointSpec, settings: Settings) -> CorrelationSet:
    """Closed-form correlation set for a joint measurement against sharp
    analyzers: each entry is -alpha(.) times a dot product."""
    require_admissible(spec)
    a, ap = spec.a, spec.a_prime
    al, alp = spec.alpha, spec.alpha_prime
    return CorrelationSet(
        e_ab=-al * float(a @ settings.b),
        e_apb=-alp * float(ap @ settings.b),
        e_abp=-al * float(a @ settings.b_prime),
        e_apbp=-alp * float(ap @ settings.b_prime),
    )


def born_correlations(spec: JointSpec, settings: Settings) -> CorrelationSet:
    """Same correlation set computed the long way: four-outcome joint
    measurement tensored with each analyzer, traced against the singlet.

    Independent cross-check of ``joint_correlations``.
    """
    povm1 = general_joint_povm(spec)
    state = singlet()
    values = {}
    for tag, direction in (("b", settings.b), ("bp", settings.b_prime)):
        probs = two_party_probabilities(povm1, projective_povm(direction), state)
        e_a = 0.0
        e_ap = 0.0
        for i, label in enumerate(povm1.labels):
            va, vap = outcome_values(label)
            # analyzer labels are ("+", "-") in column order
            contrib = probs[i, 0] - probs[i, 1]
            e_a += va * contrib
            e_ap += vap * contrib
        values[tag] = (e_a, e_ap)
    return CorrelationSet(
        e_ab=values["b"][0],
        e_apb=values["b"][1],
        e_abp=values["bp"][0],
        e_apbp=values["bp"][1],
    )


def chsh_value(corr: CorrelationSet) -> float:
    """|E(A_J,B) + E(A'_J,B)| + |E(A_J,B') - E(A'_J,B')|."""
    return abs(corr.e_ab + corr.e_apb) + abs(corr.e_abp - corr.e_apbp)


def cirelson_check(corr: CorrelationSet) -> float:
    """CHSH combination with the quantum ceiling 2 sqrt(2) in mind.

    Any correlation set produced by the strategies in this library stays
    at or below 2 sqrt(2); a larger value means the input was not
    generated by a quantum strategy, and is flagged with a warning.
    """
    v = chsh_value(corr)
    if v > TSIRELSON_BOUND + 1e-10:
        warnings.warn(
            f"CHSH value {v} exceeds 2*sqrt(2); correlations are not "
            "quantum-realizable",
            RuntimeWarning,
            stacklevel=2,
        )
    return v


def optimal_settings(spec: JointSpec) -> Settings:
    """Analyzers maximizing the CHSH combination: b along
    alpha a + alpha' a', b_prime along alpha a - alpha' a'.

    The antiparallel choices are equally optimal (only absolute values
    enter); this function deterministically returns the +-parallel pair.
    """
    v_plus = spec.alpha * spec.a + spec.alpha_prime * spec.a_prime
    v_minus = spec.alpha * spec.a - spec.alpha_prime * spec.a_prime
    n_plus = norm3(v_plus)
    n_minus = norm3(v_minus)
    if n_plus < 1e-12 or n_minus < 1e-12:
        raise DegenerateDirection(
            "optimal analyzer direction undefined: a diagonal vanishes"
        )
    return Settings(b=v_plus / n_plus, b_prime=v_minus / n_minus)


def tsirelson_settings(a, a_prime) -> Settings:
    """Analyzers b along a + a', b_prime along a - a'; with sharp
    measurements of orthogonal a, a' these reach 2 sqrt(2)."""
    a = unit3(a)
    ap = unit3(a_prime)
    v_plus = a + ap
    v_minus = a - ap
    n_plus = norm3(v_plus)
    n_minus = norm3(v_minus)
    if n_plus < 1e-12 or n_minus < 1e-12:
        raise DegenerateDirection("directions are (anti)parallel")
    return Settings(b=v_plus / n_plus, b_prime=v_minus / n_minus)


def sharp_chsh_reference() -> tuple[CorrelationSet, float]:
    """The classic maximal-violation configuration: sharp measurements
    along z and x against analyzers on the bisectors; CHSH = 2 sqrt(2)."""
    a = np.array([0.0, 0.0, 1.0])
    ap = np.array([1.0, 0.0, 0.0])
    corr = sharp_correlations(a, ap, tsirelson_settings(a, ap))
    return corr, chsh_value(corr)


def no_signalling_probe(spec: JointSpec, settings: Settings) -> tuple[float, float]:
    """p(A_J = A'_J) computed from the full two-party distribution under
    analyzer b and under analyzer b_prime.

    The two numbers agree identically because observer 2's effects sum to
    the identity; any difference would be a usable signal.
    """
    povm1 = general_joint_povm(spec)
    state = singlet()
    out = []
    for direction in (settings.b, settings.b_prime):
        probs = two_party_probabilities(povm1, projective_povm(direction), state)
        p_same = 0.0
        for i, label in enumerate(povm1.labels):
            va, vap = outcome_values(label)
            if va == vap:
                p_same += float(probs[i].sum())
        out.append(p_same)
    return (out[0], out[1])
