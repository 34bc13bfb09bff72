"""Joint unsharp measurement of spin along two directions.

A joint measurement returns one +-1 value for each of the unit directions
a and a_prime per shot.  Requiring the constructed averages to track the
ideal expectations with fixed proportionality factors alpha, alpha_prime
for every state confines the sharpness to the region

    |alpha a + alpha' a'| + |alpha a - alpha' a'| <= 2,

equivalently  alpha^2 + alpha'^2 - alpha^2 alpha'^2 (a.a')^2 <= 1.
Geometrically: the diagonals of the parallelogram with sides alpha a and
alpha' a' must not sum to more than 2.

This module builds the four-outcome measurement families realizing such
joint measurements (the boundary-saturating one and the general
admissible one), their marginals and variances, and the equivalent
realization that measures sharply along one of two directions c, c'
chosen by a classical coin of bias p.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundViolated,
    DegenerateDirection,
    NotSaturating,
)
from .povm import Effect, Povm, projective_povm
from .qubit import QubitState, norm3, normalize, unit3

# One tolerance shared by every admissibility predicate (diagonal sum,
# product form, effect positivity) so they cannot disagree on a sample.
ADMISSIBILITY_TOL = 1e-10
SATURATION_TOL = 1e-10

# Outcome alphabet, first slot tracks a, second slot tracks a_prime.
OUTCOME_LABELS = ("++", "--", "+-", "-+")


def outcome_values(label: str) -> tuple[int, int]:
    """Decode a two-character outcome label into (+-1, +-1)."""
    if len(label) != 2 or any(ch not in "+-" for ch in label):
        raise ValueError(f"not a joint-outcome label: {label!r}")
    return (1 if label[0] == "+" else -1, 1 if label[1] == "+" else -1)


@dataclass(frozen=True)
class JointSpec:
    """Parameters of a joint measurement: directions a, a_prime and
    sharpness factors alpha, alpha_prime.

    ``theta`` is always derived from a.a_prime; a caller-supplied value is
    rejected unless consistent, keeping a single source of truth.
    Negative sharpness factors are permitted (the admissibility region
    only sees their moduli); they describe outcomes tracking the
    observables anti-proportionally.
    """

    a: np.ndarray
    a_prime: np.ndarray
    alpha: float
    alpha_prime: float
    theta: float | None = None

    def __post_init__(self):
        a = unit3(self.a)
        ap = unit3(self.a_prime)
        alpha = float(self.alpha)
        alpha_p = float(self.alpha_prime)
        for name, val in (("alpha", alpha), ("alpha_prime", alpha_p)):
            if not math.isfinite(val) or abs(val) > 1.0 + 1e-12:
                raise ValueError(f"|{name}| must be <= 1, got {val}")
        cos_t = float(np.clip(a @ ap, -1.0, 1.0))
        derived = math.acos(cos_t)
        if self.theta is not None:
            given = float(self.theta)
            if not 0.0 <= given <= math.pi or abs(math.cos(given) - cos_t) > 1e-12:
                raise ValueError(
                    f"theta = {given} inconsistent with a.a_prime = {cos_t}"
                )
        a.setflags(write=False)
        ap.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_prime", ap)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "alpha_prime", alpha_p)
        object.__setattr__(self, "theta", derived)

    @property
    def cos_theta(self) -> float:
        return float(self.a @ self.a_prime)

    @classmethod
    def from_angle(cls, theta: float, alpha: float, alpha_prime: float, a=(0, 0, 1)):
        """Place a_prime at angle theta from a.

        With the default a along z the second direction lands in the
        xz-plane, at (sin theta, 0, cos theta).
        """
        a = unit3(a)
        ref = np.array([1.0, 0.0, 0.0])
        if abs(a @ ref) > 1.0 - 1e-9:
            ref = np.array([0.0, 0.0, 1.0])
        perp = normalize(ref - (ref @ a) * a)
        ap = math.cos(theta) * a + math.sin(theta) * perp
        return cls(a, ap, alpha, alpha_prime)

    @classmethod
    def optimal_symmetric(cls, a, a_prime):
        """Equal sharpness factors at their largest admissible value."""
        a = unit3(a)
        ap = unit3(a_prime)
        theta = math.acos(float(np.clip(a @ ap, -1.0, 1.0)))
        alpha = max_symmetric_alpha(theta)
        return cls(a, ap, alpha, alpha)

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": list(self.a),
                "a_prime": list(self.a_prime),
                "alpha": self.alpha,
                "alpha_prime": self.alpha_prime,
            }
        )

    @classmethod
    def from_json(cls, text: str):
        doc = json.loads(text)
        return cls(doc["a"], doc["a_prime"], doc["alpha"], doc["alpha_prime"])


@dataclass(frozen=True)
class SwitchRealization:
    """Coin-and-projector realization: measure sharply along c with
    probability p, along c_prime with probability 1 - p."""

    p: float
    c: np.ndarray
    c_prime: np.ndarray

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p = {p} is not a probability")
        c = unit3(self.c)
        cp = unit3(self.c_prime)
        c.setflags(write=False)
        cp.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_prime", cp)

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "c": list(self.c), "c_prime": list(self.c_prime)}
        )

    @classmethod
    def from_json(cls, text: str):
        doc = json.loads(text)
        return cls(doc["p"], doc["c"], doc["c_prime"])


@dataclass(frozen=True)
class VarianceReport:
    """Variances of the jointly measured +-1 outcomes next to the bare
    single-observable variances of the same state."""

    var_joint: float
    var_joint_prime: float
    var_bare: float
    var_bare_prime: float


def _diagonals(spec: JointSpec) -> tuple[np.ndarray, np.ndarray]:
    v_plus = spec.alpha * spec.a + spec.alpha_prime * spec.a_prime
    v_minus = spec.alpha * spec.a - spec.alpha_prime * spec.a_prime
    return v_plus, v_minus


def bound_lhs(spec: JointSpec) -> float:
    """|alpha a + alpha' a'| + |alpha a - alpha' a'|.

    The spec is admissible iff this is <= 2 (the parallelogram-diagonal
    criterion); equality marks the sharpest possible joint measurement.
    """
    v_plus, v_minus = _diagonals(spec)
    return norm3(v_plus) + norm3(v_minus)


def product_form_check(spec: JointSpec) -> float:
    """alpha^2 + alpha'^2 - alpha^2 alpha'^2 cos^2(theta).

    Admissible iff <= 1; algebraically equivalent to ``bound_lhs <= 2``
    (square the diagonal sum twice and cancel).
    """
    x = spec.alpha**2
    y = spec.alpha_prime**2
    c = spec.cos_theta
    return x + y - x * y * c * c


def is_admissible(spec: JointSpec, tol: float = ADMISSIBILITY_TOL) -> bool:
    return bound_lhs(spec) <= 2.0 + tol


def max_symmetric_alpha(theta: float) -> float:
    """Largest alpha = alpha_prime admissible at angle theta.

    Closed form 1/sqrt(1 + |sin theta|), the positive boundary root of
    2 alpha^2 - alpha^4 cos^2(theta) = 1.
    """
    theta = float(theta)
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise ValueError(f"theta = {theta} outside [0, pi]")
    return 1.0 / math.sqrt(1.0 + abs(math.sin(theta)))


def _four_effects(weights, vectors) -> Povm:
    effects = []
    for label, w, v in zip(OUTCOME_LABELS, weights, vectors):
        x, y, z = v
        op = 0.25 * np.array(
            [[w + z, x - 1j * y], [x + 1j * y, w - z]], dtype=complex
        )
        effects.append(Effect(label, op))
    return Povm(tuple(effects))


def optimal_joint_povm(spec: JointSpec) -> Povm:
    """Four-outcome measurement saturating the sharpness bound.

    Effects (|v+-| 1 +- v+- . sigma)/4 with v+ = alpha a + alpha' a',
    v- = alpha a - alpha' a'.  They sum to (|v+| + |v-|)/2 times the
    identity, so completeness holds exactly because the bound is
    saturated; a non-saturating spec raises NotSaturating.
    """
    v_plus, v_minus = _diagonals(spec)
    n_plus = norm3(v_plus)
    n_minus = norm3(v_minus)
    if abs(n_plus + n_minus - 2.0) > SATURATION_TOL:
        raise NotSaturating(
            f"diagonal sum {n_plus + n_minus} != 2; the saturating "
            "four-outcome family is defined only at equality"
        )
    weights = (n_plus, n_plus, n_minus, n_minus)
    vectors = (v_plus, -v_plus, v_minus, -v_minus)
    return _four_effects(weights, vectors)


def _general_weights(spec: JointSpec):
    w_plus = 1.0 + spec.alpha * spec.alpha_prime * spec.cos_theta
    w_minus = 1.0 - spec.alpha * spec.alpha_prime * spec.cos_theta
    return w_plus, w_minus


def general_joint_povm(spec: JointSpec) -> Povm:
    """Four-outcome measurement for any admissible spec.

    Effects ((1 +- alpha alpha' a.a') 1 +- v+- . sigma)/4.  Completeness
    holds identically; positivity of the constructed operators is exactly
    the admissibility bound, and an inadmissible spec raises
    BoundViolated carrying the offending eigenvalue.  At saturation this
    family coincides with ``optimal_joint_povm``.
    """
    v_plus, v_minus = _diagonals(spec)
    w_plus, w_minus = _general_weights(spec)
    weights = (w_plus, w_plus, w_minus, w_minus)
    vectors = (v_plus, -v_plus, v_minus, -v_minus)
    povm = _four_effects(weights, vectors)
    min_eig = min(e.min_eigenvalue() for e in povm.effects)
    if min_eig < -ADMISSIBILITY_TOL:
        raise BoundViolated(
            f"effect eigenvalue {min_eig} < 0: sharpness bound exceeded "
            f"(diagonal sum {bound_lhs(spec)} > 2)",
            min_eigenvalue=min_eig,
        )
    return povm


def admissibility_scan(a, a_prime, alpha, alpha_prime):
    """Vectorized evaluation of the three admissibility quantities.

    For N candidate parameter sets (rows of unit vectors ``a`` and
    ``a_prime``, arrays ``alpha``, ``alpha_prime``) returns three aligned
    arrays: the diagonal sum |alpha a + alpha' a'| + |alpha a - alpha' a'|
    (admissible iff <= 2), the product form (<= 1), and the smallest
    effect eigenvalue of the general four-outcome family (>= 0).  Values
    match the scalar functions to rounding.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    ap = np.atleast_2d(np.asarray(a_prime, dtype=float))
    al = np.atleast_1d(np.asarray(alpha, dtype=float))
    alp = np.atleast_1d(np.asarray(alpha_prime, dtype=float))
    v_plus = al[:, None] * a + alp[:, None] * ap
    v_minus = al[:, None] * a - alp[:, None] * ap
    n_plus = np.linalg.norm(v_plus, axis=1)
    n_minus = np.linalg.norm(v_minus, axis=1)
    cos_t = np.sum(a * ap, axis=1)
    diag_sum = n_plus + n_minus
    pform = al**2 + alp**2 - (al * alp * cos_t) ** 2
    w_plus = 1.0 + al * alp * cos_t
    w_minus = 1.0 - al * alp * cos_t
    min_eig = 0.25 * np.minimum(w_plus - n_plus, w_minus - n_minus)
    return diag_sum, pform, min_eig


def general_effect_min_eigenvalues(spec: JointSpec) -> tuple[float, float, float, float]:
    """Smallest eigenvalue of each effect of the general family, in
    OUTCOME_LABELS order, from the closed form (w -+ |v|)/4."""
    v_plus, v_minus = _diagonals(spec)
    w_plus, w_minus = _general_weights(spec)
    eig_sum = 0.25 * (w_plus - norm3(v_plus))
    eig_diff = 0.25 * (w_minus - norm3(v_minus))
    return (eig_sum, eig_sum, eig_diff, eig_diff)


def require_admissible(spec: JointSpec) -> None:
    """Raise BoundViolated (with the offending eigenvalue) for an
    inadmissible spec; cheap closed-form check."""
    min_eig = min(general_effect_min_eigenvalues(spec))
    if min_eig < -ADMISSIBILITY_TOL:
        raise BoundViolated(
            f"effect eigenvalue {min_eig} < 0: sharpness bound exceeded "
            f"(diagonal sum {bound_lhs(spec)} > 2)",
            min_eigenvalue=min_eig,
        )


def joint_variances(spec: JointSpec, state: QubitState) -> VarianceReport:
    """Variances of the +-1 joint outcomes: 1 - alpha^2 <a.sigma>^2.

    The identity var_joint = (1 - alpha^2) + alpha^2 var_bare separates
    the smearing cost of joint measurement from the intrinsic quantum
    variance.
    """
    m = state.bloch_vector
    ea = float(spec.a @ m)
    eap = float(spec.a_prime @ m)
    return VarianceReport(
        var_joint=1.0 - spec.alpha**2 * ea**2,
        var_joint_prime=1.0 - spec.alpha_prime**2 * eap**2,
        var_bare=1.0 - ea**2,
        var_bare_prime=1.0 - eap**2,
    )


def switch_realization(spec: JointSpec) -> SwitchRealization:
    """Coin bias and sharp directions reproducing the saturating family.

    p = |alpha a + alpha' a'| / 2, c and c_prime the normalized diagonal
    directions.  Defined only at saturation; vanishing diagonals (e.g.
    alpha = alpha' with a = a') raise DegenerateDirection.
    """
    v_plus, v_minus = _diagonals(spec)
    n_plus = norm3(v_plus)
    n_minus = norm3(v_minus)
    if abs(n_plus + n_minus - 2.0) > SATURATION_TOL:
        raise NotSaturating(
            f"diagonal sum {n_plus + n_minus} != 2; the switch realization "
            "exists only at equality"
        )
    if n_plus < 1e-12 or n_minus < 1e-12:
        raise DegenerateDirection("a diagonal of the parallelogram vanishes")
    return SwitchRealization(
        p=0.5 * n_plus, c=v_plus / n_plus, c_prime=v_minus / n_minus
    )


def switch_povm(realization: SwitchRealization) -> Povm:
    """Assemble the four-outcome measurement that the switch performs.

    The sharp measurement along c is relabelled + -> ++, - -> -- and
    mixed with weight p; the one along c_prime is relabelled + -> +-,
    - -> -+ with weight 1 - p.
    """
    p = realization.p
    proj_c = projective_povm(realization.c)
    proj_cp = projective_povm(realization.c_prime)
    effects = (
        Effect("++", p * proj_c.effect("+").op),
        Effect("--", p * proj_c.effect("-").op),
        Effect("+-", (1.0 - p) * proj_cp.effect("+").op),
        Effect("-+", (1.0 - p) * proj_cp.effect("-").op),
    )
    return Povm(effects)
