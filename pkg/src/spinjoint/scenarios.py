"""Applied studies: cloning-based joint measurement and a BB84 eavesdropper.

A universal cloner shrinks every Bloch vector by eta <= 2/3, so measuring
one observable on each clone yields a joint measurement with
alpha = alpha' = eta.  That never reaches the admissible optimum
1/sqrt(1 + |sin theta|) >= 1/sqrt(2) > 2/3, for any angle.

The eavesdropper study measures both candidate polarization bases of a
BB84-style link with one optimal symmetric joint measurement and keeps
the outcome slot for whichever basis is announced.  Physical polarization
bases at 45 degrees are orthogonal on the Bloch sphere, so the faithful
angle is theta = pi/2; theta is exposed as a parameter (pi/4 makes a
useful sensitivity study).  Success probability on an eigenstate is
(1 + alpha)/2 per trial, strictly below 1 for theta > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EtaOutOfRange
from .joint import JointSpec, max_symmetric_alpha, optimal_joint_povm
from .povm import outcome_probabilities
from .qubit import state_from_bloch
from .sampling import SeededStream, sample_indices

CLONER_ETA_MAX = 2.0 / 3.0


@dataclass(frozen=True)
class CloningScenario:
    """Sharpness achieved through cloning versus the admissible optimum."""

    eta: float
    theta: float
    alpha_clone: float
    alpha_optimal: float
    gap: float


def cloning_joint(theta: float, eta: float = CLONER_ETA_MAX) -> CloningScenario:
    """Compare the cloning route (alpha = eta) with the optimal symmetric
    joint measurement at angle theta.  gap > 0 always: cloning is never
    optimal."""
    if not 0.0 < eta <= CLONER_ETA_MAX:
        raise EtaOutOfRange(f"eta = {eta} outside (0, {CLONER_ETA_MAX}]")
    alpha_opt = max_symmetric_alpha(theta)
    return CloningScenario(
        eta=eta,
        theta=float(theta),
        alpha_clone=eta,
        alpha_optimal=alpha_opt,
        gap=alpha_opt - eta,
    )


def min_cloning_gap(
    eta: float = CLONER_ETA_MAX, num_points: int = 181
) -> CloningScenario:
    """Grid scan of the gap over theta in [0, pi]; returns the worst case
    (attained at theta = pi/2, where the bound is strictest)."""
    scenarios = [
        cloning_joint(i * math.pi / (num_points - 1), eta)
        for i in range(num_points)
    ]
    return min(scenarios, key=lambda s: s.gap)


@dataclass(frozen=True)
class Bb84EveReport:
    theta: float
    alpha: float
    guess_success_prob_after_announcement: float
    empirical_success: float
    n_trials: int


def bb84_eve(
    n: int, stream: SeededStream, theta: float = math.pi / 2
) -> Bb84EveReport:
    """Joint-measurement eavesdropper over 4n trials.

    Each trial prepares a uniformly random basis/bit eigenstate, samples
    the optimal symmetric four-outcome measurement, and reads off the
    outcome slot of the (later announced) basis.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = JointSpec.from_angle(theta, *(max_symmetric_alpha(theta),) * 2)
    povm = optimal_joint_povm(spec)
    trials = 4 * n

    basis = stream.uniforms(0, trials) < 0.5  # False: a-basis, True: a'-basis
    bits = stream.uniforms(trials, trials) < 0.5  # False: +, True: -
    outcome_u = stream.uniforms(2 * trials, trials)

    successes = 0
    for use_prime in (False, True):
        direction = spec.a_prime if use_prime else spec.a
        slot = 1 if use_prime else 0
        for minus in (False, True):
            mask = (basis == use_prime) & (bits == minus)
            count = int(mask.sum())
            if count == 0:
                continue
            state = state_from_bloch(-direction if minus else direction)
            probs = [p for _, p in outcome_probabilities(povm, state)]
            idx = sample_indices(probs, outcome_u[mask])
            signs = np.array(
                [1 if label[slot] == "+" else -1 for label in povm.labels]
            )
            wanted = -1 if minus else 1
            successes += int(np.sum(signs[idx] == wanted))

    alpha = spec.alpha
    return Bb84EveReport(
        theta=float(theta),
        alpha=alpha,
        guess_success_prob_after_announcement=(1.0 + alpha) / 2.0,
        empirical_success=successes / trials,
        n_trials=trials,
    )
