"""Shared random generators for the test suite.

Saturating specs are built from the exact boundary parametrization: for a
fixed ratio r = alpha'/alpha the diagonal sum is linear in alpha, so
alpha = 2 / (|a + r a'| + |a - r a'|) lands on the boundary to rounding.
"""

import numpy as np

from spinjoint import JointSpec, state_from_bloch


def random_unit(rng):
    while True:
        v = rng.normal(size=3)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return v / n


def random_direction_pair(rng, min_sin=1e-3):
    while True:
        a = random_unit(rng)
        ap = random_unit(rng)
        if np.linalg.norm(np.cross(a, ap)) >= min_sin:
            return a, ap


def boundary_alphas(a, ap, ratio):
    g = np.linalg.norm(a + ratio * ap) + np.linalg.norm(a - ratio * ap)
    alpha = 2.0 / g
    return alpha, ratio * alpha


def random_saturating_spec(rng, min_sin=1e-3):
    a, ap = random_direction_pair(rng, min_sin)
    ratio = rng.uniform(0.1, 1.0)
    if rng.random() < 0.5:
        ratio = 1.0 / ratio
    alpha, alpha_p = boundary_alphas(a, ap, ratio)
    return JointSpec(a, ap, alpha, alpha_p)


def random_admissible_spec(rng, min_sin=1e-3, min_scale=0.05, max_scale=1.0):
    spec = random_saturating_spec(rng, min_sin)
    s = rng.uniform(min_scale, max_scale)
    return JointSpec(spec.a, spec.a_prime, s * spec.alpha, s * spec.alpha_prime)


def random_bloch_in_ball(rng):
    return random_unit(rng) * rng.random() ** (1.0 / 3.0)


def random_state(rng):
    return state_from_bloch(random_bloch_in_ball(rng))


def random_pure_state(rng):
    return state_from_bloch(random_unit(rng))
