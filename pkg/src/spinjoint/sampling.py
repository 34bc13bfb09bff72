"""Monte Carlo outcome sampling.

Draws come from a counter-addressable Philox stream keyed by
(seed, stream_id): the i-th uniform of a stream is a pure function of
(seed, stream_id, i).  Trial ranges can therefore be evaluated in chunks
or fanned out across workers and the merged tallies are identical to a
serial run, for any partition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .correlations import Settings, singlet
from .joint import JointSpec, general_joint_povm, outcome_values
from .povm import Povm, outcome_probabilities, projective_povm, two_party_probabilities
from .qubit import QubitState, unit3

GENERATOR_NAME = "Philox"
_WORDS_PER_COUNTER = 4  # Philox emits 4 64-bit words per counter step


@dataclass(frozen=True)
class SeededStream:
    """Reproducible random stream addressed by (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def uniforms(self, offset: int, count: int) -> np.ndarray:
        """Doubles [offset, offset + count) of this stream.

        Stable under chunking: concatenating adjacent blocks reproduces a
        single larger block exactly.
        """
        if offset < 0 or count < 0:
            raise ValueError("offset and count must be nonnegative")
        key = np.random.SeedSequence(
            entropy=self.seed, spawn_key=(self.stream_id,)
        )
        bit_gen = np.random.Philox(key)
        bit_gen.advance(offset // _WORDS_PER_COUNTER)
        skip = offset % _WORDS_PER_COUNTER
        vals = np.random.Generator(bit_gen).random(skip + count)
        return vals[skip:]

    def metadata(self, n: int) -> dict:
        return {
            "seed": self.seed,
            "stream_id": self.stream_id,
            "n": n,
            "generator": GENERATOR_NAME,
        }


@dataclass(frozen=True)
class SampleStats:
    """Tally of labelled draws plus moments of a numeric decoding."""

    n: int
    counts: dict
    mean: float
    variance: float
    stderr: float


def sample_indices(probabilities, uniforms) -> np.ndarray:
    """Inverse-CDF lookup of outcome indices for given uniforms.

    Tiny negative probabilities are clamped at zero and the last bin is
    stretched to cover 1.0 exactly, so rounding cannot push a draw out of
    range.
    """
    p = np.maximum(np.asarray(probabilities, dtype=float), 0.0)
    cum = np.cumsum(p)
    cum[-1] = max(cum[-1], 1.0)
    idx = np.searchsorted(cum, np.asarray(uniforms), side="right")
    return np.minimum(idx, len(p) - 1)


def _stats_from_values(labels, tallies, values) -> SampleStats:
    n = int(sum(tallies))
    counts = {label: int(c) for label, c in zip(labels, tallies)}
    vals = np.asarray(values, dtype=float)
    weights = np.asarray(tallies, dtype=float)
    mean = float(weights @ vals) / n
    variance = float(weights @ (vals - mean) ** 2) / n
    return SampleStats(
        n=n,
        counts=counts,
        mean=mean,
        variance=variance,
        stderr=math.sqrt(variance / n),
    )


def _default_value(label: str) -> float:
    # first outcome slot read as +-1
    return 1.0 if label[0] == "+" else -1.0


def sample_povm(
    povm: Povm,
    state: QubitState,
    n: int,
    stream: SeededStream,
    value_of=None,
    offset: int = 0,
) -> SampleStats:
    """Draw n outcome labels via inverse CDF on the Born probabilities.

    ``value_of`` maps labels to the numeric value whose moments are
    reported (default: the first label character as +-1).  ``offset``
    selects where in the stream the draws start, so several collections
    can share one stream without overlap.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    value_of = value_of or _default_value
    probs = outcome_probabilities(povm, state)
    labels = [label for label, _ in probs]
    idx = sample_indices([p for _, p in probs], stream.uniforms(offset, n))
    tallies = np.bincount(idx, minlength=len(labels))
    return _stats_from_values(labels, tallies, [value_of(l) for l in labels])


@dataclass(frozen=True)
class TwoPartyTally:
    """Joint tally over (observer-1 label, observer-2 result +-1)."""

    n: int
    counts: dict

    def correlation(self, value_of=None) -> SampleStats:
        """Moments of value_of(label1) * b over the tally (default:
        first-slot +-1 decoding, i.e. the empirical E(A_J, B))."""
        value_of = value_of or _default_value
        labels = list(self.counts.keys())
        tallies = [self.counts[k] for k in labels]
        values = [value_of(l1) * b for l1, b in labels]
        return _stats_from_values(labels, tallies, values)


def sample_two_party(
    povm1: Povm,
    setting,
    n: int,
    stream: SeededStream,
    offset: int = 0,
) -> TwoPartyTally:
    """Sample n singlet trials: povm1 on qubit 1, a sharp analyzer along
    ``setting`` on qubit 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    povm2 = projective_povm(unit3(setting))
    probs = two_party_probabilities(povm1, povm2, singlet())
    flat = probs.reshape(-1)
    idx = sample_indices(flat, stream.uniforms(offset, n))
    tallies = np.bincount(idx, minlength=flat.size)
    keys = [
        (l1, 1 if l2 == "+" else -1)
        for l1 in povm1.labels
        for l2 in povm2.labels
    ]
    counts = {k: int(c) for k, c in zip(keys, tallies)}
    return TwoPartyTally(n=n, counts=counts)


@dataclass(frozen=True)
class SignallingResult:
    """Empirical p(A_J = A'_J) under each analyzer plus the two-proportion
    z-score of their difference."""

    stats_b: SampleStats
    stats_b_prime: SampleStats
    z_score: float


def signalling_experiment(
    spec: JointSpec,
    settings: Settings,
    n: int,
    stream: SeededStream,
) -> SignallingResult:
    """Try to signal: n trials with observer 2 on b, n on b_prime, then
    compare observer 1's rate of equal outcomes.

    The analytic rates are identical, so the z-score is that of a true
    null; |z| staying small is the Monte Carlo no-signalling check.
    """
    povm1 = general_joint_povm(spec)
    branch_stats = []
    equal_counts = []
    for k, direction in enumerate((settings.b, settings.b_prime)):
        tally = sample_two_party(povm1, direction, n, stream, offset=k * n)
        equal = sum(
            c for (l1, _), c in tally.counts.items()
            if outcome_values(l1)[0] == outcome_values(l1)[1]
        )
        stats = _stats_from_values(
            ["equal", "unequal"], [equal, n - equal], [1.0, 0.0]
        )
        branch_stats.append(stats)
        equal_counts.append(equal)
    pooled = (equal_counts[0] + equal_counts[1]) / (2 * n)
    denom = math.sqrt(max(pooled * (1.0 - pooled) * 2.0 / n, 0.0))
    diff = branch_stats[0].mean - branch_stats[1].mean
    z = 0.0 if diff == 0.0 else (math.inf if denom == 0.0 else diff / denom)
    return SignallingResult(
        stats_b=branch_stats[0], stats_b_prime=branch_stats[1], z_score=z
    )


def _format_g(x: float) -> str:
    return f"{x:.17g}"


def tally_to_csv(stats, metadata: dict) -> str:
    """CSV export: a JSON metadata comment line, then label,count,frequency.

    Works for SampleStats and TwoPartyTally; tuple keys are joined with
    '|' ('++|+1' style).
    """
    lines = ["# " + json.dumps(metadata, sort_keys=True)]
    lines.append("label,count,frequency")
    n = stats.n
    for key, count in stats.counts.items():
        if isinstance(key, tuple):
            label = "|".join(f"{k:+d}" if isinstance(k, int) else str(k) for k in key)
        else:
            label = str(key)
        lines.append(f"{label},{count},{_format_g(count / n)}")
    return "\n".join(lines) + "\n"
