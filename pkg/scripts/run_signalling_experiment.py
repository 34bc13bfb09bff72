#!/usr/bin/env python3
"""Monte Carlo attempt to signal through the choice of analyzer.

Observer 1 performs the optimal symmetric joint measurement at 90
degrees; observer 2 measures along one of the two optimal analyzers.  The
rate at which observer 1 sees equal outcomes is analytically independent
of that choice, so the two-proportion z-scores should look like draws
from a standard normal."""

import argparse
import math

from spinjoint import (
    JointSpec,
    SeededStream,
    optimal_settings,
    signalling_experiment,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000)
    parser.add_argument("--seeds", type=int, nargs="+", default=list(range(5)))
    args = parser.parse_args()

    spec = JointSpec.from_angle(math.pi / 2, 1 / math.sqrt(2), 1 / math.sqrt(2))
    settings = optimal_settings(spec)
    print("seed,p_same_b,p_same_b_prime,z_score")
    for seed in args.seeds:
        result = signalling_experiment(spec, settings, args.n, SeededStream(seed))
        print(
            f"{seed},{result.stats_b.mean:.6f},"
            f"{result.stats_b_prime.mean:.6f},{result.z_score:+.3f}"
        )


if __name__ == "__main__":
    main()
