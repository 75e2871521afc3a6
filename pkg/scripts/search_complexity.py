#!/usr/bin/env python3
"""Quantum vs classical search cost over a grid of domain sizes.

For each (N, k) the table lists the optimal iteration count, the success
probability it achieves, the exact expected classical evaluation count
(N+1)/(k+1) with its N/(2k) approximation, and a seeded Monte-Carlo check.

Usage:
    python scripts/search_complexity.py [--max-n 10] [--trials 200000] [--seed 1]
"""

import argparse
import sys

import numpy as np

from spinsearch.grover import (
    SearchProblem,
    classical_approx_evaluations,
    classical_expected_evaluations,
    grover_general,
    monte_carlo_evaluations,
    optimal_iterations,
    success_probability,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if args.max_n > 20:
        ap.error("--max-n must be <= 20")

    rng = np.random.default_rng(args.seed)
    print(f"{'N':>6s} {'k':>5s} {'m_opt':>5s} {'p_success':>10s} "
          f"{'exact':>9s} {'approx':>9s} {'monte_carlo':>12s} {'stderr':>8s}")
    for n_qubits in range(2, args.max_n + 1):
        size = 2**n_qubits
        for k in sorted({1, size // 4, size // 2}):
            problem = SearchProblem(n_qubits, frozenset(range(k)))
            m = optimal_iterations(problem)
            p = success_probability(problem, grover_general(problem, m))
            exact = classical_expected_evaluations(size, k)
            approx = classical_approx_evaluations(size, k)
            mc, stderr = monte_carlo_evaluations(size, k, args.trials, rng)
            print(f"{size:>6d} {k:>5d} {m:>5d} {p:>10.6f} "
                  f"{exact:>9.4f} {approx:>9.4f} {mc:>12.4f} {stderr:>8.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
