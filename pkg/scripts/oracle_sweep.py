#!/usr/bin/env python3
"""Closed-form vs quadrature moments over random states; prints worst relative error per (n, k)."""
import argparse
import time

import numpy as np

from phasemoments.fock_space import Axis, random_state
from phasemoments.moment_engine import moment_operator
from phasemoments.phase_density import margin


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--states", type=int, default=20)
    ap.add_argument("--span", type=int, default=16)
    ap.add_argument("--levels", type=int, nargs="+", default=[0, 1, 2, 3, 5, 8])
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--seed", type=int, default=20240501)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    states = [random_state(rng, args.span) for _ in range(args.states)]
    dim = args.span + args.kmax + 8
    worst = np.zeros((len(args.levels), args.kmax))
    t0 = time.perf_counter()
    for state in states:
        padded = state.padded(dim)
        for i, n in enumerate(args.levels):
            for axis in Axis:
                marg = margin(state, n, axis)
                for k in range(1, args.kmax + 1):
                    exact = moment_operator(n, k, axis, dim).expectation(padded).real
                    err = abs(marg.moment(k) - exact) / (1 + abs(exact))
                    worst[i, k - 1] = max(worst[i, k - 1], err)
    print("n \\ k " + "".join(f"{k:>10d}" for k in range(1, args.kmax + 1)))
    for i, n in enumerate(args.levels):
        print(f"{n:<6d}" + "".join(f"{e:10.1e}" for e in worst[i]))
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
