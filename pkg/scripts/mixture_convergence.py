#!/usr/bin/env python3
"""Tabulate which moment orders exist for power-law and geometric mixtures, with s_k0 values."""
import argparse

from phasemoments.exceptions import DivergentMoment
from phasemoments.moment_engine import nseries_converges, s_coefficients
from phasemoments.weights import Geometric, PowerLaw


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--exponents", type=float, nargs="+", default=[2.5, 3.0, 4.5, 6.0, 8.0])
    ap.add_argument("--ratios", type=float, nargs="+", default=[0.3, 0.9])
    args = ap.parse_args()
    kernels = [PowerLaw(a) for a in args.exponents] + [Geometric(r) for r in args.ratios]
    print("kernel".ljust(28) + "".join(f"k={k}".rjust(16) for k in range(1, args.kmax + 1)))
    for w in kernels:
        cells = []
        for k in range(1, args.kmax + 1):
            if not nseries_converges(w, k):
                cells.append("diverges")
                continue
            try:
                cells.append(f"{s_coefficients(w, k)[0]:.8g}")
            except DivergentMoment:
                cells.append("diverges")
        print(repr(w).ljust(28) + "".join(c.rjust(16) for c in cells))


if __name__ == "__main__":
    main()
