#!/usr/bin/env python3
"""Print the moment polynomials p_k(t) = <n|(t - Q)^k|n> for a range of levels and orders."""
import argparse

from phasemoments.moment_engine import moment_polynomial


def fmt(coeffs):
    terms = []
    for l in range(len(coeffs) - 1, -1, -1):
        c = coeffs[l]
        if c == 0:
            continue
        power = "" if l == 0 else ("t" if l == 1 else f"t^{l}")
        num = "" if (c == 1 and l) else f"{c:.10g}"
        terms.append(num + power)
    return " + ".join(terms)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--kmax", type=int, default=6)
    args = ap.parse_args()
    for n in range(args.nmax + 1):
        for k in range(1, args.kmax + 1):
            print(f"n={n} k={k}: {fmt(moment_polynomial(n, k).coeffs)}")


if __name__ == "__main__":
    main()
