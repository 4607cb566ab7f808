"""``phq``: moment tables, margins, densities, quantization and verification.

Exit codes: 0 success, 1 failed verification, 2 bad flags or input, 3 divergent moment.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import jsonio, suites
from .exceptions import DivergentMoment, InvalidWeights, LeakageWarning, PreconditionViolated
from .fock_space import Axis, FockVector, basis_state
from .hermite_quad import Grid1D, default_grid
from .moment_engine import (mixture_moment_operator, moment_operator, moment_polynomial,
                            s_coefficients)
from .phase_density import density, margin, mixture_margin
from .quantizer import RealPolynomial, quantize_complex, quantize_sum, quantize_x, quantize_y, result_to_json
from .weights import parse_weights

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DIVERGENT = 3


class InputError(Exception):
    pass


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weights(spec: str):
    try:
        return parse_weights(spec)
    except (ValueError, InvalidWeights) as exc:
        raise InputError(f"bad weight spec {spec!r}: {exc}") from exc


def _state(spec: str) -> FockVector:
    kind, _, arg = spec.partition(":")
    if kind == "basis":
        try:
            return basis_state(int(arg))
        except ValueError as exc:
            raise InputError(f"bad basis state {spec!r}") from exc
    if kind == "coeffs":
        try:
            with open(arg, encoding="utf-8") as fh:
                data = json.load(fh)
            if isinstance(data, dict):
                data = data["coeffs"]
            arr = np.asarray(data, dtype=float)
            coeffs = arr[:, 0] + 1j * arr[:, 1] if arr.ndim == 2 else arr
            state = FockVector(coeffs)
        except (OSError, ValueError, KeyError, IndexError, TypeError) as exc:
            raise InputError(f"invalid state file {arg!r}: {exc}") from exc
        if state.norm2 == 0:
            raise InputError(f"state in {arg!r} is zero")
        return state
    raise InputError(f"state spec must be basis:N or coeffs:FILE, got {spec!r}")


def _grid(args) -> Grid1D:
    base = default_grid()
    halfwidth = args.halfwidth if args.halfwidth is not None else -base.start
    points = args.points if args.points is not None else base.count
    if points < 2 or points & (points - 1):
        raise InputError(f"--points must be a power of two, got {points}")
    return Grid1D.symmetric(halfwidth, points)


def _poly(text: str) -> RealPolynomial:
    try:
        return RealPolynomial(tuple(float(x) for x in text.split(",")))
    except ValueError as exc:
        raise InputError(f"bad polynomial {text!r}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------

def cmd_moments(args) -> int:
    axis = Axis(args.axis)
    if args.weights is None:
        poly = moment_polynomial(args.n, args.k)
        payload = poly.to_json()
        op = moment_operator(args.n, args.k, axis, args.dim)
    else:
        kernel = _weights(args.weights)
        coeffs = s_coefficients(kernel, args.k, formal=args.formal)
        op = mixture_moment_operator(kernel, args.k, axis, args.dim, formal=args.formal)
        payload = {"kernel": str(kernel), "k": args.k, "coeffs": [float(c) for c in coeffs],
                   "provenance": "closed-form"}
        if op.note:
            payload["note"] = op.note
    payload["axis"] = axis.value
    payload["operator"] = op.to_json()
    _emit(jsonio.dumps(payload), args.out)
    return 0


def _report_margin(m, label: str):
    print(f"{label} total_mass={m.total_mass:.17g} leakage={m.leakage:.3e}")
    print(f"{label} first_moment={m.moment(1):.17g} second_moment={m.moment(2):.17g}")


def cmd_margin(args) -> int:
    state = _state(args.state)
    grid = _grid(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", LeakageWarning)
        if args.weights is not None:
            m = mixture_margin(state, _weights(args.weights), Axis(args.axis), grid, grid)
        else:
            m = margin(state, args.n, Axis(args.axis), grid, grid)
    for w in caught:
        print(f"warning: {w.message}")
    if args.out:
        m.to_csv(args.out)
    else:
        sys.stdout.write("point,value\n")
        for x, v in zip(m.grid.points, m.values):
            sys.stdout.write(f"{float(x)!r},{float(v)!r}\n")
    _report_margin(m, f"{args.axis}-margin")
    return 0


def cmd_density(args) -> int:
    state = _state(args.state)
    grid = _grid(args)
    kernel = _weights(args.weights) if args.weights else _weights(f"delta:{args.n}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", LeakageWarning)
        d = density(state, kernel, grid, grid)
    for w in caught:
        print(f"warning: {w.message}")
    if args.out:
        if args.format == "bin":
            d.to_binary(args.out)
        else:
            d.to_csv(args.out)
    print(f"density total_mass={d.total_mass:.17g} leakage={d.leakage:.3e} tail_mass={d.tail_mass:.3e}")
    return 0


def cmd_quantize(args) -> int:
    h1 = _poly(args.h)
    if args.mode == "x":
        op, tag = quantize_x(h1, args.n, args.dim)
    elif args.mode == "y":
        op, tag = quantize_y(h1, args.n, args.dim)
    else:
        if args.h2 is None:
            raise InputError(f"--mode {args.mode} needs --h2")
        h2 = _poly(args.h2)
        fn = quantize_complex if args.mode == "complex" else quantize_sum
        op, tag = fn(h1, h2, args.n, args.dim)
    _emit(jsonio.dumps(result_to_json(op, tag, args.n)), args.out)
    return 0


def cmd_verify(args) -> int:
    overrides = {}
    for item in args.tol or ():
        key, _, value = item.partition("=")
        try:
            overrides[key] = float(value)
        except ValueError as exc:
            raise InputError(f"bad tolerance override {item!r}") from exc
    try:
        report = suites.run(args.suite, seed=args.seed, tolerances=overrides)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    records = report["records"]
    groups: dict[str, list] = {}
    for r in records:
        groups.setdefault(r["check"].split("[")[0], []).append(r)
    for key in sorted(groups):
        rs = groups[key]
        worst = max(rs, key=lambda r: r["rel_err"] if key in suites.RELATIVE else r["abs_err"])
        status = "PASS" if all(r["pass"] for r in rs) else "FAIL"
        err = worst["rel_err"] if key in suites.RELATIVE else worst["abs_err"]
        print(f"{status} {key}: {len(rs)} checks, worst error {err:.3e} (tol {worst['tolerance']:.1e})")
    for row in report["tables"].get("lemma-q2k", []):
        coeffs = " ".join(f"{c:.12g}" for c in row["coeffs"])
        print(f"  <n|Q^{2 * row['k']}|n> fit over n={row['n_range']}: [{coeffs}] residual {row['residual']:.2e}")
    for r in records:
        if not r["pass"]:
            print("FAILED " + jsonio.dumps(r, indent=0).strip())
    if args.out:
        jsonio.dump(report, args.out)
    return 0 if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="moment polynomial / s-coefficients and operator matrix")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="number-state kernel level")
    src.add_argument("--weights", help="delta:n | explicit:w0,w1,... | geometric:r | powerlaw:alpha")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--axis", choices=("x", "y"), default="x")
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--formal", action="store_true",
                   help="return the formal operator even when sum n^k w_n diverges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_moments)

    def grid_flags(q):
        q.add_argument("--halfwidth", type=float, help="grid half-width (default PHQ_GRID_HALFWIDTH or 16)")
        q.add_argument("--points", type=int, help="grid points, power of two (default PHQ_GRID_POINTS or 1024)")

    p = sub.add_parser("margin", help="Cartesian margin as CSV (point,value)")
    p.add_argument("--state", required=True, help="basis:N or coeffs:FILE.json")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--n", type=int, default=0)
    src.add_argument("--weights")
    p.add_argument("--axis", choices=("x", "y"), default="x")
    grid_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_margin)

    p = sub.add_parser("density", help="phase-space density as CSV (q,p,value) or float64 binary")
    p.add_argument("--state", required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--n", type=int, default=0)
    src.add_argument("--weights")
    grid_flags(p)
    p.add_argument("--format", choices=("csv", "bin"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("quantize", help="operator integral of a polynomial classical variable")
    p.add_argument("--mode", choices=("x", "y", "complex", "sum"), default="x")
    p.add_argument("--h", required=True, help="ascending coefficients a0,a1,...")
    p.add_argument("--h2", help="second polynomial for complex/sum modes")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("verify", help="run verification suites and write a JSON report")
    p.add_argument("--suite", choices=suites.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=20240501)
    p.add_argument("--tol", action="append", metavar="CHECK=VALUE", help="override a tolerance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergentMoment as exc:
        print(f"error: {exc}; the moment operator requires sum_n n^k w_n < infinity", file=sys.stderr)
        return EXIT_DIVERGENT
    except (InputError, InvalidWeights, PreconditionViolated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
