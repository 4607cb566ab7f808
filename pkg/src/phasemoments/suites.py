"""Verification suites behind ``phq verify``.

Every check yields one record ``{check, lhs, rhs, abs_err, rel_err, tolerance, pass}``
with ``rel_err = abs_err / (1 + |rhs|)``. A check is either absolute or
relative; ``pass`` compares the matching error with ``tolerance``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .fock_space import (Axis, basis_state, build_ladder, build_number, build_qp, q_moment,
                         random_state)
from .hermite_quad import Grid1D, default_grid
from .moment_engine import (mixture_moment_operator, moment_operator, moment_polynomial,
                            nseries_converges, q2k_polynomial_check, s_coefficients)
from .phase_density import density, margin, mixture_margin
from .quantizer import RealPolynomial, quantize_complex, quantize_sum
from .verify_oracle import ladder_expectation
from .weights import Explicit, Geometric, PowerLaw, delta

SUITES = ("identities", "oracle", "lemma-q2k", "mixtures")

TOLERANCES = {
    "commutator": 1e-12,
    "numberop": 1e-12,
    "ladder-ccr": 1e-12,
    "number-factorization": 1e-12,
    "second-q-moment": 1e-12,
    "closed-form-moments": 1e-12,
    "qp-diagonal-symmetry": 1e-12,
    "parity-positivity": 0.0,
    "quantize-sum-number": 1e-10,
    "quantize-complex-ladder": 1e-12,
    "ladder-oracle": 1e-10,
    "gaussian-margin": 1e-8,
    "moment-theorem": 1e-7,
    "density-vs-margin": 1e-5,
    "density-normalization": 1e-6,
    "q2k-residual": 1e-8,
    "q2k-linear-fit": 1e-12,
    "mixture-half-half": 1e-12,
    "nseries-verdict": 0.0,
    "single-weight-reduction": 1e-12,
    "mixture-oracle": 1e-7,
    "mixture-additivity": 1e-12,
}

RELATIVE = {"moment-theorem", "mixture-oracle", "q2k-residual", "ladder-oracle"}

ORACLE_LEVELS = (0, 1, 2, 3, 5, 8)
ORACLE_ORDERS = range(1, 7)
ORACLE_STATES = 20
ORACLE_SPAN = 16
DENSITY_GRID = Grid1D.symmetric(16.0, 256)


@dataclass
class Recorder:
    tolerances: dict
    records: list

    def add(self, key: str, label: str, lhs, rhs, abs_err=None):
        lhs = float(lhs)
        rhs = float(rhs)
        err = abs(lhs - rhs) if abs_err is None else float(abs_err)
        rel = err / (1.0 + abs(rhs))
        tol = self.tolerances[key]
        ok = (rel if key in RELATIVE else err) <= tol
        self.records.append({"check": f"{key}[{label}]", "lhs": lhs, "rhs": rhs, "abs_err": err,
                             "rel_err": rel, "tolerance": tol, "pass": bool(ok)})

    def add_matrix(self, key: str, label: str, got: np.ndarray, want: np.ndarray):
        err = float(np.max(np.abs(got - want))) if got.size else 0.0
        self.add(key, label, np.max(np.abs(got)), np.max(np.abs(want)), err)


def _identities(rec: Recorder):
    for dim in (8, 16, 32):
        q, p = build_qp(dim)
        comm = (q @ p - p @ q).entries
        want = 1j * np.eye(dim)
        want[-1, -1] = 1j * (1 - dim)
        rec.add_matrix("commutator", f"dim={dim}", comm, want)
        half = (0.5 * (q @ q + p @ p)).entries[: dim - 2, : dim - 2]
        rec.add_matrix("numberop", f"dim={dim}", half,
                       (build_number(dim) + 0.5).entries[: dim - 2, : dim - 2])
        up, down = build_ladder(dim)
        ccr = (down @ up - up @ down).entries[: dim - 1, : dim - 1]
        rec.add_matrix("ladder-ccr", f"dim={dim}", ccr, np.eye(dim - 1))
        rec.add_matrix("number-factorization", f"dim={dim}", (up @ down).entries, build_number(dim).entries)
    errs = [abs(q_moment(n, 2) - (n + 0.5)) for n in range(51)]
    rec.add("second-q-moment", "n<=50", max(errs), 0.0, max(errs))
    worst = 0.0
    for n in range(51):
        c1 = moment_polynomial(n, 1).coeffs
        c2 = moment_polynomial(n, 2).coeffs
        worst = max(worst, np.max(np.abs(c1 - [0, 1])), np.max(np.abs(c2 - [n + 0.5, 0, 1])))
    rec.add("closed-form-moments", "p1,p2 n<=50", worst, 0.0, worst)
    worst = 0.0
    for n in range(17):
        for m in range(13):
            dim = n + m + 1
            q, p = build_qp(max(dim, 2))
            qm = (q ** m).entries[n, n]
            pm = (p ** m).entries[n, n]
            worst = max(worst, abs(qm - pm))
    rec.add("qp-diagonal-symmetry", "m<=12,n<=16", worst, 0.0, worst)
    bad = 0
    for n in range(17):
        for k in range(1, 9):
            c = moment_polynomial(n, k).coeffs
            for l in range(k + 1):
                if (k - l) % 2 and c[l] != 0:
                    bad += 1
                if (k - l) % 2 == 0 and not c[l] > 0:
                    bad += 1
            # lowest surviving coefficient (t^0 for even k, t^1 for odd k) separates p_k(Q) from Q^k
            if k >= 2 and not c[k % 2] > 0:
                bad += 1
    rec.add("parity-positivity", "n<=16,k<=8", bad, 0, bad)
    half_sq = RealPolynomial((0.0, 0.0, 0.5))
    dim = 32
    for n in range(9):
        op, _ = quantize_sum(half_sq, half_sq, n, dim)
        size = op.exact_rows
        rec.add_matrix("quantize-sum-number", f"n={n}", op.trusted(),
                       (build_number(dim) + (n + 1.0)).entries[:size, :size])
        up, down = build_ladder(dim)
        plus, _ = quantize_complex(RealPolynomial((0, 1 / sqrt(2))), RealPolynomial((0, 1 / sqrt(2))), n, dim)
        minus, _ = quantize_complex(RealPolynomial((0, 1 / sqrt(2))), RealPolynomial((0, -1 / sqrt(2))), n, dim)
        rec.add_matrix("quantize-complex-ladder", f"x+iy,n={n}", plus.entries, down.entries)
        rec.add_matrix("quantize-complex-ladder", f"x-iy,n={n}", minus.entries, up.entries)
    for n in range(17):
        for m in range(13):
            rec.add("ladder-oracle", f"n={n},m={m}", ladder_expectation(n, "Q" * m).real, q_moment(n, m))


def _oracle(rec: Recorder, seed: int):
    grid = default_grid()
    vac = basis_state(0)
    gauss = np.exp(-grid.points ** 2 / 2) / sqrt(2 * np.pi)
    for axis in Axis:
        m = margin(vac, 0, axis, grid)
        err = float(np.max(np.abs(m.values - gauss)))
        rec.add("gaussian-margin", f"{axis.value}", err, 0.0, err)
    rng = np.random.default_rng(seed)
    dim = 32
    for s in range(ORACLE_STATES):
        state = random_state(rng, ORACLE_SPAN)
        padded = state.padded(dim)
        for n in ORACLE_LEVELS:
            dens = density(state, delta(n), DENSITY_GRID, DENSITY_GRID)
            rec.add("density-normalization", f"s={s},n={n}", dens.total_mass, dens.expected_mass)
            for axis in Axis:
                marg = margin(state, n, axis, grid)
                proj = dens.projection(axis)
                for k in ORACLE_ORDERS:
                    exact = moment_operator(n, k, axis, dim).expectation(padded).real
                    quad = marg.moment(k)
                    rec.add("moment-theorem", f"s={s},n={n},k={k},{axis.value}", quad, exact)
                    rec.add("density-vs-margin", f"s={s},n={n},k={k},{axis.value}", proj.moment(k), quad)


def _lemma(rec: Recorder, table: list):
    for k in range(1, 6):
        coeffs, resid = q2k_polynomial_check(k, (k, k + 10))
        table.append({"k": k, "n_range": [k, k + 10], "coeffs": [float(c) for c in coeffs], "residual": resid})
        rec.add("q2k-residual", f"k={k}", resid, 0.0, resid)
    coeffs, _ = q2k_polynomial_check(1, (1, 11))
    rec.add_matrix("q2k-linear-fit", "k=1", np.asarray(coeffs), np.array([1.0, 0.5]))


def _mixtures(rec: Recorder, seed: int):
    dim = 16
    q, p = build_qp(dim)
    half = Explicit.from_list([0.5, 0.5])
    op = mixture_moment_operator(half, 2, Axis.X, dim)
    size = op.exact_rows
    rec.add_matrix("mixture-half-half", "Q^2+I", op.trusted(), (q @ q + 1.0).entries[:size, :size])
    for k in range(1, 6):
        rec.add("nseries-verdict", f"powerlaw(k+1),k={k}", nseries_converges(PowerLaw(k + 1), k), False)
        rec.add("nseries-verdict", f"powerlaw(k+2),k={k}", nseries_converges(PowerLaw(k + 2), k), True)
    for n in (0, 1, 4, 7):
        for k in range(1, 7):
            for axis in Axis:
                mix = mixture_moment_operator(delta(n), k, axis, 24)
                single = moment_operator(n, k, axis, 24)
                rec.add_matrix("single-weight-reduction", f"n={n},k={k},{axis.value}",
                               mix.entries, single.entries)
    rng = np.random.default_rng(seed)
    grid = default_grid()
    for kernel in (half, Explicit.from_list([0.2, 0.3, 0.1, 0.4]), Geometric(0.5)):
        state = random_state(rng, 8)
        padded = state.padded(dim)
        for axis in Axis:
            marg = mixture_margin(state, kernel, axis, grid)
            for k in range(1, 5):
                exact = mixture_moment_operator(kernel, k, axis, dim).expectation(padded).real
                rec.add("mixture-oracle", f"{kernel},k={k},{axis.value}", marg.moment(k), exact)
    small = Grid1D.symmetric(12.0, 128)
    state = random_state(rng, 6)
    weights = Explicit.from_list([0.25, 0.5, 0.25])
    whole = density(state, weights, small, small)
    parts = sum(w * density(state, delta(n), small, small).values for n, w in weights.pairs)
    for axis in Axis:
        for k in range(0, 3):
            rec.add("mixture-additivity", f"k={k},{axis.value}", whole.moment(k, axis),
                    float(np.sum(_moment_weights(small, k, axis) * parts)))
    # s-coefficients of a delta kernel coincide with |p_k| coefficients
    for n in (0, 3):
        s = s_coefficients(delta(n), 4)
        rec.add_matrix("single-weight-reduction", f"s-coeffs n={n}", s, np.abs(moment_polynomial(n, 4).coeffs))


def _moment_weights(grid: Grid1D, k: int, axis: Axis) -> np.ndarray:
    x = grid.points ** k * grid.step * grid.step
    return x[:, None] * np.ones(grid.count)[None, :] if Axis(axis) is Axis.X else np.ones(grid.count)[:, None] * x[None, :]


def run(suite: str, seed: int = 20240501, tolerances: dict | None = None) -> dict:
    """Run one suite (or ``all``) and return ``{suite, seed, records, tables}``."""
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    tol = dict(TOLERANCES)
    for key, value in (tolerances or {}).items():
        if key not in tol:
            raise KeyError(f"unknown tolerance key {key!r}")
        tol[key] = float(value)
    rec = Recorder(tol, [])
    tables: dict = {}
    for name in names:
        if name == "identities":
            _identities(rec)
        elif name == "oracle":
            _oracle(rec, seed)
        elif name == "lemma-q2k":
            tables["lemma-q2k"] = []
            _lemma(rec, tables["lemma-q2k"])
        elif name == "mixtures":
            _mixtures(rec, seed)
    return {"suite": suite, "seed": seed, "passed": all(r["pass"] for r in rec.records),
            "records": rec.records, "tables": tables}
