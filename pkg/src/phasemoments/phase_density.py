"""Phase-space densities of E^T for diagonal kernels T and their Cartesian margins.

For a state phi with Hermite expansion f and a number-state kernel |n>, the
density at (q, p) is ``(2 pi)^-1 |<phi|W(-q,p)|n>|^2``, i.e. the squared modulus
of ``exp(i q p / 2) F(h_n(. - q) f)(p)``. Rows of fixed q are one FFT each.

Integrating out p collapses the Fourier transform by unitarity, so the x-margin
is the convolution ``int |h_n(t - q)|^2 |f(t)|^2 dt``. The y-margin is the same
convolution in momentum space, where h_n and f are replaced by their Fourier
transforms ``(-i)^k h_k``.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from math import pi, sqrt

import numpy as np

from .exceptions import InvalidWeights, LeakageWarning, NormalizationWarning
from .fock_space import Axis, FockVector
from .hermite_quad import Grid1D, default_grid, hermite_fn, hermite_functions
from .weights import DEFAULT_TAIL, Explicit, WeightSequence

__all__ = [
    "GriddedDensity",
    "MarginalDensity",
    "sample_state",
    "momentum_coeffs",
    "weyl_coefficient",
    "density",
    "x_margin",
    "y_margin",
    "margin",
    "mixture_margin",
]

LEAKAGE_WARN = 1e-4
MAX_LEVEL = 64
_T_STEP_TARGET = 1.0 / 16
_ROW_CHUNK = 64


@dataclass(frozen=True, eq=False)
class MarginalDensity:
    grid: Grid1D
    values: np.ndarray
    axis: Axis
    expected_mass: float = 1.0
    leakage_warning: bool = False

    @property
    def total_mass(self) -> float:
        return float(self.grid.integrate(self.values))

    @property
    def leakage(self) -> float:
        return self.expected_mass - self.total_mass

    def moment(self, k: int) -> float:
        return float(self.grid.integrate(self.grid.points ** k * self.values))

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("point,value\n")
            for x, v in zip(self.grid.points, self.values):
                fh.write(f"{float(x)!r},{float(v)!r}\n")


@dataclass(frozen=True, eq=False)
class GriddedDensity:
    q_grid: Grid1D
    p_grid: Grid1D
    values: np.ndarray
    expected_mass: float = 1.0
    tail_mass: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def total_mass(self) -> float:
        return float(self.values.sum() * self.q_grid.step * self.p_grid.step)

    @property
    def leakage(self) -> float:
        """Mass missing beyond the weight tail: lost off the grid or to discretization."""
        return self.expected_mass - self.total_mass

    def projection(self, axis: Axis) -> MarginalDensity:
        """Integrate out the other coordinate on the grid."""
        if Axis(axis) is Axis.X:
            return MarginalDensity(self.q_grid, self.p_grid.integrate(self.values, axis=1),
                                   Axis.X, self.expected_mass)
        return MarginalDensity(self.p_grid, self.q_grid.integrate(self.values, axis=0),
                               Axis.Y, self.expected_mass)

    def moment(self, k: int, axis: Axis) -> float:
        return self.projection(axis).moment(k)

    def to_csv(self, path) -> None:
        qs, ps = self.q_grid.points, self.p_grid.points
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("q,p,value\n")
            for i, q in enumerate(qs):
                fh.writelines(f"{float(q)!r},{float(p)!r},{float(v)!r}\n" for p, v in zip(ps, self.values[i]))

    def to_binary(self, path) -> None:
        """Row-major float64 values, grid metadata in a ``.json`` sidecar."""
        np.ascontiguousarray(self.values, dtype="<f8").tofile(path)
        meta = {
            "q_grid": [self.q_grid.start, self.q_grid.step, self.q_grid.count],
            "p_grid": [self.p_grid.start, self.p_grid.step, self.p_grid.count],
            "dtype": "float64", "order": "row-major (q slow, p fast)",
        }
        with open(f"{path}.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=1)


def _check_state(state: FockVector) -> None:
    if state.dim > MAX_LEVEL and np.any(state.coeffs[MAX_LEVEL:] != 0):
        raise ValueError(f"states must lie in the span of the first {MAX_LEVEL} levels")
    if not state.is_normalized(1e-8):
        warnings.warn(f"state norm^2 is {state.norm2:.12g}, not 1", NormalizationWarning, stacklevel=3)


def sample_state(coeffs, t) -> np.ndarray:
    """Samples of ``sum_k coeffs[k] h_k(t)``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    basis = hermite_functions(coeffs.size - 1, t)
    return np.tensordot(coeffs, basis, axes=1)


def momentum_coeffs(state: FockVector) -> np.ndarray:
    """Hermite coefficients of the Fourier transform of the state: ``c_k (-i)^k``."""
    return state.coeffs * (-1j) ** np.arange(state.dim)


def weyl_coefficient(state: FockVector, n: int, q: float, p: float, t_grid: Grid1D | None = None) -> complex:
    """``(2 pi)^-1/2 <W0(-q,p) h_n | f>`` via ``exp(iqp/2) F(h_n(. - q) f)(p)``.

    The Fourier integral is evaluated as the discrete transform at the single
    frequency ``p`` on ``t_grid``, which is the unitary FFT sum evaluated off
    its lattice. Emits :class:`NormalizationWarning` for unnormalized states.
    """
    if n < 0:
        raise ValueError(f"kernel level must be non-negative, got {n}")
    _check_state(state)
    grid = default_grid() if t_grid is None else t_grid
    t = grid.points
    g = hermite_fn(n, t - q) * sample_state(state.coeffs, t)
    transform = np.sum(np.exp(-1j * p * t) * g) * grid.step / sqrt(2 * pi)
    return complex(np.exp(0.5j * q * p) * transform)


def _kernel_terms(kernel: WeightSequence) -> tuple[Explicit, float]:
    if isinstance(kernel, Explicit):
        return kernel, kernel.tail_mass(kernel.cutoff(0.0))
    return kernel.truncated(DEFAULT_TAIL, max_level=4 * MAX_LEVEL)


def _oversampled_time_grid(p_grid: Grid1D, t_step: float) -> tuple[Grid1D, int]:
    base = 2 * pi / (p_grid.count * p_grid.step)
    factor = 1
    while base / factor > t_step:
        factor *= 2
    count = p_grid.count * factor
    step = base / factor
    return Grid1D(-(count // 2) * step, step, count), factor


def density(state: FockVector, kernel: WeightSequence, q_grid: Grid1D | None = None,
            p_grid: Grid1D | None = None, t_step: float = _T_STEP_TARGET) -> GriddedDensity:
    """Phase-space density of E^T in ``state`` for ``T = sum_n w_n |n><n|``.

    Named infinite weight families are truncated at tail mass 1e-10; the
    discarded tail is stored in ``tail_mass`` and the density is not
    renormalized. ``p_grid`` must be FFT-ready; the integration variable runs on
    an oversampled reciprocal grid with step at most ``t_step``.
    """
    _check_state(state)
    q_grid = default_grid() if q_grid is None else q_grid
    p_grid = default_grid() if p_grid is None else p_grid
    if not p_grid.is_fft_ready:
        raise ValueError("p_grid must have a power-of-two count and be centred on 0")
    terms, tail = _kernel_terms(kernel)
    if terms.values.sum() > 1 + 1e-12 or np.any(terms.values < 0):
        raise InvalidWeights("kernel weights must be non-negative and sum to at most 1")

    t_grid, _ = _oversampled_time_grid(p_grid, t_step)
    t = t_grid.points
    f = sample_state(state.coeffs, t)
    lo = t_grid.count // 2 - p_grid.count // 2
    sl = slice(lo, lo + p_grid.count)
    scale = t_grid.step / sqrt(2 * pi)

    qs = q_grid.points
    values = np.zeros((q_grid.count, p_grid.count))
    for n, w in terms.pairs:
        if w == 0:
            continue
        for i0 in range(0, q_grid.count, _ROW_CHUNK):
            rows = qs[i0:i0 + _ROW_CHUNK]
            g = hermite_fn(n, t[None, :] - rows[:, None]) * f[None, :]
            spec = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(g, axes=-1), axis=-1), axes=-1)
            values[i0:i0 + _ROW_CHUNK] += w * np.abs(spec[:, sl] * scale) ** 2
    out = GriddedDensity(q_grid, p_grid, values,
                         expected_mass=state.norm2 * (1.0 - tail), tail_mass=tail,
                         meta={"kernel": str(kernel), "t_grid": [t_grid.start, t_grid.step, t_grid.count]})
    if out.leakage > LEAKAGE_WARN:
        warnings.warn(f"density leakage {out.leakage:.3g} exceeds {LEAKAGE_WARN:g}; widen the grid",
                      LeakageWarning, stacklevel=2)
    return out


def _convolve_margin(coeffs: np.ndarray, n: int, grid: Grid1D, t_grid: Grid1D) -> np.ndarray:
    t = t_grid.points
    weight = np.abs(sample_state(coeffs, t)) ** 2 * t_grid.step
    offset = (grid.start - t_grid.start) / t_grid.step
    if np.isclose(grid.step, t_grid.step, rtol=1e-14, atol=0) and np.isclose(offset, round(offset), atol=1e-9):
        # shared lattice: h_n(t_j - q_i) depends on j - i only
        off = int(round(offset))
        lags = np.arange(-(grid.count - 1), t_grid.count) - off
        kern = hermite_fn(n, lags * t_grid.step) ** 2
        idx = np.arange(t_grid.count)[None, :] - np.arange(grid.count)[:, None] + grid.count - 1
        return kern[idx] @ weight
    out = np.empty(grid.count)
    pts = grid.points
    for i0 in range(0, grid.count, 256):
        rows = pts[i0:i0 + 256]
        out[i0:i0 + 256] = hermite_fn(n, t[None, :] - rows[:, None]) ** 2 @ weight
    return out


def margin(state: FockVector, n: int, axis: Axis, grid: Grid1D | None = None,
           t_grid: Grid1D | None = None) -> MarginalDensity:
    """Cartesian margin of E^{|n>} in ``state`` by direct convolution quadrature."""
    if n < 0:
        raise ValueError(f"kernel level must be non-negative, got {n}")
    _check_state(state)
    grid = default_grid() if grid is None else grid
    t_grid = default_grid() if t_grid is None else t_grid
    axis = Axis(axis)
    coeffs = state.coeffs if axis is Axis.X else momentum_coeffs(state)
    values = _convolve_margin(coeffs, n, grid, t_grid)
    out = MarginalDensity(grid, values, axis, expected_mass=state.norm2)
    if out.leakage > LEAKAGE_WARN:
        warnings.warn(f"{axis.value}-margin leakage {out.leakage:.3g} exceeds {LEAKAGE_WARN:g}; widen the grid",
                      LeakageWarning, stacklevel=2)
        out = MarginalDensity(grid, values, axis, expected_mass=state.norm2, leakage_warning=True)
    return out


def x_margin(state: FockVector, n: int, grid: Grid1D | None = None, t_grid: Grid1D | None = None) -> MarginalDensity:
    return margin(state, n, Axis.X, grid, t_grid)


def y_margin(state: FockVector, n: int, grid: Grid1D | None = None, t_grid: Grid1D | None = None) -> MarginalDensity:
    return margin(state, n, Axis.Y, grid, t_grid)


def mixture_margin(state: FockVector, kernel: WeightSequence, axis: Axis,
                   grid: Grid1D | None = None, t_grid: Grid1D | None = None) -> MarginalDensity:
    """Margin of E^T as the weighted sum of number-state margins (tail dropped, not renormalized)."""
    terms, tail = _kernel_terms(kernel)
    grid = default_grid() if grid is None else grid
    values = np.zeros(grid.count)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LeakageWarning)
        for n, w in terms.pairs:
            if w:
                values += w * margin(state, n, axis, grid, t_grid).values
    return MarginalDensity(grid, values, Axis(axis), expected_mass=state.norm2 * (1.0 - tail))
