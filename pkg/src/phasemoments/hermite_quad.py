"""Hermite functions, Gauss-Hermite rules and a unitary FFT on uniform grids."""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

__all__ = [
    "Grid1D",
    "QuadratureRule",
    "default_grid",
    "hermite_fn",
    "hermite_functions",
    "gauss_hermite",
    "fourier_unitary",
    "write_samples_csv",
]

DEFAULT_HALFWIDTH = 16.0
DEFAULT_POINTS = 1024

_LOG_PI_QUARTER = 0.25 * np.log(pi)
_RESCALE_AT = 1e150


@dataclass(frozen=True)
class Grid1D:
    start: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if self.count < 1:
            raise ValueError("grid count must be positive")

    @classmethod
    def symmetric(cls, halfwidth: float, count: int) -> "Grid1D":
        """FFT-style grid ``-halfwidth, ..., halfwidth - step`` with ``count`` points."""
        step = 2.0 * halfwidth / count
        return cls(-halfwidth, step, count)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def is_fft_ready(self) -> bool:
        power_of_two = self.count & (self.count - 1) == 0
        centered = np.isclose(self.start, -(self.count // 2) * self.step, rtol=0, atol=1e-12 * self.step)
        return bool(power_of_two and centered)

    def dual(self, oversample: int = 1) -> "Grid1D":
        """Reciprocal grid reached by the FFT: step ``2 pi / (count step)``."""
        count = self.count * oversample
        step = 2.0 * pi / (count * self.step)
        return Grid1D(-(count // 2) * step, step, count)

    def integrate(self, values: np.ndarray, axis: int = -1) -> np.ndarray:
        # plain Riemann sum; equals the trapezoid rule for integrands vanishing at the ends
        return np.sum(values, axis=axis) * self.step


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, func) -> float:
        """Approximate ``int func(t) exp(-t^2) dt``."""
        return float(np.sum(self.weights * func(self.nodes)))


def default_grid() -> Grid1D:
    """Default oracle grid, overridable via PHQ_GRID_HALFWIDTH and PHQ_GRID_POINTS."""
    halfwidth = float(os.environ.get("PHQ_GRID_HALFWIDTH", DEFAULT_HALFWIDTH))
    points = int(os.environ.get("PHQ_GRID_POINTS", DEFAULT_POINTS))
    return Grid1D.symmetric(halfwidth, points)


def hermite_fn(n: int, t) -> np.ndarray:
    """Orthonormal Hermite function h_n evaluated at ``t`` (scalar or array).

    Uses the normalized three-term recurrence on a rescaled copy of the values,
    with the Gaussian factor carried as a separate log-scale, so neither
    factorials nor ``exp(-t^2/2)`` underflow in the intermediate steps.
    """
    if n < 0:
        raise ValueError(f"Hermite index must be non-negative, got {n}")
    t = np.asarray(t, dtype=float)
    log_scale = -0.5 * t * t - _LOG_PI_QUARTER
    prev = np.zeros_like(t)
    cur = np.ones_like(t)
    for m in range(n):
        nxt = sqrt(2.0 / (m + 1)) * t * cur - sqrt(m / (m + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if np.any(big):
            factor = np.where(big, np.abs(cur), 1.0)
            cur = cur / factor
            prev = prev / factor
            log_scale = log_scale + np.log(factor)
    mag = np.abs(cur)
    with np.errstate(divide="ignore"):
        out = np.sign(cur) * np.exp(np.log(mag) + log_scale)
    return np.where(mag == 0, 0.0, out)


def hermite_functions(nmax: int, t) -> np.ndarray:
    """All of h_0..h_nmax at ``t``; shape ``(nmax + 1,) + t.shape``.

    Plain recurrence, intended for |t| below about 35 where exp(-t^2/2) is representable.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((nmax + 1,) + t.shape)
    out[0] = np.exp(-0.5 * t * t - _LOG_PI_QUARTER)
    if nmax >= 1:
        out[1] = sqrt(2.0) * t * out[0]
    for m in range(1, nmax):
        out[m + 1] = sqrt(2.0 / (m + 1)) * t * out[m] - sqrt(m / (m + 1)) * out[m - 1]
    return out


def gauss_hermite(count: int, tol: float = 1e-14, maxiter: int = 100) -> QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-t^2).

    Positive roots of H_count are found one at a time by Newton iteration on the
    orthonormal recurrence, seeded with the cosine (Chebyshev-style) estimate
    ``sqrt(2n+1) cos(pi (4i+3) / (4n+2))`` and deflated against the roots
    already found so no root is picked twice.
    """
    if not 1 <= count <= 200:
        raise ValueError(f"count must lie in [1, 200], got {count}")
    n = count
    p0 = pi ** -0.25
    found: list[float] = []
    weights: list[float] = []
    for i in range(n // 2):
        z = sqrt(2 * n + 1) * np.cos(pi * (4 * i + 3) / (4 * n + 2))
        for _ in range(maxiter):
            p1, p2 = p0, 0.0
            for j in range(1, n + 1):
                p1, p2 = z * sqrt(2.0 / j) * p1 - sqrt((j - 1) / j) * p2, p1
            deriv = sqrt(2.0 * n) * p2
            shift = sum(1.0 / (z - r) + 1.0 / (z + r) for r in found)
            dz = p1 / (deriv - p1 * shift)
            z -= dz
            if abs(dz) <= tol * max(1.0, abs(z)):
                break
        else:
            raise RuntimeError(f"Newton iteration for root {i} of H_{n} did not converge")
        # weight from the undeflated derivative at the converged root
        p1, p2 = p0, 0.0
        for j in range(1, n + 1):
            p1, p2 = z * sqrt(2.0 / j) * p1 - sqrt((j - 1) / j) * p2, p1
        found.append(z)
        weights.append(2.0 / (2.0 * n * p2 * p2))
    nodes = [-r for r in found] + found
    w = weights + weights
    if n % 2:
        p1, p2 = p0, 0.0
        for j in range(1, n + 1):
            p1, p2 = -sqrt((j - 1) / j) * p2, p1
        nodes.append(0.0)
        w.append(1.0 / (n * p2 * p2))
    order = np.argsort(nodes)
    return QuadratureRule(np.asarray(nodes)[order], np.asarray(w)[order])


def fourier_unitary(values, grid: Grid1D) -> tuple[np.ndarray, Grid1D]:
    """Samples of ``(Ff)(p) = (2 pi)^{-1/2} int exp(-i p t) f(t) dt`` on the dual grid.

    ``grid`` must be FFT-ready: power-of-two count, ``start = -(count/2) step``.
    The transform acts along the last axis.
    """
    if grid.count & (grid.count - 1):
        raise ValueError(f"grid count must be a power of two, got {grid.count}")
    if not grid.is_fft_ready:
        raise ValueError("grid must be symmetric about 0: start = -(count/2)*step")
    values = np.asarray(values, dtype=complex)
    if values.shape[-1] != grid.count:
        raise ValueError("sample count does not match grid")
    spectrum = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(values, axes=-1), axis=-1), axes=-1)
    return spectrum * (grid.step / sqrt(2.0 * pi)), grid.dual()


def write_samples_csv(path, grid: Grid1D, values) -> None:
    """Write ``point, re, im`` rows."""
    values = np.asarray(values, dtype=complex)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["point", "re", "im"])
        for x, v in zip(grid.points, values):
            writer.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
