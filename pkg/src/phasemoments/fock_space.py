"""Truncated number-basis operator algebra.

Operators are dense ``dim x dim`` complex matrices in the basis |0>, ..., |dim-1>.
Each operator carries ``exact_rows``: the number of leading basis vectors on which
its action agrees with the untruncated operator. Products propagate this count by
following where each exact column lands, so callers always know which leading
block of a matrix expression can be trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import sqrt

import numpy as np

from .exceptions import InvalidDimension

__all__ = [
    "Axis",
    "FockOperator",
    "FockVector",
    "build_ladder",
    "build_qp",
    "build_number",
    "quadrature_operator",
    "identity",
    "q_moment",
    "basis_state",
    "displaced_vacuum",
    "random_state",
]


class Axis(str, Enum):
    """Cartesian margin: X pairs with Q, Y with P."""

    X = "x"
    Y = "y"


def _reach(entries: np.ndarray, ncols: int) -> np.ndarray:
    """Highest row index with a nonzero entry in each of the first ``ncols`` columns (-1 if empty)."""
    nz = entries[:, :ncols] != 0
    rows = np.arange(entries.shape[0])[:, None]
    return np.where(nz, rows, -1).max(axis=0) if ncols else np.empty(0, dtype=int)


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Dense operator on the truncated number basis."""

    dim: int
    entries: np.ndarray
    exact_rows: int
    note: str = field(default="")

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (self.dim, self.dim):
            raise ValueError(f"entries must have shape ({self.dim}, {self.dim}), got {entries.shape}")
        if not 0 <= self.exact_rows <= self.dim:
            raise ValueError("exact_rows must lie in [0, dim]")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    # -- algebra -----------------------------------------------------------
    def _check(self, other: "FockOperator"):
        if other.dim != self.dim:
            raise InvalidDimension(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __matmul__(self, other):
        if isinstance(other, FockVector):
            return FockVector(self.entries @ other.coeffs)
        if not isinstance(other, FockOperator):
            return NotImplemented
        self._check(other)
        exact = other.exact_rows
        reach = _reach(other.entries, exact)
        bad = np.nonzero(reach >= self.exact_rows)[0]
        if bad.size:
            exact = int(bad[0])
        return FockOperator(self.dim, self.entries @ other.entries, exact)

    def __add__(self, other):
        if isinstance(other, FockOperator):
            self._check(other)
            return FockOperator(self.dim, self.entries + other.entries,
                                min(self.exact_rows, other.exact_rows))
        if np.isscalar(other):
            return self + other * identity(self.dim)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FockOperator(self.dim, -self.entries, self.exact_rows)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return FockOperator(self.dim, scalar * self.entries, self.exact_rows)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative powers are not supported")
        out = identity(self.dim)
        for _ in range(m):
            out = out @ self
        return out

    # -- inspection ----------------------------------------------------------
    def trusted(self, size: int | None = None) -> np.ndarray:
        """Leading ``size x size`` block (defaults to ``exact_rows``)."""
        size = self.exact_rows if size is None else size
        return self.entries[:size, :size]

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, rtol=0, atol=atol))

    def expectation(self, state: "FockVector") -> complex:
        return complex(np.vdot(state.coeffs, self.entries @ state.coeffs))

    def to_json(self) -> dict:
        """Row-major ``[re, im]`` pairs."""
        return {
            "dim": self.dim,
            "exact_rows": self.exact_rows,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FockOperator":
        arr = np.asarray(data["entries"], dtype=float)
        return cls(int(data["dim"]), arr[..., 0] + 1j * arr[..., 1], int(data["exact_rows"]))


@dataclass(frozen=True, eq=False)
class FockVector:
    """State vector in the number basis; ``coeffs[k]`` is the amplitude of |k> (and of h_k)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise InvalidDimension("a state needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm2 - 1.0) <= tol

    def normalized(self) -> "FockVector":
        return FockVector(self.coeffs / sqrt(self.norm2))

    def padded(self, dim: int) -> "FockVector":
        if dim < self.dim:
            if np.any(self.coeffs[dim:] != 0):
                raise InvalidDimension(f"state has support beyond level {dim - 1}")
            return FockVector(self.coeffs[:dim])
        return FockVector(np.concatenate([self.coeffs, np.zeros(dim - self.dim)]))

    def to_json(self) -> list:
        return [[float(z.real), float(z.imag)] for z in self.coeffs]


def _check_dim(dim: int, minimum: int):
    if int(dim) != dim or dim < minimum:
        raise InvalidDimension(f"dim must be an integer >= {minimum}, got {dim}")


def identity(dim: int) -> FockOperator:
    _check_dim(dim, 1)
    return FockOperator(dim, np.eye(dim), dim)


def build_ladder(dim: int) -> tuple[FockOperator, FockOperator]:
    """Raising and lowering operators ``(A+, A-)`` truncated to ``dim`` levels.

    ``A+`` maps the top level out of the space, so it is exact only on the first
    ``dim - 1`` basis vectors; ``A-`` is exact everywhere.
    """
    _check_dim(dim, 2)
    raising = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=-1)
    return (FockOperator(dim, raising, dim - 1),
            FockOperator(dim, raising.T.copy(), dim))


def build_qp(dim: int) -> tuple[FockOperator, FockOperator]:
    """Position and momentum, ``Q = (A+ + A-)/sqrt2`` and ``P = i(A+ - A-)/sqrt2``."""
    up, down = build_ladder(dim)
    s = 1.0 / sqrt(2.0)
    q = FockOperator(dim, s * (up.entries + down.entries), dim - 1)
    p = FockOperator(dim, 1j * s * (up.entries - down.entries), dim - 1)
    return q, p


def quadrature_operator(axis: Axis, dim: int) -> FockOperator:
    q, p = build_qp(dim)
    return q if Axis(axis) is Axis.X else p


def build_number(dim: int) -> FockOperator:
    _check_dim(dim, 1)
    return FockOperator(dim, np.diag(np.arange(dim, dtype=float)), dim)


def q_moment(n: int, m: int) -> float:
    """Diagonal element <n|Q^m|n> of the untruncated position operator.

    A word of ``m`` ladder letters started at level ``n`` never leaves levels
    ``0..n+m``, so a truncation of ``n + m + 1`` levels reproduces it exactly.
    """
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be non-negative, got n={n}, m={m}")
    dim = max(n + m + 1, 2)
    q, _ = build_qp(dim)
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    w = v
    for _ in range(m):
        w = q.entries @ w
    return float(np.vdot(v, w).real)


# -- states -------------------------------------------------------------------

def basis_state(n: int, dim: int | None = None) -> FockVector:
    dim = n + 1 if dim is None else dim
    if not 0 <= n < dim:
        raise ValueError(f"level {n} outside a {dim}-level space")
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return FockVector(c)


def displaced_vacuum(q0: float, p0: float, dim: int = 64) -> FockVector:
    """Coefficients of W(-q0, p0)|0>, the vacuum shifted to (q0, p0), up to a global phase.

    Truncated at ``dim`` levels and not renormalized.
    """
    alpha = (q0 + 1j * p0) / sqrt(2.0)
    c = np.empty(dim, dtype=complex)
    c[0] = np.exp(-abs(alpha) ** 2 / 2)
    for k in range(1, dim):
        c[k] = c[k - 1] * alpha / sqrt(k)
    return FockVector(c)


def random_state(rng: np.random.Generator, levels: int, dim: int | None = None) -> FockVector:
    """Normalized state with complex Gaussian amplitudes on the first ``levels`` levels."""
    dim = levels if dim is None else dim
    c = np.zeros(dim, dtype=complex)
    c[:levels] = rng.standard_normal(levels) + 1j * rng.standard_normal(levels)
    return FockVector(c).normalized()
