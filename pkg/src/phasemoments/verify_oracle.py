"""Independent oracles for the closed forms.

Two structurally different routes are provided: grid quadrature over the margin
(or the full phase-space density), and brute-force ladder combinatorics on
level-indexed amplitudes. Neither touches the matrix polynomials they certify.
"""
from __future__ import annotations

from collections import defaultdict
from math import sqrt

from .fock_space import Axis, FockVector
from .hermite_quad import Grid1D
from .phase_density import density, margin
from .weights import WeightSequence

__all__ = ["quadrature_moment", "density_moment_2d", "ladder_expectation", "MAX_WORD"]

MAX_WORD = 12
MAX_LEVEL = 64


def quadrature_moment(state: FockVector, n: int, k: int, axis: Axis,
                      grid: Grid1D | None = None) -> float:
    """``int x^k margin(x) dx`` for the Cartesian margin of E^{|n>} in ``state``."""
    if k < 0 or k > 8:
        raise ValueError(f"k must lie in [0, 8], got {k}")
    return margin(state, n, axis, grid).moment(k)


def density_moment_2d(state: FockVector, kernel: WeightSequence, k: int, axis: Axis,
                      q_grid: Grid1D | None = None, p_grid: Grid1D | None = None) -> float:
    """``int x^k`` (or ``y^k``) against the full phase-space density of E^T."""
    return density(state, kernel, q_grid, p_grid).moment(k, axis)


_SQRT_HALF = sqrt(0.5)
# Q = (A+ + A-)/sqrt2, P = i(A+ - A-)/sqrt2 as (raising coefficient, lowering coefficient)
_LETTERS = {
    "Q": (_SQRT_HALF, _SQRT_HALF),
    "P": (1j * _SQRT_HALF, -1j * _SQRT_HALF),
}


def ladder_expectation(n: int, word) -> complex:
    """``<n| w_1 w_2 ... w_m |n>`` for letters in {"Q", "P"}.

    Letters act right to left on a dict of level amplitudes; each letter splits
    into a raising and a lowering branch with the exact sqrt factors.
    """
    word = [str(w).upper() for w in word]
    if len(word) > MAX_WORD:
        raise ValueError(f"word length {len(word)} exceeds {MAX_WORD}")
    if not 0 <= n <= MAX_LEVEL:
        raise ValueError(f"n must lie in [0, {MAX_LEVEL}], got {n}")
    unknown = set(word) - set(_LETTERS)
    if unknown:
        raise ValueError(f"unknown letters {sorted(unknown)}")
    amps: dict[int, complex] = {n: 1.0 + 0j}
    for letter in reversed(word):
        up, down = _LETTERS[letter]
        nxt: dict[int, complex] = defaultdict(complex)
        for level, a in amps.items():
            nxt[level + 1] += up * sqrt(level + 1) * a
            if level > 0:
                nxt[level - 1] += down * sqrt(level) * a
        amps = nxt
    return complex(amps.get(n, 0.0))
