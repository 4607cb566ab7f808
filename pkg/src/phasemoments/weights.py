"""Mixture weights w_n for diagonal kernels T = sum_n w_n |n><n|."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log

import numpy as np
from scipy.special import zeta

from .exceptions import InvalidWeights

__all__ = ["WeightSequence", "Explicit", "Geometric", "PowerLaw", "delta", "parse_weights"]

DEFAULT_TAIL = 1e-10


class WeightSequence:
    """Common interface of the weight families."""

    def weight(self, n: int) -> float:
        raise NotImplementedError

    def nseries_converges(self, k: int) -> bool:
        """Analytic verdict on ``sum_n n^k w_n < inf``."""
        raise NotImplementedError

    def cutoff(self, tail: float) -> int:
        """Smallest N with ``sum_{n > N} w_n <= tail``."""
        raise NotImplementedError

    def tail_mass(self, cutoff: int) -> float:
        raise NotImplementedError

    def truncated(self, tail: float = DEFAULT_TAIL, max_level: int | None = None) -> tuple["Explicit", float]:
        """Finite part up to the tail cutoff, plus the discarded mass (never renormalized)."""
        top = self.cutoff(tail)
        if max_level is not None:
            top = min(top, max_level)
        pairs = tuple((n, self.weight(n)) for n in range(top + 1) if self.weight(n) > 0)
        return Explicit(pairs), self.tail_mass(top)


@dataclass(frozen=True)
class Explicit(WeightSequence):
    """Finite list of ``(n, w_n)`` pairs."""

    pairs: tuple[tuple[int, float], ...]

    def __post_init__(self):
        pairs = tuple((int(n), float(w)) for n, w in self.pairs)
        if not pairs:
            raise InvalidWeights("explicit weight list is empty")
        levels = [n for n, _ in pairs]
        if min(levels) < 0 or len(set(levels)) != len(levels):
            raise InvalidWeights("levels must be distinct non-negative integers")
        ws = np.array([w for _, w in pairs])
        if np.any(ws < 0) or not np.all(np.isfinite(ws)):
            raise InvalidWeights("weights must be finite and non-negative")
        if ws.sum() > 1 + 1e-12:
            raise InvalidWeights(f"weights sum to {ws.sum():.17g} > 1")
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))

    @classmethod
    def from_list(cls, weights) -> "Explicit":
        """``weights[n]`` is w_n."""
        return cls(tuple(enumerate(weights)))

    @property
    def levels(self) -> np.ndarray:
        return np.array([n for n, _ in self.pairs], dtype=int)

    @property
    def values(self) -> np.ndarray:
        return np.array([w for _, w in self.pairs])

    def weight(self, n: int) -> float:
        return dict(self.pairs).get(n, 0.0)

    def nseries_converges(self, k: int) -> bool:
        return True

    def cutoff(self, tail: float) -> int:
        return max(n for n, _ in self.pairs)

    def tail_mass(self, cutoff: int) -> float:
        return max(0.0, 1.0 - float(sum(w for n, w in self.pairs if n <= cutoff)))

    def __str__(self):
        return "explicit:" + ",".join(f"{n}={w:g}" for n, w in self.pairs)


def delta(n: int) -> Explicit:
    """The single number state |n><n|."""
    return Explicit(((n, 1.0),))


@dataclass(frozen=True)
class Geometric(WeightSequence):
    """Thermal-type weights ``w_n = (1 - r) r^n`` for n >= 0."""

    ratio: float

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise InvalidWeights(f"geometric ratio must lie in (0, 1), got {self.ratio}")

    def weight(self, n: int) -> float:
        return (1 - self.ratio) * self.ratio ** n

    def nseries_converges(self, k: int) -> bool:
        return True

    def cutoff(self, tail: float) -> int:
        # tail after N is r^(N+1)
        return max(0, ceil(log(tail) / log(self.ratio)) - 1)

    def tail_mass(self, cutoff: int) -> float:
        return self.ratio ** (cutoff + 1)

    def __str__(self):
        return f"geometric:{self.ratio:g}"


@dataclass(frozen=True)
class PowerLaw(WeightSequence):
    """``w_n = n^-alpha / zeta(alpha)`` for n >= 1 (w_0 = 0)."""

    exponent: float

    def __post_init__(self):
        if not self.exponent > 1:
            raise InvalidWeights(f"power-law exponent must exceed 1, got {self.exponent}")

    @property
    def normalizer(self) -> float:
        return float(zeta(self.exponent))

    def weight(self, n: int) -> float:
        return 0.0 if n < 1 else n ** -self.exponent / self.normalizer

    def nseries_converges(self, k: int) -> bool:
        # sum n^(k - alpha) converges iff alpha - k > 1
        return k < self.exponent - 1

    def cutoff(self, tail: float) -> int:
        # sum_{n > N} n^-a <= N^(1-a) / (a - 1)
        a = self.exponent
        return max(1, ceil((tail * (a - 1) * self.normalizer) ** (1.0 / (1.0 - a))))

    def tail_mass(self, cutoff: int) -> float:
        a = self.exponent
        return float(zeta(a, cutoff + 1)) / self.normalizer

    def __str__(self):
        return f"powerlaw:{self.exponent:g}"


def parse_weights(spec: str) -> WeightSequence:
    """Parse ``delta:n``, ``explicit:w0,w1,...``, ``geometric:r`` or ``powerlaw:alpha``."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise ValueError(f"weight spec {spec!r} lacks an argument")
    if kind == "delta":
        return delta(int(arg))
    if kind == "explicit":
        return Explicit.from_list([float(x) for x in arg.split(",")])
    if kind == "geometric":
        return Geometric(float(arg))
    if kind == "powerlaw":
        return PowerLaw(float(arg))
    raise ValueError(f"unknown weight family {kind!r}")
