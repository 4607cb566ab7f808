"""Moment polynomials and moment operators of the Cartesian margins.

For the number-state kernel |n>, the k-th moment operator of the x-margin is
``p_k(Q)`` with ``p_k(t) = <n|(t - Q)^k|n>``; the y-margin gives ``p_k(P)``.
For a mixture ``T = sum_n w_n |n><n|`` it is ``sum_l s_kl Q^l`` provided
``sum_n n^k w_n`` converges.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.special import zeta

from .exceptions import DivergentMoment, InvalidDimension
from .fock_space import Axis, FockOperator, identity, q_moment, quadrature_operator
from .weights import DEFAULT_TAIL, Explicit, Geometric, PowerLaw, WeightSequence

__all__ = [
    "MomentPolynomial",
    "WeightSequence",
    "moment_polynomial",
    "moment_operator",
    "polynomial_operator",
    "nseries_converges",
    "s_coefficients",
    "mixture_moment_operator",
    "q2k_polynomial_check",
    "FORMAL_DOMAIN_NOTE",
]

MAX_ORDER = 12
FORMAL_DOMAIN_NOTE = "formal operator: square-integrability domain is {0}"


@dataclass(frozen=True, eq=False)
class MomentPolynomial:
    """Real polynomial ``sum_l coeffs[l] t^l`` labelled by its kernel."""

    coeffs: np.ndarray
    kernel: str

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, t):
        out = np.zeros_like(np.asarray(t, dtype=float))
        for c in self.coeffs[::-1]:
            out = out * t + c
        return out

    def to_json(self) -> dict:
        return {"kernel": self.kernel, "k": self.degree, "coeffs": [float(c) for c in self.coeffs],
                "provenance": "closed-form"}


def polynomial_operator(coeffs, base: FockOperator) -> FockOperator:
    """Horner evaluation of ``sum_l coeffs[l] base^l``."""
    coeffs = np.asarray(coeffs)
    out = coeffs[-1] * identity(base.dim)
    for c in coeffs[-2::-1]:
        out = out @ base + c
    return out


def moment_polynomial(n: int, k: int) -> MomentPolynomial:
    """Coefficients ``C(k, l) (-1)^(k-l) <n|Q^(k-l)|n>`` of ``p_k`` for the kernel |n>."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"k must lie in [1, {MAX_ORDER}], got {k}")
    coeffs = [comb(k, l) * (-1) ** (k - l) * q_moment(n, k - l) + 0.0 for l in range(k + 1)]
    return MomentPolynomial(np.array(coeffs), f"number:{n}")


def _check_room(dim: int, k: int):
    if dim <= k:
        raise InvalidDimension(f"dim={dim} leaves no trusted block for order {k}; need dim > k")


def moment_operator(n: int, k: int, axis: Axis, dim: int) -> FockOperator:
    """``p_k(Q)`` (axis X) or ``p_k(P)`` (axis Y) on ``dim`` levels; trusted block ``dim - k``."""
    _check_room(dim, k)
    poly = moment_polynomial(n, k)
    return polynomial_operator(poly.coeffs, quadrature_operator(axis, dim))


def nseries_converges(weights: WeightSequence, k: int) -> bool:
    """Whether ``sum_n n^k w_n`` is finite; decided per family, never numerically."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return weights.nseries_converges(k)


def _q2j_polynomial(j: int) -> list[Fraction]:
    """Exact ascending coefficients in n of ``<n|Q^(2j)|n>``.

    ``2^j <n|Q^(2j)|n>`` is an integer for every n, so exact values at
    n = j..2j pin down the degree-j polynomial by rational interpolation.
    """
    ns = list(range(j, 2 * j + 1))
    vals = [Fraction(round(2 ** j * q_moment(n, 2 * j)), 2 ** j) for n in ns]
    coeffs = [Fraction(0)] * (j + 1)
    for i, (xi, yi) in enumerate(zip(ns, vals)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xm in ns[:i] + ns[i + 1:]:
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xm * basis[d + 1]
            denom *= xi - xm
        for d, c in enumerate(basis):
            coeffs[d] += yi * c / denom
    return coeffs


def _diagonal_sum(weights: WeightSequence, m: int) -> float:
    """``sum_n w_n <n|Q^m|n>``; caller guarantees convergence."""
    if m % 2:
        return 0.0
    j = m // 2
    if isinstance(weights, Explicit):
        return float(sum(w * q_moment(n, m) for n, w in weights.pairs))
    if isinstance(weights, PowerLaw):
        # polynomial in n summed against n^-alpha: zeta values
        # the polynomial form is only claimed for n >= j; sum n < j directly
        poly = _q2j_polynomial(j)
        a = weights.exponent
        head = sum(n ** -a * q_moment(n, m) for n in range(1, j))
        tail = sum(float(c) * (zeta(a - i) - sum(n ** (i - a) for n in range(1, j)))
                   for i, c in enumerate(poly))
        return float(head + tail) / weights.normalizer
    if isinstance(weights, Geometric):
        return _geometric_sum(weights.ratio, m)
    raise TypeError(f"unsupported weight family {type(weights).__name__}")


def _geometric_sum(r: float, m: int) -> float:
    # <n|Q^(2j)|n> <= (2(n+j))^j; the bounded terms decay geometrically once
    # r (1 + 1/(n+j))^j < 1, giving tail <= term / (1 - ratio).
    j = m // 2
    total = 0.0
    n = 0
    while True:
        total += (1 - r) * r ** n * q_moment(n, m)
        n += 1
        ratio = r * (1 + 1.0 / (n + j)) ** j
        if ratio < 1:
            bound = (1 - r) * r ** n * (2.0 * (n + j)) ** j / (1 - ratio)
            if bound <= DEFAULT_TAIL * total:
                return total


def s_coefficients(weights: WeightSequence, k: int, formal: bool = False) -> np.ndarray:
    """``s_kl = C(k, l) sum_n w_n <n|Q^(k-l)|n>`` for ``l = 0..k``.

    Raises :class:`DivergentMoment` when ``sum_n n^k w_n`` diverges, unless
    ``formal`` is set, in which case the (possibly still finite) coefficients
    are returned anyway.
    """
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"k must lie in [1, {MAX_ORDER}], got {k}")
    converges = nseries_converges(weights, k)
    if not converges and not formal:
        raise DivergentMoment(weights, k)
    out = np.zeros(k + 1)
    for l in range(k + 1):
        m = k - l
        if m % 2:
            continue
        if isinstance(weights, PowerLaw) and not weights.nseries_converges(m // 2):
            out[l] = np.inf
            continue
        out[l] = comb(k, l) * (1.0 if m == 0 else _diagonal_sum(weights, m))
    return out


def mixture_moment_operator(weights: WeightSequence, k: int, axis: Axis, dim: int,
                            formal: bool = False) -> FockOperator:
    """``sum_l s_kl Q^l`` (or with P) for the mixture kernel.

    With ``formal=True`` a divergent kernel still yields the operator, tagged
    with :data:`FORMAL_DOMAIN_NOTE` in its ``note`` field.
    """
    _check_room(dim, k)
    s = s_coefficients(weights, k, formal=formal)
    if not np.all(np.isfinite(s)):
        raise DivergentMoment(weights, k)
    op = polynomial_operator(s, quadrature_operator(axis, dim))
    if not nseries_converges(weights, k):
        op = FockOperator(op.dim, op.entries, op.exact_rows, note=FORMAL_DOMAIN_NOTE)
    return op


def q2k_polynomial_check(k: int, n_range: tuple[int, int]) -> tuple[np.ndarray, float]:
    """Least-squares fit of a degree-k polynomial in n to ``<n|Q^(2k)|n>``.

    ``n_range`` is inclusive. Fitting happens in the centred variable
    ``n - midpoint``; returned coefficients are for powers of n in descending
    order (``numpy.polyfit`` convention), with the maximum relative residual.
    """
    lo, hi = n_range
    if not 1 <= k <= 6:
        raise ValueError(f"k must lie in [1, 6], got {k}")
    if lo < k:
        raise ValueError(f"n_range must start at n >= k = {k}, got {lo}")
    if hi > k + 32 or hi - lo < k:
        raise ValueError(f"n_range must lie in [k, k+32] and hold at least k+1 points, got {n_range}")
    ns = np.arange(lo, hi + 1)
    vals = np.array([q_moment(int(n), 2 * k) for n in ns])
    mid = 0.5 * (lo + hi)
    centred = np.poly1d(np.polyfit(ns - mid, vals, k))
    poly = centred(np.poly1d([1.0, -mid]))
    residual = float(np.max(np.abs(poly(ns) - vals) / np.abs(vals)))
    coef = poly.coeffs
    return coef, residual
