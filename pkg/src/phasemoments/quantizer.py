"""Operator integrals of polynomial classical variables for number-state kernels.

A real polynomial ``h(t) = sum_l a_l t^l`` of the x coordinate integrates to
``sum_l a_l p_l(Q)``, where ``p_l`` are the moment polynomials of the kernel
(``p_0 = 1``). Combinations with the y coordinate add the matching ``p_l(P)``
terms. Domain tags record ``D(Q^k1) ∩ D(P^k2)`` symbolically; the truncated
matrices themselves are everywhere defined.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import PreconditionViolated
from .fock_space import Axis, FockOperator, quadrature_operator
from .moment_engine import moment_polynomial, polynomial_operator

__all__ = ["RealPolynomial", "DomainTag", "quantize_x", "quantize_y", "quantize_complex",
           "quantize_sum", "result_to_json"]


@dataclass(frozen=True, eq=False)
class RealPolynomial:
    """``sum_l coeffs[l] t^l``; trailing zeros are dropped, the zero polynomial is rejected."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = [float(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("the zero polynomial has no degree")
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n)
        a[: len(self.coeffs)] += self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return RealPolynomial(tuple(a))

    def __rmul__(self, scalar: float) -> "RealPolynomial":
        return RealPolynomial(tuple(scalar * c for c in self.coeffs))


@dataclass(frozen=True)
class DomainTag:
    q_power: int
    p_power: int

    def __post_init__(self):
        if self.q_power < 0 or self.p_power < 0:
            raise ValueError("domain powers must be non-negative")

    def __str__(self):
        return f"D(Q^{self.q_power})∩D(P^{self.p_power})"


def _kernel_polynomial(h: RealPolynomial, n: int) -> np.ndarray:
    """Ascending coefficients of ``sum_l a_l p_l(t)`` for the kernel |n>."""
    out = np.zeros(h.degree + 1)
    out[0] = h.coeffs[0]
    for l, a in enumerate(h.coeffs[1:], start=1):
        if a:
            out[: l + 1] += a * moment_polynomial(n, l).coeffs
    return out


def _require_degree(h: RealPolynomial, name: str):
    if h.degree < 1:
        raise ValueError(f"{name} must have degree at least 1, got a constant")


def _integrate(h: RealPolynomial, n: int, axis: Axis, dim: int) -> FockOperator:
    return polynomial_operator(_kernel_polynomial(h, n), quadrature_operator(axis, dim))


def quantize_x(h: RealPolynomial, n: int, dim: int) -> tuple[FockOperator, DomainTag]:
    _require_degree(h, "h")
    return _integrate(h, n, Axis.X, dim), DomainTag(h.degree, 0)


def quantize_y(h: RealPolynomial, n: int, dim: int) -> tuple[FockOperator, DomainTag]:
    _require_degree(h, "h")
    return _integrate(h, n, Axis.Y, dim), DomainTag(0, h.degree)


def quantize_complex(h1: RealPolynomial, h2: RealPolynomial, n: int, dim: int) -> tuple[FockOperator, DomainTag]:
    """Integral of ``h1(x) + i h2(y)``; not Hermitian in general."""
    _require_degree(h1, "h1")
    _require_degree(h2, "h2")
    op = _integrate(h1, n, Axis.X, dim) + 1j * _integrate(h2, n, Axis.Y, dim)
    return op, DomainTag(h1.degree, h2.degree)


def quantize_sum(h1: RealPolynomial, h2: RealPolynomial, n: int, dim: int) -> tuple[FockOperator, DomainTag]:
    """Integral of ``h1(x) + h2(y)`` when both degrees are even and both leading coefficients positive.

    Outside that hypothesis the integrability of the sum is not controlled by the
    separate terms, so the closed form is refused.
    """
    for name, h in (("h1", h1), ("h2", h2)):
        if h.degree < 2 or h.degree % 2:
            raise PreconditionViolated(
                f"{name} has degree {h.degree}; h1(x)+h2(y) needs even degrees k_i >= 2 "
                "with positive leading coefficients")
        if h.leading <= 0:
            raise PreconditionViolated(
                f"{name} has leading coefficient {h.leading}; h1(x)+h2(y) needs a_(i,k_i) > 0")
    op = _integrate(h1, n, Axis.X, dim) + _integrate(h2, n, Axis.Y, dim)
    return op, DomainTag(h1.degree, h2.degree)


def result_to_json(op: FockOperator, tag: DomainTag, n: int) -> dict:
    return {"operator": op.to_json(), "domain_tag": str(tag), "kernel": n}
