"""Moment operators of the Cartesian margins of phase-space observables.

Truncated Fock-space closed forms for the moments of the x- and y-margins of
E^T with T a number state or a mixture of number states, together with
independent quadrature and ladder-combinatorics oracles.
"""
from .exceptions import (DivergentMoment, InvalidDimension, InvalidWeights, LeakageWarning,
                         NormalizationWarning, PreconditionViolated)
from .fock_space import (Axis, FockOperator, FockVector, basis_state, build_ladder, build_number,
                         build_qp, displaced_vacuum, q_moment, random_state)
from .hermite_quad import Grid1D, QuadratureRule, fourier_unitary, gauss_hermite, hermite_fn
from .moment_engine import (MomentPolynomial, mixture_moment_operator, moment_operator,
                            moment_polynomial, nseries_converges, q2k_polynomial_check,
                            s_coefficients)
from .phase_density import (GriddedDensity, MarginalDensity, density, weyl_coefficient, x_margin,
                            y_margin)
from .quantizer import DomainTag, RealPolynomial, quantize_complex, quantize_sum, quantize_x
from .verify_oracle import density_moment_2d, ladder_expectation, quadrature_moment
from .weights import Explicit, Geometric, PowerLaw, WeightSequence, delta

__version__ = "0.1.0"
