from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phasemoments.fock_space import Axis, basis_state, build_qp, q_moment, random_state
from phasemoments.hermite_quad import Grid1D
from phasemoments.moment_engine import mixture_moment_operator, moment_operator
from phasemoments.verify_oracle import density_moment_2d, ladder_expectation, quadrature_moment
from phasemoments.weights import Explicit


def test_ladder_known_values():
    assert ladder_expectation(0, "QQQQ") == pytest.approx(0.75)
    # <0|QP|0> = i/2, <0|PQ|0> = -i/2
    assert ladder_expectation(0, "QP") == pytest.approx(0.5j)
    assert ladder_expectation(0, "QP") - ladder_expectation(0, "PQ") == pytest.approx(1j)


@given(st.integers(0, 20), st.text(alphabet="QP", max_size=8))
def test_ladder_matches_matrix_products(n, word):
    q, p = build_qp(n + len(word) + 2)
    mats = {"Q": q, "P": p}
    op = q ** 0
    for letter in word:
        op = op @ mats[letter]
    assert ladder_expectation(n, word) == pytest.approx(complex(op.entries[n, n]), abs=1e-10)


def test_ladder_q_powers_match_q_moment():
    for n, m in product(range(17), range(13)):
        assert ladder_expectation(n, "Q" * m).real == pytest.approx(q_moment(n, m), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n,word", [(0, "Q" * 13), (65, "Q"), (-1, "Q"), (0, "QX")])
def test_ladder_bounds(n, word):
    with pytest.raises(ValueError):
        ladder_expectation(n, word)


@given(st.integers(0, 5), st.integers(1, 6), st.sampled_from(list(Axis)))
@settings(max_examples=20)
def test_quadrature_moment_matches_closed_form(n, k, axis):
    state = random_state(np.random.default_rng(n * 10 + k), 8)
    want = moment_operator(n, k, axis, 24).expectation(state.padded(24)).real
    assert quadrature_moment(state, n, k, axis) == pytest.approx(want, rel=1e-9, abs=1e-9)


def test_quadrature_moment_order_bounds():
    with pytest.raises(ValueError):
        quadrature_moment(basis_state(0), 0, 9, Axis.X)


def test_density_moment_for_mixture():
    grid = Grid1D.symmetric(12.0, 256)
    state = random_state(np.random.default_rng(3), 4)
    kernel = Explicit.from_list([0.25, 0.75])
    for axis in Axis:
        for k in (1, 2, 3):
            want = mixture_moment_operator(kernel, k, axis, 16).expectation(state.padded(16)).real
            got = density_moment_2d(state, kernel, k, axis, grid, grid)
            assert got == pytest.approx(want, rel=1e-7, abs=1e-7)
