from math import factorial, sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from phasemoments.exceptions import InvalidDimension
from phasemoments.fock_space import (FockOperator, FockVector, basis_state, build_ladder, build_number,
                                     build_qp, displaced_vacuum, identity, q_moment, random_state)


def test_ladder_dim2():
    up, down = build_ladder(2)
    assert np.array_equal(up.entries, [[0, 0], [1, 0]])
    assert np.array_equal(down.entries, [[0, 1], [0, 0]])
    assert (up.exact_rows, down.exact_rows) == (1, 2)


def test_ladder_dim3_subdiagonal():
    up, _ = build_ladder(3)
    assert np.allclose(np.diag(up.entries, -1), [1, sqrt(2)], atol=0)


def test_ladder_rejects_small_dim():
    with pytest.raises(InvalidDimension):
        build_ladder(1)
    with pytest.raises(InvalidDimension):
        build_qp(0)


def test_ladder_ccr_dim8():
    up, down = build_ladder(8)
    comm = (down @ up - up @ down).entries
    assert np.allclose(comm[:7, :7], np.eye(7), atol=1e-14)
    # truncation shows up in the corner only
    assert comm[7, 7] == pytest.approx(-7)


def test_qp_dim2():
    q, p = build_qp(2)
    r = 1 / sqrt(2)
    assert np.allclose(q.entries, [[0, r], [r, 0]])
    assert np.allclose(p.entries, [[0, -1j * r], [1j * r, 0]])


@pytest.mark.parametrize("dim", [2, 5, 16, 40])
def test_qp_hermitian(dim):
    q, p = build_qp(dim)
    assert q.is_hermitian() and p.is_hermitian()
    assert q.exact_rows == p.exact_rows == dim - 1


def test_number_operator_identity_dim16():
    q, p = build_qp(16)
    half = 0.5 * (q @ q + p @ p)
    want = build_number(16) + 0.5
    assert half.exact_rows == 14
    assert np.allclose(half.trusted(), want.entries[:14, :14], atol=1e-13)


def test_number_is_up_down():
    up, down = build_ladder(6)
    assert np.allclose((up @ down).entries, build_number(6).entries)
    assert np.array_equal(build_number(3).entries, np.diag([0, 1, 2]))


def test_number_commutes_with_diagonals(rng):
    n = build_number(12)
    d = FockOperator(12, np.diag(rng.normal(size=12)), 12)
    assert np.allclose((n @ d - d @ n).entries, 0)


@pytest.mark.parametrize("n,m,want", [(5, 1, 0.0), (3, 2, 3.5), (0, 4, 0.75), (2, 3, 0.0), (1, 4, 3.75)])
def test_q_moment_values(n, m, want):
    assert q_moment(n, m) == pytest.approx(want, abs=1e-13)


def test_q_moment_rejects_negative():
    with pytest.raises(ValueError):
        q_moment(-1, 2)
    with pytest.raises(ValueError):
        q_moment(1, -2)


def _q_moment_combinatorial(n, m):
    # <n|(a+a^dag)^m|n> / 2^{m/2}: count Dyck-like paths with exact sqrt weights
    from collections import defaultdict
    amps = {n: 1.0}
    for _ in range(m):
        nxt = defaultdict(float)
        for level, a in amps.items():
            nxt[level + 1] += sqrt(level + 1) * a
            if level:
                nxt[level - 1] += sqrt(level) * a
        amps = nxt
    return amps.get(n, 0.0) / 2 ** (m / 2)


@given(st.integers(0, 30), st.integers(0, 12))
def test_q_moment_matches_path_count(n, m):
    assert q_moment(n, m) == pytest.approx(_q_moment_combinatorial(n, m), rel=1e-12, abs=1e-12)


@given(st.integers(0, 40))
def test_q_moment_second_is_n_plus_half(n):
    assert q_moment(n, 2) == pytest.approx(n + 0.5, abs=1e-12)


@given(st.integers(3, 30), st.integers(1, 8))
def test_exact_rows_track_truncation(dim, m):
    # the trusted block of Q^m must agree with a much larger truncation
    q, _ = build_qp(dim)
    big, _ = build_qp(dim + m + 2)
    qm = q ** m
    size = qm.exact_rows
    assert size == max(dim - m, 0)
    assert np.allclose(qm.trusted(), (big ** m).entries[:size, :size], atol=1e-9)


def test_operator_algebra():
    q, p = build_qp(6)
    assert np.allclose((2 * q - q).entries, q.entries)
    assert np.allclose((q / 2 + q / 2).entries, q.entries)
    assert np.allclose((1.0 + q - 1.0).entries, q.entries)
    assert np.allclose((-q).entries, -q.entries)
    assert np.allclose((q ** 0).entries, identity(6).entries)
    with pytest.raises(ValueError):
        q.entries[0, 0] = 1


def test_operator_json_round_trip():
    _, p = build_qp(4)
    back = FockOperator.from_json(p.to_json())
    assert np.array_equal(back.entries, p.entries)
    assert back.exact_rows == p.exact_rows


def test_expectation_of_basis_state():
    n = build_number(10)
    assert n.expectation(basis_state(7, 10)) == pytest.approx(7)


def test_vector_helpers(rng):
    v = random_state(rng, 6, dim=10)
    assert v.dim == 10 and v.is_normalized()
    assert np.all(v.coeffs[6:] == 0)
    w = FockVector(np.array([3.0, 4.0])).normalized()
    assert w.norm2 == pytest.approx(1)
    assert w.padded(5).dim == 5


def test_displaced_vacuum_poisson_weights():
    q0, p0 = 1.2, -0.7
    v = displaced_vacuum(q0, p0, dim=64)
    mean = (q0 ** 2 + p0 ** 2) / 2
    want = [np.exp(-mean) * mean ** k / factorial(k) for k in range(20)]
    assert np.allclose(np.abs(v.coeffs[:20]) ** 2, want, atol=1e-14)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_displaced_vacuum_quadrature_means(q0, p0):
    q, p = build_qp(64)
    v = displaced_vacuum(q0, p0, dim=64)
    assert q.expectation(v).real == pytest.approx(q0, abs=1e-9)
    assert p.expectation(v).real == pytest.approx(p0, abs=1e-9)
