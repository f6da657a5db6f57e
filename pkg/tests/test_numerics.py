"""Numerical kernel: eigensolvers, SVD-backed helpers, JSON round trips.

Frozen oracle values were computed by hand (2x2 closed forms) or by an
independent least-squares check, then pinned here.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framekit.errors import NotHermitian
from framekit.numerics import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    herm_eig,
    hermitize,
    is_psd,
    numerical_rank,
    op_norm,
    operator_from_json,
    operator_to_json,
    pinv,
    range_inclusion,
    svd,
)


def test_tolerance_defaults_and_validation():
    assert DEFAULT_TOL.psd_floor == 1e-9
    assert DEFAULT_TOL.rank_rel == 1e-10
    assert DEFAULT_TOL.verdict_rel == 1e-8
    with pytest.raises(ValueError):
        Tolerance(psd_floor=-1.0)
    with pytest.raises(ValueError):
        Tolerance(rank_rel=float("nan"))


def test_adjoint_and_hermitize():
    m = np.array([[1.0 + 2j, 3.0], [0.0, -1j]])
    assert np.allclose(adjoint(m), m.conj().T)
    h = hermitize(m)
    assert np.allclose(h, h.conj().T)
    # hermitize is a projection: fixed on Hermitian input
    assert np.allclose(hermitize(h), h)


def test_op_norm_closed_form():
    # diag norms and the rank-1 all-ones matrix (norm = dimension)
    assert op_norm(np.diag([3.0, -7.0, 2.0])) == pytest.approx(7.0)
    assert op_norm(np.ones((4, 4))) == pytest.approx(4.0)
    assert op_norm(np.zeros((3, 2))) == 0.0


def test_herm_eig_two_by_two_oracle():
    # [[2,1],[1,2]] has eigenvalues 1 and 3 with eigenvectors (1,-1), (1,1)/sqrt2
    h = np.array([[2.0, 1.0], [1.0, 2.0]])
    vals, vecs = herm_eig(h)
    assert np.allclose(vals, [1.0, 3.0], atol=1e-12)
    assert np.allclose(h @ vecs, vecs @ np.diag(vals), atol=1e-12)
    # ascending order and orthonormal columns
    assert vals[0] <= vals[1]
    assert np.allclose(vecs.conj().T @ vecs, np.eye(2), atol=1e-12)


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_herm_eig_reconstructs_random_hermitian():
    rng = np.random.default_rng(7021)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = hermitize(a @ a.conj().T + a + a.conj().T)
        vals, vecs = herm_eig(h)
        assert np.all(np.diff(vals) >= -1e-12)
        back = vecs @ np.diag(vals) @ vecs.conj().T
        assert np.allclose(back, h, atol=1e-10 * max(1.0, op_norm(h)))


def test_svd_convention():
    m = np.array([[0.0, 2.0], [1.0, 0.0], [0.0, 0.0]])
    left, s, right = svd(m)
    assert np.allclose(s, [2.0, 1.0])  # descending
    back = left @ np.diag(s) @ adjoint(right)
    assert np.allclose(back, m, atol=1e-12)


def test_numerical_rank():
    v = np.array([1.0, 2.0, -1.0])
    assert numerical_rank(np.outer(v, v)) == 1
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.zeros((3, 3))) == 0
    # a perturbation below the relative cutoff does not raise the rank
    m = np.outer(v, v) + 1e-14 * np.eye(3)
    assert numerical_rank(m) == 1


def test_pinv_rank_one_oracle():
    # J = all-ones 2x2: J = u s v* with s = 2, so pinv(J) = J / 4
    j = np.ones((2, 2))
    assert np.allclose(pinv(j), j / 4.0, atol=1e-13)


def test_pinv_penrose_identities():
    rng = np.random.default_rng(3344)
    for _ in range(20):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, 7))
        m = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
        p = pinv(m)
        scale = max(1.0, op_norm(m))
        assert np.allclose(m @ p @ m, m, atol=1e-10 * scale)
        assert np.allclose(p @ m @ p, p, atol=1e-10 * max(1.0, op_norm(p)))
        assert np.allclose(adjoint(m @ p), m @ p, atol=1e-10)
        assert np.allclose(adjoint(p @ m), p @ m, atol=1e-10)


def test_pinv_is_an_involution_up_to_rank():
    rng = np.random.default_rng(91)
    m = rng.normal(size=(5, 3))
    assert np.allclose(pinv(pinv(m)), m, atol=1e-10)


def test_is_psd_verdicts():
    ok, mineig = is_psd(np.eye(3))
    assert ok and mineig == pytest.approx(1.0)
    ok, mineig = is_psd(np.diag([1.0, -1.0]))
    assert not ok and mineig == pytest.approx(-1.0)
    # tiny negative eigenvalue inside the floor still passes
    ok, _ = is_psd(np.diag([1.0, -1e-12]))
    assert ok


def test_range_inclusion_frozen_oracle():
    # range(e1 e1*) = span(e1) is NOT inside range([[1,1],[1,1]]) = span((1,1));
    # verified independently with a least-squares residual check.
    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    b = np.ones((2, 2))
    assert range_inclusion(a, b) is False
    assert range_inclusion(b, b) is True
    # the zero operator's range sits inside anything; nothing nonzero fits in it
    z = np.zeros((2, 2))
    assert range_inclusion(z, a) is True
    assert range_inclusion(a, z) is False


def test_range_inclusion_random_factorizations():
    rng = np.random.default_rng(556)
    for _ in range(15):
        n = int(rng.integers(2, 8))
        b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        s = rng.normal(size=(n, n))
        assert range_inclusion(b @ s, b) is True


def test_operator_json_round_trip():
    m = np.array([[1.0 + 2j, -3.0], [0.5j, 4.0]])
    doc = operator_to_json(m)
    assert doc["rows"] == 2 and doc["cols"] == 2
    assert np.allclose(operator_from_json(doc), m)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2**31))
def test_hermitize_output_has_real_diagonal(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = hermitize(a)
    assert np.allclose(h.imag.diagonal(), 0.0, atol=1e-14)
    assert np.allclose(h, adjoint(h))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=2**31))
def test_op_norm_triangle_and_scaling(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    b = rng.normal(size=(n, n))
    assert op_norm(a + b) <= op_norm(a) + op_norm(b) + 1e-12
    assert op_norm(2.5 * a) == pytest.approx(2.5 * op_norm(a))
