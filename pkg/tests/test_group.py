"""Haar sampling, Euler charts, adjoint frames, and Weingarten moment checks.

The closed-form chart factors and frame vectors are checked against
matrix-exponential and trace-definition oracles built independently here.
"""
import math
import warnings

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from swphase import (
    SU3_VOLUME,
    DomainError,
    EulerSU2,
    EulerSU3,
    PhasePoint,
    ValidationError,
    ad_t_matrix,
    adjoint_frame,
    adjoint_matrix,
    adjoint_vector,
    gell_mann_basis,
    haar_batch,
    haar_sample,
    n3_closed_form,
    n8_closed_form,
    nprime_closed_form,
    nprime_rotation,
    su2_coset,
    su3_from_euler,
    weingarten2_check,
    weingarten4_check,
)

B3 = gell_mann_basis(3)

in_range_angles = st.tuples(
    st.floats(0.0, 2 * math.pi),  # alpha
    st.floats(0.0, math.pi),      # beta
    st.floats(0.0, 4 * math.pi),  # gamma
    st.floats(0.0, 2 * math.pi),  # a
    st.floats(0.0, math.pi),      # b
    st.floats(0.0, 4 * math.pi),  # c
    st.floats(0.0, math.pi / 2),  # theta
    st.floats(0.0, math.sqrt(3.0) * math.pi),  # phi
)


def euler_via_expm(e: EulerSU3) -> np.ndarray:
    """The chart product built from matrix exponentials only."""
    g = B3.generators

    def v(x, y, z):
        return (
            scipy.linalg.expm(0.5j * x * g[2])
            @ scipy.linalg.expm(0.5j * y * g[1])
            @ scipy.linalg.expm(0.5j * z * g[2])
        )

    return (
        v(e.alpha, e.beta, e.gamma)
        @ scipy.linalg.expm(1j * e.theta * g[4])
        @ v(e.a, e.b, e.c)
        @ scipy.linalg.expm(1j * e.phi * g[7])
    )


# --------------------------------------------------------------------------
# Haar sampling


@pytest.mark.parametrize("n", [2, 3, 4])
def test_haar_batch_special_unitary(n):
    u = haar_batch(n, seed=0, start=0, count=100)
    assert u.shape == (100, n, n)
    eye = np.eye(n)
    assert np.max(np.abs(np.einsum("kij,klj->kil", u, u.conj()) - eye)) < 1e-13
    assert np.max(np.abs(np.linalg.det(u) - 1.0)) < 1e-12


def test_haar_partition_independent():
    whole = haar_batch(3, seed=9, start=0, count=23)
    head = haar_batch(3, seed=9, start=0, count=11)
    tail = haar_batch(3, seed=9, start=11, count=12)
    assert np.array_equal(whole, np.vstack([head, tail]))


def test_haar_sample_is_first_of_batch():
    p = haar_sample(3, seed=5)
    assert isinstance(p, PhasePoint)
    assert np.array_equal(p.u, haar_batch(3, seed=5, start=0, count=1)[0])


def test_haar_first_moment():
    # E |U_11|^2 = 1/N under the invariant measure.
    u = haar_batch(3, seed=2, start=0, count=40_000)
    m = np.abs(u[:, 0, 0]) ** 2
    assert abs(m.mean() - 1 / 3) < 5 * m.std() / math.sqrt(m.size)


def test_phase_point_validates_unitarity():
    with pytest.raises(ValidationError):
        PhasePoint(dim_n=2, u=np.ones((2, 2), dtype=complex))


# --------------------------------------------------------------------------
# Euler charts


def test_su3_volume_constant():
    assert SU3_VOLUME == pytest.approx(math.sqrt(3.0) * math.pi**5)


@settings(max_examples=30, deadline=None)
@given(angles=in_range_angles)
def test_su3_chart_matches_expm(angles):
    e = EulerSU3(*angles)
    point = su3_from_euler(e, B3)
    assert point.chart is e
    np.testing.assert_allclose(point.u, euler_via_expm(e), atol=1e-12)


def test_su3_chart_at_origin_is_identity():
    np.testing.assert_allclose(su3_from_euler(EulerSU3(), B3).u, np.eye(3), atol=1e-15)


def test_su3_chart_needs_qutrit_basis():
    with pytest.raises(ValidationError):
        su3_from_euler(EulerSU3(), gell_mann_basis(4))


@settings(max_examples=30, deadline=None)
@given(alpha=st.floats(0.0, 2 * math.pi), beta=st.floats(0.0, math.pi))
def test_su2_coset_frame(alpha, beta):
    x = su2_coset(EulerSU2(alpha=alpha, beta=beta)).u
    assert abs(np.linalg.det(x) - 1.0) < 1e-14
    sigma = gell_mann_basis(2).generators
    frame = 0.5 * np.einsum("ij,j,lj,mli->m", x, np.diag(sigma[2]), x.conj(), sigma).real
    expected = np.array(
        [-math.cos(alpha) * math.sin(beta), math.sin(alpha) * math.sin(beta), math.cos(beta)]
    )
    np.testing.assert_allclose(frame, expected, atol=1e-13)


def test_out_of_range_angles_warn():
    with pytest.warns(UserWarning, match="theta"):
        EulerSU3(theta=2.0)
    with pytest.warns(UserWarning, match="qubit chart"):
        EulerSU2(beta=4.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        EulerSU3(alpha=1.0, beta=1.0, theta=0.5)  # in range: no warning


# --------------------------------------------------------------------------
# adjoint machinery


def test_adjoint_matrix_orthogonal_and_composes():
    u = haar_sample(3, seed=21).u
    v = haar_sample(3, seed=22).u
    mu = adjoint_matrix(u, B3)
    np.testing.assert_allclose(mu @ mu.T, np.eye(8), atol=1e-12)
    np.testing.assert_allclose(
        adjoint_matrix(u @ v, B3), mu @ adjoint_matrix(v, B3), atol=1e-12
    )


def test_adjoint_vector_is_matrix_column():
    p = haar_sample(3, seed=33)
    m = adjoint_matrix(p.u, B3)
    np.testing.assert_allclose(adjoint_vector(p, 3, B3), m[:, 2], atol=1e-13)
    np.testing.assert_allclose(adjoint_vector(p, 8, B3), m[:, 7], atol=1e-13)
    frame = adjoint_frame(p, B3)
    np.testing.assert_allclose(frame.n3, m[:, 2], atol=1e-13)
    np.testing.assert_allclose(frame.n8, m[:, 7], atol=1e-13)


def test_adjoint_vector_rejects_non_cartan_label():
    p = haar_sample(3, seed=1)
    with pytest.raises(DomainError):
        adjoint_vector(p, 5, B3)


@settings(max_examples=40, deadline=None)
@given(angles=in_range_angles)
def test_frame_closed_forms_match_trace_route(angles):
    e = EulerSU3(*angles)
    p = su3_from_euler(e, B3)
    np.testing.assert_allclose(n3_closed_form(e), adjoint_vector(p, 3, B3), atol=1e-12)
    np.testing.assert_allclose(n8_closed_form(e), adjoint_vector(p, 8, B3), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    angles=in_range_angles,
    a2=st.floats(0.0, 2 * math.pi),
    b2=st.floats(0.0, math.pi),
    c2=st.floats(0.0, 4 * math.pi),
    phi2=st.floats(0.0, math.sqrt(3.0) * math.pi),
)
def test_n8_ignores_isotropy_angles(angles, a2, b2, c2, phi2):
    e = EulerSU3(*angles)
    other = EulerSU3(e.alpha, e.beta, e.gamma, a2, b2, c2, e.theta, phi2)
    np.testing.assert_allclose(n8_closed_form(e), n8_closed_form(other), atol=1e-12)


def test_nprime_zero_angles():
    np.testing.assert_allclose(
        nprime_closed_form(0.0, 0.0, 0.0, 0.0),
        [0, 0, math.sqrt(3) / 2, 0, 0, 0, 0, 0.5],
        atol=1e-15,
    )


def adapted_coset_via_expm(alpha, beta, gamma, theta):
    """The four-angle adapted coset factor, from matrix exponentials."""
    g = B3.generators
    h = np.diag([0.0, 1.0, -1.0]).astype(complex)  # su(2) Cartan of the lower-corner embedding

    def vprime(x, y, z):
        return (
            scipy.linalg.expm(0.5j * x * h)
            @ scipy.linalg.expm(0.5j * y * g[6])
            @ scipy.linalg.expm(0.5j * z * h)
        )

    return vprime(alpha, beta, gamma) @ scipy.linalg.expm(1j * theta * g[4])


@pytest.mark.parametrize("seed", range(12))
def test_nprime_matches_trace_definition(seed):
    rng = np.random.default_rng(seed)
    alpha, beta, gamma, theta = rng.uniform(0.0, 2 * math.pi, size=4)
    u = adapted_coset_via_expm(alpha, beta, gamma, theta)
    lam_c = np.diag([2.0, -1.0, -1.0]) / math.sqrt(3.0)
    oracle = 0.5 * np.einsum("ij,jk,lk,mli->m", u, lam_c.astype(complex), u.conj(), B3.generators).real
    np.testing.assert_allclose(nprime_closed_form(alpha, beta, gamma, theta), oracle, atol=1e-12)


def test_ad_t_matrix_frozen_table():
    s = math.sqrt(3.0) / 2.0
    expected = np.zeros((8, 8))
    expected[0, 5] = 1.0
    expected[1, 6] = -1.0
    expected[2, 2] = 0.5
    expected[2, 7] = -s
    expected[3, 3] = 1.0
    expected[4, 4] = -1.0
    expected[5, 0] = 1.0
    expected[6, 1] = -1.0
    expected[7, 2] = -s
    expected[7, 7] = -0.5
    np.testing.assert_allclose(ad_t_matrix(), expected, atol=1e-15)


def test_nprime_rotation_constant_orthogonal():
    r = nprime_rotation()
    np.testing.assert_allclose(r @ r.T, np.eye(8), atol=1e-14)
    parity = np.diag([-1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0])
    np.testing.assert_allclose(r, -ad_t_matrix() @ parity, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(
    alpha=st.floats(0.0, 2 * math.pi),
    beta=st.floats(0.0, math.pi),
    gamma=st.floats(0.0, 4 * math.pi),
    theta=st.floats(0.0, math.pi / 2),
)
def test_adapted_frame_is_rotated_reduced_frame(alpha, beta, gamma, theta):
    e = EulerSU3(alpha=alpha, beta=beta, gamma=gamma, theta=theta)
    lhs = nprime_closed_form(alpha, beta, gamma, theta)
    np.testing.assert_allclose(lhs, nprime_rotation() @ n8_closed_form(e), atol=1e-12)


# --------------------------------------------------------------------------
# Weingarten moments


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weingarten2_diagonal_pattern(n):
    r = weingarten2_check(n, (1, 1, 1, 1), samples=30_000, seed=4)
    assert r.closed_form == pytest.approx(1.0 / n)
    assert abs(r.mc.real - r.closed_form) < 5 * r.sigma


def test_weingarten2_zero_pattern():
    r = weingarten2_check(2, (1, 1, 1, 2), samples=30_000, seed=4)
    assert r.closed_form == 0.0
    assert abs(r.mc) < 5 * r.sigma


@pytest.mark.parametrize(
    "pattern, value",
    [
        ((1, 1, 1, 1, 1, 1, 1, 1), lambda n: 2.0 / (n * (n + 1))),
        ((1, 1, 2, 2, 1, 1, 2, 2), lambda n: 1.0 / (n * n - 1)),
        ((1, 1, 2, 2, 2, 1, 1, 2), lambda n: -1.0 / (n * (n * n - 1))),
        ((1, 1, 2, 1, 1, 1, 2, 1), lambda n: 0.0),
    ],
)
def test_weingarten4_closed_forms(pattern, value):
    n = 3
    r = weingarten4_check(n, pattern, samples=30_000, seed=8)
    assert r.closed_form == pytest.approx(value(n), abs=1e-15)
    assert abs(r.mc.real - r.closed_form) < 5 * r.sigma


def test_weingarten_index_validation():
    with pytest.raises(DomainError):
        weingarten2_check(2, (0, 1, 1, 1), samples=10_000, seed=0)  # 1-based indices
    with pytest.raises(DomainError):
        weingarten2_check(2, (1, 1, 3, 1), samples=10_000, seed=0)  # out of range
    with pytest.raises(DomainError):
        weingarten4_check(2, (1, 1, 1, 1), samples=10_000, seed=0)  # wrong arity
    with pytest.raises(DomainError):
        weingarten2_check(2, (1, 1, 1, 1), samples=10, seed=0)  # too few samples


def test_weingarten_deterministic():
    a = weingarten4_check(3, (1, 2, 2, 1, 1, 2, 2, 1), samples=20_000, seed=12)
    b = weingarten4_check(3, (1, 2, 2, 1, 1, 2, 2, 1), samples=20_000, seed=12)
    assert a.mc == b.mc and a.sigma == b.sigma
