"""SU(N) machinery: Haar sampling, Euler charts, adjoint frame vectors, Weingarten oracles.

Haar samples are generated from complex Ginibre matrices by QR
orthonormalization with the standard phase correction, then pushed from U(N)
to SU(N) by dividing the first column by the determinant (a measure-preserving
move for every balanced observable: the overall U(1) phase cancels between
`U` and `U*` factors, so all Weingarten moments used here are unchanged).
Sampling follows the counter-based substream contract of `_streams`, making
every Monte Carlo result independent of batching.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from ._streams import counter_normals
from .algebra import GellMannBasis, gell_mann_basis
from .config import TOLERANCES
from .errors import DomainError, ValidationError

__all__ = [
    "PhasePoint",
    "EulerSU3",
    "EulerSU2",
    "AdjointFrame",
    "haar_sample",
    "haar_batch",
    "su3_from_euler",
    "su2_coset",
    "adjoint_vector",
    "adjoint_matrix",
    "adjoint_frame",
    "n3_closed_form",
    "n8_closed_form",
    "nprime_closed_form",
    "ad_t_matrix",
    "nprime_rotation",
    "weingarten2_check",
    "weingarten4_check",
    "MomentCheck",
]

_BATCH = 1 << 16

#: Invariant volume of SU(3) in the Euler chart, sqrt(3) * pi**5.  Recorded for
#: documentation only; all integrals in this package are Monte Carlo averages
#: against the normalized Haar measure, so the volume never enters.
SU3_VOLUME = math.sqrt(3.0) * math.pi**5


@dataclass(frozen=True)
class EulerSU3:
    """Euler angles of the SU(3) chart `V(alpha,beta,gamma) e^{i theta g5} V(a,b,c) e^{i phi g8}`.

    The chart covers the group for alpha, a in [0, 2pi], beta, b in [0, pi],
    gamma, c in [0, 4pi], theta in [0, pi/2], phi in [0, sqrt(3) pi].  Angles
    outside these ranges only trigger a warning: the closed-form identities in
    this module hold for all real angles, and tests sweep freely.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        ranges = {
            "alpha": (self.alpha, 2.0 * math.pi),
            "beta": (self.beta, math.pi),
            "gamma": (self.gamma, 4.0 * math.pi),
            "a": (self.a, 2.0 * math.pi),
            "b": (self.b, math.pi),
            "c": (self.c, 4.0 * math.pi),
            "theta": (self.theta, math.pi / 2.0),
            "phi": (self.phi, math.sqrt(3.0) * math.pi),
        }
        off = [name for name, (value, hi) in ranges.items() if not 0.0 <= value <= hi]
        if off:
            warnings.warn(f"Euler angle(s) outside the chart ranges: {', '.join(off)}", stacklevel=3)


@dataclass(frozen=True)
class EulerSU2:
    """Angles of the qubit coset chart `e^{i alpha/2 s3} e^{i beta/2 s2} e^{-i alpha/2 s3}`."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 2.0 * math.pi and 0.0 <= self.beta <= math.pi):
            warnings.warn("qubit chart angles outside [0, 2pi] x [0, pi]", stacklevel=3)


@dataclass(frozen=True)
class PhasePoint:
    """A phase-space point: a special-unitary matrix, optionally with its Euler chart."""

    dim_n: int
    u: np.ndarray
    chart: EulerSU3 | EulerSU2 | None = None

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        n = self.dim_n
        if u.shape != (n, n):
            raise ValidationError(f"expected a {n}x{n} matrix, got shape {u.shape}")
        if np.max(np.abs(u.conj().T @ u - np.eye(n))) > TOLERANCES.spectral:
            raise ValidationError("phase-space matrix is not unitary within tolerance")
        if abs(np.linalg.det(u) - 1.0) > TOLERANCES.spectral:
            raise ValidationError("phase-space matrix determinant differs from 1 beyond tolerance")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "u", u)


@dataclass(frozen=True)
class AdjointFrame:
    """The orthonormal pair of Cartan adjoint vectors of an SU(3) element."""

    n3: np.ndarray
    n8: np.ndarray


def haar_batch(n: int, seed: int, start: int, count: int) -> np.ndarray:
    """Haar samples `start .. start+count-1` on SU(N), shape `(count, n, n)`.

    Sample `k` depends only on `(n, seed, k)`, so runs with different batch
    splits or sample totals share their common prefix bit-for-bit.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    z = counter_normals(seed, start, count, 2 * n * n)
    g = (z[:, : n * n] + 1j * z[:, n * n :]).reshape(count, n, n) / math.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.einsum("kii->ki", r)
    q *= (d / np.abs(d))[:, None, :]
    q[:, :, 0] /= np.linalg.det(q)[:, None]
    return q


def haar_sample(n: int, seed: int) -> PhasePoint:
    """A single seeded Haar-random phase-space point on SU(N)."""
    return PhasePoint(dim_n=n, u=haar_batch(n, seed, 0, 1)[0])


def _rot_real(n: int, i: int, j: int, angle: float) -> np.ndarray:
    """exp of `angle` times the antisymmetric generator in the (i, j) plane."""
    m = np.eye(n, dtype=complex)
    c, s = math.cos(angle), math.sin(angle)
    m[i, i] = c
    m[j, j] = c
    m[i, j] = s
    m[j, i] = -s
    return m


def _phase_diag(phases: Sequence[float]) -> np.ndarray:
    return np.diag(np.exp(1j * np.asarray(phases, dtype=float)))


def _v_factor(a: float, b: float, c: float) -> np.ndarray:
    """The SU(2) block `e^{i a/2 g3} e^{i b/2 g2} e^{i c/2 g3}` embedded in levels (1, 2)."""
    return (
        _phase_diag([a / 2.0, -a / 2.0, 0.0])
        @ _rot_real(3, 0, 1, b / 2.0)
        @ _phase_diag([c / 2.0, -c / 2.0, 0.0])
    )


def su3_from_euler(e: EulerSU3, basis: GellMannBasis) -> PhasePoint:
    """Evaluate the SU(3) Euler chart at `e`.

    The five factors are one-parameter subgroups of the generators g3, g2,
    g5, g8 of `basis`, multiplied in closed form (diagonal phases and real
    plane rotations) rather than by matrix exponentials.
    """
    if basis.dim_n != 3:
        raise ValidationError(f"Euler chart needs the N=3 basis, got N={basis.dim_n}")
    s3 = math.sqrt(3.0)
    u = (
        _v_factor(e.alpha, e.beta, e.gamma)
        @ _rot_real(3, 0, 2, e.theta)
        @ _v_factor(e.a, e.b, e.c)
        @ _phase_diag([e.phi / s3, e.phi / s3, -2.0 * e.phi / s3])
    )
    return PhasePoint(dim_n=3, u=u, chart=e)


def su2_coset(e: EulerSU2) -> PhasePoint:
    """Evaluate the qubit coset chart at `e`.

    Closed form: `[[cos(b/2), e^{i a} sin(b/2)], [-e^{-i a} sin(b/2), cos(b/2)]]`
    with `a = alpha`, `b = beta`.
    """
    c, s = math.cos(e.beta / 2.0), math.sin(e.beta / 2.0)
    ph = np.exp(1j * e.alpha)
    u = np.array([[c, ph * s], [-np.conj(ph) * s, c]])
    return PhasePoint(dim_n=2, u=u, chart=e)


def adjoint_vector(p: PhasePoint, cartan_index: int, basis: GellMannBasis) -> np.ndarray:
    """The adjoint-representation image of a Cartan direction at phase point `p`.

    Component `m` is `tr(U g_c U^dag g_m) / 2` for the 1-based Cartan label
    `c = cartan_index`; always a unit vector, and vectors for distinct Cartan
    labels are mutually orthogonal.
    """
    if cartan_index not in basis.cartan_indices:
        raise DomainError(f"label {cartan_index} is not a Cartan label {basis.cartan_indices}")
    u = p.u
    rotated = u @ basis.generator(cartan_index) @ u.conj().T
    vec = np.einsum("ij,aji->a", rotated, basis.generators).real / 2.0
    vec.setflags(write=False)
    return vec


def adjoint_matrix(u: np.ndarray, basis: GellMannBasis) -> np.ndarray:
    """The adjoint representation matrix of `u`: `M[m, v] = tr(u g_v u^dag g_m) / 2`.

    Orthogonal, and composes covariantly with the frame vectors:
    `adjoint_vector(V U, c) = adjoint_matrix(V) @ adjoint_vector(U, c)`.
    """
    rotated = np.einsum("ij,ajk,lk->ail", u, basis.generators, u.conj())
    return np.einsum("ail,mli->ma", rotated, basis.generators).real / 2.0


def adjoint_frame(p: PhasePoint, basis: GellMannBasis) -> AdjointFrame:
    """Both Cartan adjoint vectors of an SU(3) phase point."""
    if p.dim_n != 3:
        raise ValidationError(f"adjoint frame is defined for N=3, got N={p.dim_n}")
    return AdjointFrame(
        n3=adjoint_vector(p, 3, basis),
        n8=adjoint_vector(p, 8, basis),
    )


def n3_closed_form(e: EulerSU3) -> np.ndarray:
    """Closed-form adjoint vector of the g3 direction in the SU(3) Euler chart.

    Depends on six of the eight angles (c and phi drop out).  Matches the
    trace definition `adjoint_vector(su3_from_euler(e), 3)` to round-off for
    all real angles.
    """
    al, be, ga, a, b, th = e.alpha, e.beta, e.gamma, e.a, e.b, e.theta
    sb, cb = math.sin(b), math.cos(b)
    cth = math.cos(th)
    s2t = math.sin(2.0 * th)
    flat = 1.0 - 0.5 * math.sin(th) ** 2
    sbe2, cbe2 = math.sin(be / 2.0), math.cos(be / 2.0)
    sth = math.sin(th)
    return np.array(
        [
            sb * cth * (math.sin(al) * math.sin(a + ga) - math.cos(al) * math.cos(be) * math.cos(a + ga))
            - math.cos(al) * math.sin(be) * cb * flat,
            sb * cth * (math.cos(al) * math.sin(a + ga) + math.sin(al) * math.cos(be) * math.cos(a + ga))
            + math.sin(al) * math.sin(be) * cb * flat,
            -math.sin(be) * sb * cth * math.cos(a + ga) + math.cos(be) * cb * flat,
            sb * sth * sbe2 * math.cos(a + (ga - al) / 2.0)
            - 0.5 * cb * s2t * cbe2 * math.cos((al + ga) / 2.0),
            sb * sth * sbe2 * math.sin(a + (ga - al) / 2.0)
            + 0.5 * cb * s2t * cbe2 * math.sin((al + ga) / 2.0),
            sb * sth * cbe2 * math.cos(a + (al + ga) / 2.0)
            + 0.5 * cb * s2t * sbe2 * math.cos((al - ga) / 2.0),
            sb * sth * cbe2 * math.sin(a + (al + ga) / 2.0)
            + 0.5 * cb * s2t * sbe2 * math.sin((al - ga) / 2.0),
            -math.sqrt(3.0) / 2.0 * cb * sth**2,
        ]
    )


def n8_closed_form(e: EulerSU3) -> np.ndarray:
    """Closed-form adjoint vector of the g8 direction in the SU(3) Euler chart.

    Depends only on the four angles (alpha, beta, gamma, theta); a, b, c and
    phi drop out because the g8 direction commutes with the right factors of
    the chart.
    """
    al, be, ga, th = e.alpha, e.beta, e.gamma, e.theta
    s32 = math.sqrt(3.0) / 2.0
    sth2 = math.sin(th) ** 2
    s2t = math.sin(2.0 * th)
    sbe2, cbe2 = math.sin(be / 2.0), math.cos(be / 2.0)
    return np.array(
        [
            s32 * math.cos(al) * math.sin(be) * sth2,
            -s32 * math.sin(al) * math.sin(be) * sth2,
            -s32 * math.cos(be) * sth2,
            -s32 * math.cos((al + ga) / 2.0) * cbe2 * s2t,
            s32 * math.sin((al + ga) / 2.0) * cbe2 * s2t,
            s32 * math.cos((al - ga) / 2.0) * sbe2 * s2t,
            s32 * math.sin((al - ga) / 2.0) * sbe2 * s2t,
            1.0 - 1.5 * sth2,
        ]
    )


def nprime_closed_form(alpha: float, beta: float, gamma: float, theta: float) -> np.ndarray:
    """Closed-form adjoint vector of the distinguished Cartan direction in the adapted chart.

    The adapted chart embeds its SU(2) blocks in the lower-right corner and
    diagonalizes kernels whose degenerate eigenvalue pair sits in levels
    (2, 3); the conjugated direction is `diag(2, -1, -1)/sqrt(3)`, i.e.
    `(sqrt(3) g3 + g8) / 2`.  Depends only on the four listed angles and
    always has unit norm.
    """
    s32 = math.sqrt(3.0) / 2.0
    sth2 = math.sin(theta) ** 2
    s2t = math.sin(2.0 * theta)
    sbe2, cbe2 = math.sin(beta / 2.0), math.cos(beta / 2.0)
    return np.array(
        [
            -s32 * math.cos((alpha - gamma) / 2.0) * sbe2 * s2t,
            -s32 * math.sin((alpha - gamma) / 2.0) * sbe2 * s2t,
            s32 * (math.cos(theta) ** 2 - sbe2**2 * sth2),
            -s32 * math.cos((alpha + gamma) / 2.0) * cbe2 * s2t,
            s32 * math.sin((alpha + gamma) / 2.0) * cbe2 * s2t,
            s32 * math.cos(alpha) * math.sin(beta) * sth2,
            -s32 * math.sin(alpha) * math.sin(beta) * sth2,
            0.5 * (1.0 - 3.0 * cbe2**2 * sth2),
        ]
    )


@lru_cache(maxsize=1)
def ad_t_matrix() -> np.ndarray:
    """The adjoint matrix of the basis permutation swapping levels 1 and 3.

    Computed from the defining trace formula with the permutation matrix
    `T = [[0,0,1],[0,1,0],[1,0,0]]`; the adjoint action is insensitive to the
    overall phase that would put `T` itself into SU(3).  Orthogonal and
    involutive.
    """
    t = np.zeros((3, 3), dtype=complex)
    t[0, 2] = t[1, 1] = t[2, 0] = 1.0
    m = adjoint_matrix(t, gell_mann_basis(3))
    m.setflags(write=False)
    return m


@lru_cache(maxsize=1)
def nprime_rotation() -> np.ndarray:
    """The constant orthogonal matrix `R` with `nprime(w) = R @ n8(w)` for all angles `w`.

    The adapted chart at angles `w = (alpha, beta, gamma, theta)` equals the
    level-1/3 permutation conjugate of the standard chart at `-w`, and the
    conjugated Cartan direction `diag(2,-1,-1)/sqrt(3)` is minus the
    permutation image of the g8 direction.  Hence
    `nprime(w) = -Ad_T @ n8(-w) = (-Ad_T @ D) @ n8(w)`, where the diagonal
    sign matrix `D` is the parity of the n8 components under
    `w -> -w` (components 1, 4 and 7 are odd, the rest even).
    """
    parity = np.diag([-1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0])
    r = -ad_t_matrix() @ parity
    r.setflags(write=False)
    return r


class MomentCheck(NamedTuple):
    """Result of a Monte Carlo moment test against a closed form."""

    mc: complex
    closed_form: float
    sigma: float


def _check_indices(n: int, indices: Sequence[int], arity: int) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    if len(idx) != arity:
        raise DomainError(f"expected {arity} indices, got {len(idx)}")
    if any(not 1 <= i <= n for i in idx):
        raise DomainError(f"indices must lie in 1..{n}, got {idx}")
    return idx


def _moment_values(n: int, seed: int, samples: int, fill) -> np.ndarray:
    if samples < 10_000:
        raise DomainError(f"need at least 10000 samples, got {samples}")
    values = np.empty(samples, dtype=complex)
    for start in range(0, samples, _BATCH):
        count = min(_BATCH, samples - start)
        u = haar_batch(n, seed, start, count)
        values[start : start + count] = fill(u)
    return values


def _moment_check(values: np.ndarray, closed_form: float) -> MomentCheck:
    mc = complex(values.mean())
    sigma = float(values.real.std() / math.sqrt(len(values)))
    return MomentCheck(mc=mc, closed_form=closed_form, sigma=sigma)


def weingarten2_check(n: int, indices: Sequence[int], samples: int, seed: int) -> MomentCheck:
    """Monte Carlo check of the second-order moment `E[U_{i j} U^dag_{k l}]`.

    The closed form is `delta_{i l} delta_{j k} / N`.  Indices are 1-based
    `(i, j, k, l)`; `sigma` is the standard error of the real part.
    """
    i, j, k, l = _check_indices(n, indices, 4)
    cf = (1.0 / n) if (i == l and j == k) else 0.0
    values = _moment_values(
        n, seed, samples, lambda u: u[:, i - 1, j - 1] * u[:, l - 1, k - 1].conj()
    )
    return _moment_check(values, cf)


def weingarten4_check(n: int, indices: Sequence[int], samples: int, seed: int) -> MomentCheck:
    """Monte Carlo check of the fourth-order moment
    `E[U_{i1 j1} U_{i2 j2} U^dag_{k1 l1} U^dag_{k2 l2}]`.

    The closed form is the two-term delta contraction

        [d(i1,l1) d(i2,l2) d(j1,k1) d(j2,k2) + d(i1,l2) d(i2,l1) d(j1,k2) d(j2,k1)] / (N**2 - 1)
      - [d(i1,l1) d(i2,l2) d(j1,k2) d(j2,k1) + d(i1,l2) d(i2,l1) d(j1,k1) d(j2,k2)] / (N (N**2 - 1)).

    Although the samples live on SU(N), balanced moments (equal numbers of U
    and U* factors) coincide with the U(N) Haar moments because the overall
    U(1) phase cancels, so the U(N)-form closed expression applies verbatim
    for every N >= 2.
    """
    i1, j1, i2, j2, k1, l1, k2, l2 = _check_indices(n, indices, 8)
    direct = (i1 == l1) * (i2 == l2) * (j1 == k1) * (j2 == k2) + (i1 == l2) * (i2 == l1) * (
        j1 == k2
    ) * (j2 == k1)
    crossed = (i1 == l1) * (i2 == l2) * (j1 == k2) * (j2 == k1) + (i1 == l2) * (i2 == l1) * (
        j1 == k1
    ) * (j2 == k2)
    cf = direct / (n * n - 1.0) - crossed / (n * (n * n - 1.0))
    values = _moment_values(
        n,
        seed,
        samples,
        lambda u: u[:, i1 - 1, j1 - 1]
        * u[:, i2 - 1, j2 - 1]
        * u[:, l1 - 1, k1 - 1].conj()
        * u[:, l2 - 1, k2 - 1].conj(),
    )
    return _moment_check(values, cf)
