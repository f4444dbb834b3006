"""Density matrices of N-level systems and their Bloch-vector parameterization.

A state is written as `rho = (1/N) (I + sqrt(N(N-1)/2) xi . g)` where `g` runs
over the Gell-Mann generators; the real vector `xi` of length `N**2 - 1` is
the (generalized) Bloch vector.  With this normalization pure states sit on
the unit sphere `|xi| = 1`, but for N > 2 not every point of the unit ball is
a state -- positivity always has to be checked.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GellMannBasis, SymmetricStructureTensor, gell_mann_basis
from .config import TOLERANCES
from .errors import InvalidStateError, ValidationError

__all__ = [
    "DensityState",
    "bloch_scale",
    "rho_from_bloch",
    "bloch_from_rho",
    "qutrit_bloch_constraints",
    "state_as_dict",
    "state_from_dict",
]


@dataclass(frozen=True)
class DensityState:
    """A density matrix together with its Bloch-vector view."""

    dim_n: int
    rho: np.ndarray
    bloch: np.ndarray


def bloch_scale(n: int) -> float:
    """The Bloch normalization factor `sqrt(N(N-1)/2)`; 1 for a qubit, `sqrt(3)` for a qutrit."""
    return np.sqrt(n * (n - 1) / 2.0)


def rho_from_bloch(n: int, xi: np.ndarray) -> DensityState:
    """Build the density matrix with Bloch vector `xi`.

    Raises `InvalidStateError` (carrying the offending eigenvalue) if the
    resulting matrix is not positive semidefinite within the spectral
    tolerance; states are never silently clamped.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (n * n - 1,):
        raise ValidationError(f"Bloch vector for N={n} must have length {n * n - 1}, got shape {xi.shape}")
    basis = gell_mann_basis(n)
    rho = (np.eye(n) + bloch_scale(n) * np.einsum("a,aij->ij", xi, basis.generators)) / n
    lo = float(np.linalg.eigvalsh(rho)[0])
    if lo < -TOLERANCES.spectral:
        raise InvalidStateError(
            f"Bloch vector yields a non-positive matrix (min eigenvalue {lo:.3e})",
            min_eigenvalue=lo,
        )
    rho.setflags(write=False)
    xi = xi.copy()
    xi.setflags(write=False)
    return DensityState(dim_n=n, rho=rho, bloch=xi)


def bloch_from_rho(matrix: np.ndarray) -> np.ndarray:
    """Recover the Bloch vector of a density matrix.

    The input must be Hermitian with unit trace and positive semidefinite
    within tolerance; `rho_from_bloch(n, bloch_from_rho(rho))` reproduces
    `rho` exactly up to round-off.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {matrix.shape}")
    n = matrix.shape[0]
    if np.max(np.abs(matrix - matrix.conj().T)) > TOLERANCES.algebraic:
        raise ValidationError("density matrix must be Hermitian")
    if abs(np.trace(matrix).real - 1.0) > TOLERANCES.algebraic:
        raise ValidationError(f"density matrix must have unit trace, got {np.trace(matrix).real!r}")
    lo = float(np.linalg.eigvalsh(matrix)[0])
    if lo < -TOLERANCES.spectral:
        raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})", min_eigenvalue=lo)
    basis = gell_mann_basis(n)
    xi = np.einsum("ij,aji->a", matrix, basis.generators).real * (n / (2.0 * bloch_scale(n)))
    xi.setflags(write=False)
    return xi


def qutrit_bloch_constraints(
    xi: np.ndarray, d: SymmetricStructureTensor
) -> tuple[float, float, bool]:
    """Evaluate the two polynomial positivity constraints of a qutrit Bloch vector.

    Returns `(c1, c2, ok)` with `c1 = |xi|**2` and
    `c2 = |xi|**2 - (2/sqrt(3)) sum d[a,b,c] xi_a xi_b xi_c`; the vector
    parameterizes a state exactly when `0 <= c1 <= 1` and `0 <= c2 <= 1/3`
    (`c2` equals `1/3 - 9 det(rho)`, so its upper bound is positivity of the
    determinant).  The comparison uses the algebraic tolerance so boundary
    states (pure states, rank-2 states) are accepted despite round-off.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (8,):
        raise ValidationError(f"qutrit Bloch vector must have length 8, got shape {xi.shape}")
    if d.dim_n != 3:
        raise ValidationError(f"need the N=3 structure tensor, got N={d.dim_n}")
    c1 = float(xi @ xi)
    cubic = float(np.einsum("abc,a,b,c->", d.d, xi, xi, xi))
    c2 = c1 - 2.0 / np.sqrt(3.0) * cubic
    tol = TOLERANCES.algebraic
    ok = (c1 <= 1.0 + tol) and (-tol <= c2 <= 1.0 / 3.0 + tol)
    return c1, c2, ok


def state_as_dict(state: DensityState) -> dict:
    """JSON-friendly view of a state: `{"n": ..., "bloch": [...]}`."""
    return {"n": state.dim_n, "bloch": [float(x) for x in state.bloch]}


def state_from_dict(payload: dict) -> DensityState:
    """Inverse of `state_as_dict`, with full validation."""
    try:
        n = int(payload["n"])
        bloch = np.asarray(payload["bloch"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state payload: {exc}") from exc
    return rho_from_bloch(n, bloch)
