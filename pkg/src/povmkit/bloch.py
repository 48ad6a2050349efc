"""Conversions between qubit states, measurement vectors, and Bloch points.

A Bloch point is the real triple (tr(sigma_x rho), tr(sigma_y rho),
tr(sigma_z rho)); pure states sit on the unit sphere, mixed states strictly
inside.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidStateError, OutsideBallError, ZeroOperatorError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def validate_density_matrix(rho: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Check that rho is a qubit density matrix; returns it as complex128.

    Requires a 2x2 Hermitian matrix with unit trace and eigenvalues no
    lower than -tol.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise InvalidStateError(f"density matrix must be 2x2, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidStateError(f"trace is {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def state_to_bloch(rho: np.ndarray) -> np.ndarray:
    """Bloch coordinates (x, y, z) of a density matrix."""
    rho = validate_density_matrix(rho)
    return np.array(
        [
            np.trace(PAULI_X @ rho).real,
            np.trace(PAULI_Y @ rho).real,
            np.trace(PAULI_Z @ rho).real,
        ]
    )


def bloch_to_state(point) -> np.ndarray:
    """Density matrix with the given Bloch coordinates."""
    p = np.asarray(point, dtype=float)
    if p.shape != (3,):
        raise InvalidStateError(f"Bloch point must have 3 coordinates, got {p.shape}")
    if np.linalg.norm(p) > 1.0 + 1e-12:
        raise OutsideBallError(f"|{tuple(p)}| = {np.linalg.norm(p):.6f} > 1")
    x, y, z = p
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def povm_element_to_bloch(psi) -> np.ndarray:
    """Bloch point of a rank-one element's vector, ignoring its norm."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise InvalidStateError(f"measurement vector must have 2 entries, got {psi.shape}")
    norm_sq = np.vdot(psi, psi).real
    if norm_sq < 1e-24:
        raise ZeroOperatorError("measurement vector is numerically zero")
    return state_to_bloch(np.outer(psi, psi.conj()) / norm_sq)
