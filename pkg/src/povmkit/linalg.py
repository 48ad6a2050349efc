"""Dense complex matrix helpers shared by every other module.

Conventions used throughout the package:

* matrices are numpy arrays with dtype complex128,
* the discrete Fourier matrix uses the negative exponent: entry (j, k) is
  exp(-2i pi j k / m) / sqrt(m),
* in multi-qubit registers qubit 0 is the most significant bit of the basis
  index, so ``tensor_product(a, b)`` puts ``a`` on the more significant
  qubits.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import InvalidDimensionError, PhaseUndefinedWarning

# default tolerance for structural checks (unitarity, completeness, ...)
DEFAULT_TOL = 1e-10
# looser default for compiled-circuit comparisons
CIRCUIT_TOL = 1e-9

CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def fourier_matrix(m: int) -> np.ndarray:
    """Return the m x m discrete Fourier matrix (negative exponent)."""
    if m < 1:
        raise InvalidDimensionError(f"fourier_matrix needs m >= 1, got {m}")
    jk = np.outer(np.arange(m), np.arange(m))
    return np.exp(-2j * np.pi * jk / m) / np.sqrt(m)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor on the high-order index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Block-diagonal sum of two matrices; either block may be 0-sized."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise InvalidDimensionError("direct_sum expects 2-d arrays")
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def unitarity_residual(a: np.ndarray) -> float:
    """Worst entry-wise deviation of adjoint(a) @ a from the identity."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidDimensionError(f"unitarity check needs a square matrix, got {a.shape}")
    return float(np.abs(a.conj().T @ a - np.eye(a.shape[0])).max())


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_residual(a) <= tol


def distance_up_to_global_phase(a: np.ndarray, b: np.ndarray) -> float:
    """Max entry-wise distance between a and b after phase-aligning b.

    The alignment phase is arg(tr(adjoint(b) @ a)).  When that trace vanishes the
    phase is undefined; the raw unaligned distance is returned and a
    PhaseUndefinedWarning flags the result.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 2:
        raise InvalidDimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    t = np.trace(b.conj().T @ a)
    scale = max(1.0, float(np.abs(a).max()) * float(np.abs(b).max()) * a.shape[0])
    if abs(t) < 1e-15 * scale:
        warnings.warn(
            "global phase undefined (tr(b^dag a) = 0); returning unaligned distance",
            PhaseUndefinedWarning,
            stacklevel=2,
        )
        return float(np.abs(a - b).max())
    return float(np.abs(a - (t / abs(t)) * b).max())


def embed_on_qubits(u: np.ndarray, targets, n_qubits: int) -> np.ndarray:
    """Embed a k-qubit matrix into an n-qubit register.

    ``targets`` lists the register qubits the matrix acts on; the first
    listed qubit carries the most significant bit of the matrix's own
    index space.  Returns the full 2**n x 2**n matrix.
    """
    u = np.asarray(u, dtype=complex)
    targets = list(targets)
    k = len(targets)
    if u.shape != (2**k, 2**k):
        raise InvalidDimensionError(
            f"matrix shape {u.shape} does not act on {k} qubit(s)"
        )
    if len(set(targets)) != k:
        raise InvalidDimensionError(f"duplicate target qubits in {targets}")
    if any(q < 0 or q >= n_qubits for q in targets):
        raise InvalidDimensionError(f"targets {targets} outside register of {n_qubits}")
    r = 2**n_qubits
    order = targets + [q for q in range(n_qubits) if q not in targets]
    # perm[x] = index of basis state x after moving the target bits to the front
    perm = np.zeros(r, dtype=np.intp)
    for i, q in enumerate(order):
        bit = (np.arange(r) >> (n_qubits - 1 - q)) & 1
        perm |= bit << (n_qubits - 1 - i)
    big = np.kron(u, np.eye(2 ** (n_qubits - k), dtype=complex))
    return big[np.ix_(perm, perm)]


def matrix_to_pairs(a: np.ndarray) -> list:
    """Nested lists of [real, imag] pairs, for JSON output."""
    a = np.asarray(a, dtype=complex)
    return [[[z.real, z.imag] for z in row] for row in a]
