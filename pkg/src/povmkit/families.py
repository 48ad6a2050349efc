"""Symmetric single-qubit measurement families.

Each family is a set of rank-one POVM elements A_j = |psi_j><psi_j| built
from one or more phase orbits, with every vector carrying the same norm so
that the elements sum to the identity.  Supported kinds:

* ``cyclic``     -- m points on the Bloch equator,
* ``dihedral``   -- two mirrored m-point rings at opposite latitudes,
* the five platonic solids, whose Bloch points are the solid's vertices.

Vectors are returned as the rows of an (n, 2) complex array, in the fixed
outcome order used throughout the package: orbit by orbit, phase index
ascending, with phase factor exp(-2*pi*1j*j/m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bloch import povm_element_to_bloch
from .errors import (
    DegenerateOrbitError,
    InvalidParameterError,
    InvalidRotationError,
)
from .linalg import DEFAULT_TOL, unitarity_residual

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
TETRAHEDRON = "tetrahedron"
CUBE = "cube"
OCTAHEDRON = "octahedron"
DODECAHEDRON = "dodecahedron"
ICOSAHEDRON = "icosahedron"

PLATONIC_KINDS = (TETRAHEDRON, CUBE, OCTAHEDRON, DODECAHEDRON, ICOSAHEDRON)
FAMILY_KINDS = (CYCLIC, DIHEDRAL) + PLATONIC_KINDS

# Bloch points closer than this are treated as the same vertex.
DISTINCT_POINT_TOL = 1e-8


@dataclass(frozen=True)
class PovmFamily:
    """Identifies one measurement family and its parameters."""

    kind: str
    m: Optional[int] = None
    alpha: Optional[float] = None
    beta: Optional[complex] = None

    @classmethod
    def cyclic(cls, m: int) -> "PovmFamily":
        return cls(kind=CYCLIC, m=int(m))

    @classmethod
    def dihedral(cls, m: int, alpha: float, beta: complex) -> "PovmFamily":
        return cls(kind=DIHEDRAL, m=int(m), alpha=float(alpha), beta=complex(beta))

    @classmethod
    def dihedral_from_angle(cls, m: int, theta: float) -> "PovmFamily":
        """Dihedral family whose upper ring sits at polar angle ``theta``."""
        return cls.dihedral(m, np.cos(theta / 2), np.sin(theta / 2))

    @classmethod
    def platonic(cls, kind: str) -> "PovmFamily":
        if kind not in PLATONIC_KINDS:
            raise InvalidParameterError(f"unknown platonic solid {kind!r}")
        return cls(kind=kind)

    def label(self) -> str:
        if self.kind == CYCLIC:
            return f"cyclic(m={self.m})"
        if self.kind == DIHEDRAL:
            return f"dihedral(m={self.m}, alpha={self.alpha:.6g}, beta={self.beta:.6g})"
        return self.kind

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.m is not None:
            data["m"] = self.m
        if self.alpha is not None:
            data["alpha"] = self.alpha
        if self.beta is not None:
            data["beta"] = [self.beta.real, self.beta.imag]
        return data


@dataclass(frozen=True)
class PlatonicConstants:
    """Vector amplitudes (before orbit rescaling) for one platonic solid."""

    alpha: float
    beta: float
    gamma: Optional[float]
    delta: Optional[float]
    omega_order: int
    rescale: float


def platonic_constants(kind: str) -> PlatonicConstants:
    """Closed-form amplitudes for the requested solid."""
    if kind in (TETRAHEDRON, CUBE, OCTAHEDRON):
        alpha = np.sqrt((3 + np.sqrt(3)) / 6)
        beta = np.sqrt((3 - np.sqrt(3)) / 6)
        order = {TETRAHEDRON: 4, CUBE: 4, OCTAHEDRON: 3}[kind]
        scale = {
            TETRAHEDRON: np.sqrt(1 / 2),
            CUBE: 0.5,
            OCTAHEDRON: np.sqrt(1 / 3),
        }[kind]
        return PlatonicConstants(alpha, beta, None, None, order, scale)
    if kind in (DODECAHEDRON, ICOSAHEDRON):
        outer = np.sqrt(75 + 30 * np.sqrt(5)) / 30
        inner = np.sqrt(75 - 30 * np.sqrt(5)) / 30
        alpha = np.sqrt(0.5 + outer)
        beta = np.sqrt(0.5 - outer)
        if kind == DODECAHEDRON:
            gamma = np.sqrt(0.5 + inner)
            delta = np.sqrt(0.5 - inner)
            return PlatonicConstants(alpha, beta, gamma, delta, 5, np.sqrt(1 / 10))
        # the twelve-point solid flips the sign choice in the inner ring
        gamma = np.sqrt(0.5 - inner)
        delta = np.sqrt(0.5 + inner)
        return PlatonicConstants(alpha, beta, gamma, delta, 3, np.sqrt(1 / 6))
    raise InvalidParameterError(f"unknown platonic solid {kind!r}")


@dataclass
class Povm:
    """A resolved measurement: vectors plus the family that produced them."""

    vectors: np.ndarray
    family: PovmFamily

    def __post_init__(self) -> None:
        vectors = np.asarray(self.vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[1] != 2:
            raise InvalidParameterError("vectors must form an (n, 2) array")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        """Number of outcomes."""
        return self.vectors.shape[0]

    def elements(self) -> list[np.ndarray]:
        """The rank-one POVM elements, one 2x2 matrix per outcome."""
        return [np.outer(v, v.conj()) for v in self.vectors]

    def bloch_points(self) -> np.ndarray:
        """(n, 3) array of the outcome directions on the Bloch sphere."""
        return np.array([povm_element_to_bloch(v) for v in self.vectors])

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict(),
            "n": self.n,
            "vectors": [
                [[z.real, z.imag] for z in row] for row in self.vectors
            ],
        }


def _phases(m: int) -> np.ndarray:
    return np.exp(-2j * np.pi * np.arange(m) / m)


def cyclic_povm(m: int) -> Povm:
    """m equally weighted outcomes on the Bloch equator."""
    if m < 2:
        raise InvalidParameterError("cyclic family needs m >= 2")
    vectors = np.empty((m, 2), dtype=complex)
    vectors[:, 0] = 1.0
    vectors[:, 1] = _phases(m)
    vectors *= np.sqrt(1 / m)
    return Povm(vectors, PovmFamily.cyclic(m))


def _distinct_points(points: np.ndarray, tol: float = DISTINCT_POINT_TOL) -> int:
    reps: list[np.ndarray] = []
    for p in points:
        if not any(np.abs(p - q).max() < tol for q in reps):
            reps.append(p)
    return len(reps)


def dihedral_povm(m: int, alpha: float, beta: complex) -> Povm:
    """Two mirrored rings of m outcomes seeded by the pair (alpha, beta).

    The seed must be normalized (alpha^2 + |beta|^2 = 1) with alpha real
    and nonnegative.  Seeds that collapse the two rings onto fewer than 2m
    distinct Bloch points do not define a usable measurement of this kind
    and raise DegenerateOrbitError.
    """
    if m < 2:
        raise InvalidParameterError("dihedral family needs m >= 2")
    alpha = float(alpha)
    beta = complex(beta)
    if alpha < 0:
        raise InvalidParameterError("seed amplitude alpha must be nonnegative")
    if abs(alpha**2 + abs(beta) ** 2 - 1) > 1e-10:
        raise InvalidParameterError("seed must satisfy alpha^2 + |beta|^2 = 1")
    if alpha < DISTINCT_POINT_TOL or abs(beta) < DISTINCT_POINT_TOL:
        raise DegenerateOrbitError("polar seed collapses both rings to the poles")

    phases = _phases(m)
    vectors = np.empty((2 * m, 2), dtype=complex)
    vectors[:m, 0] = alpha
    vectors[:m, 1] = beta * phases
    vectors[m:, 0] = beta
    vectors[m:, 1] = alpha * phases
    vectors *= np.sqrt(1 / m)

    povm = Povm(vectors, PovmFamily.dihedral(m, alpha, beta))
    if _distinct_points(povm.bloch_points()) < 2 * m:
        raise DegenerateOrbitError(
            "seed yields fewer than 2m distinct Bloch points"
        )
    return povm


def platonic_povm(kind: str) -> Povm:
    """The measurement whose Bloch points are the vertices of a solid."""
    c = platonic_constants(kind)
    a, b = c.alpha, c.beta
    if kind == TETRAHEDRON:
        rows = [(a, b), (a, -b), (b, 1j * a), (b, -1j * a)]
    elif kind == CUBE:
        quarter = (1, 1j, -1, -1j)  # exact fourth roots of unity
        rows = [(a, b * q) for q in quarter] + [(b, -a * q) for q in quarter]
    elif kind == OCTAHEDRON:
        phases = _phases(3)
        rows = [(a, b * w) for w in phases] + [(b, -a * w) for w in phases]
    else:
        phases = _phases(c.omega_order)
        rows = []
        for top, bottom in ((a, b), (b, -a), (c.gamma, c.delta), (c.delta, -c.gamma)):
            rows += [(top, bottom * w) for w in phases]
    vectors = c.rescale * np.array(rows, dtype=complex)
    return Povm(vectors, PovmFamily.platonic(kind))


def build_povm(family: PovmFamily) -> Povm:
    """Resolve a family description into its vectors."""
    if family.kind == CYCLIC:
        return cyclic_povm(family.m)
    if family.kind == DIHEDRAL:
        return dihedral_povm(family.m, family.alpha, family.beta)
    if family.kind in PLATONIC_KINDS:
        return platonic_povm(family.kind)
    raise InvalidParameterError(f"unknown family kind {family.kind!r}")


def rotate_povm(povm: Povm, u: np.ndarray) -> Povm:
    """Conjugate every element by the single-qubit unitary ``u``."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or unitarity_residual(u) > DEFAULT_TOL:
        raise InvalidRotationError("rotation must be a 2x2 unitary")
    return Povm(povm.vectors @ u.T, povm.family)


@dataclass(frozen=True)
class PovmValidation:
    """Diagnostics from validate_povm."""

    completeness_residual: float
    norm_spread: float
    distinct_bloch_points: int


def validate_povm(povm: Povm) -> PovmValidation:
    """Measure how far a Povm is from a clean symmetric resolution."""
    total = povm.vectors.conj().T @ povm.vectors
    residual = float(np.abs(total - np.eye(2)).max())
    norms = np.linalg.norm(povm.vectors, axis=1) ** 2
    spread = float(norms.max() - norms.min())
    return PovmValidation(residual, spread, _distinct_points(povm.bloch_points()))
