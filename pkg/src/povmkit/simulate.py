"""Probability computation, sampling and end-to-end verification.

The analytic path evaluates <psi_j| rho |psi_j> directly from the
measurement vectors.  The register paths embed rho (or a pure state) into
the dilated register, apply the dilation's adjoint (either as a matrix or
as a compiled circuit), read the computational-basis diagonal and fold it
back onto measurement outcomes, checking that the padding basis states
stay empty.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .bloch import validate_density_matrix
from .circuits import Circuit, compile_circuit, synthesize_circuit
from .dilation import DilatedMeasurement, generic_completion, structured_dilation
from .errors import (
    CircuitMismatchError,
    DegenerateOrbitError,
    InvalidParameterError,
    InvalidStateError,
    PaddingLeakError,
)
from .families import Povm, PovmFamily, build_povm, validate_povm
from .linalg import distance_up_to_global_phase

DEFAULT_SEED = 0x5EED

# verification thresholds
COMPLETENESS_TOL = 1e-10
DILATION_TOL = 1e-10
CIRCUIT_DISTANCE_TOL = 1e-9
PROBABILITY_TOL = 1e-9
PADDING_TOL = 1e-12

# a compiled circuit further than this from the dilation adjoint is wrong
MISMATCH_TOL = 1e-8


def analytic_probabilities(povm: Povm, rho: np.ndarray) -> np.ndarray:
    """Outcome probabilities <psi_j| rho |psi_j| for a density matrix."""
    rho = validate_density_matrix(rho)
    v = povm.vectors
    return np.einsum("ni,ij,nj->n", v.conj(), rho, v).real


def _embedded_state(rho: np.ndarray, dim: int) -> np.ndarray:
    big = np.zeros((dim, dim), dtype=complex)
    big[:2, :2] = rho
    return big


def _fold(dilated: DilatedMeasurement, basis_probs: np.ndarray):
    probs = np.zeros(dilated.povm.n)
    for b, outcome in dilated.outcome_map.items():
        probs[outcome] = basis_probs[b]
    leak = max((float(basis_probs[b]) for b in dilated.padding_indices), default=0.0)
    return probs, leak


def fold_probabilities(
    dilated: DilatedMeasurement,
    basis_probs: np.ndarray,
    padding_tol: float = 1e-9,
) -> np.ndarray:
    """Collapse register-basis probabilities onto measurement outcomes.

    Raises PaddingLeakError when a padding basis state carries more than
    ``padding_tol`` probability, since a correct dilation never populates
    those states.
    """
    basis_probs = np.asarray(basis_probs, dtype=float)
    probs, leak = _fold(dilated, basis_probs)
    if leak > padding_tol:
        raise PaddingLeakError(
            f"padding basis states carry probability {leak:.3e}"
        )
    return probs


def dilation_probabilities(
    dilated: DilatedMeasurement, rho: np.ndarray, padding_tol: float = 1e-9
) -> np.ndarray:
    """Outcome probabilities via the dilation matrix itself."""
    rho = validate_density_matrix(rho)
    u = dilated.matrix.conj().T
    big = u @ _embedded_state(rho, dilated.dim) @ u.conj().T
    return fold_probabilities(dilated, np.diag(big).real, padding_tol)


def circuit_probabilities(
    dilated: DilatedMeasurement,
    circuit: Circuit,
    rho: np.ndarray,
    check: bool = True,
    padding_tol: float = 1e-9,
) -> np.ndarray:
    """Outcome probabilities from running the compiled circuit on rho."""
    rho = validate_density_matrix(rho)
    u = compile_circuit(circuit)
    if check:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            distance = distance_up_to_global_phase(u, dilated.matrix.conj().T)
        if distance > MISMATCH_TOL:
            raise CircuitMismatchError(
                f"circuit is {distance:.3e} from the dilation adjoint"
            )
    big = u @ _embedded_state(rho, dilated.dim) @ u.conj().T
    return fold_probabilities(dilated, np.diag(big).real, padding_tol)


def statevector_probabilities(
    dilated: DilatedMeasurement,
    circuit: Circuit,
    psi: np.ndarray,
    padding_tol: float = 1e-9,
) -> np.ndarray:
    """Outcome probabilities for a pure state, via amplitudes."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise InvalidStateError("pure state must be a 2-vector")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise InvalidStateError("pure state must be normalized")
    big = np.zeros(dilated.dim, dtype=complex)
    big[:2] = psi
    amps = compile_circuit(circuit) @ big
    return fold_probabilities(dilated, np.abs(amps) ** 2, padding_tol)


# ---------------------------------------------------------------- sampling


@dataclass
class SampleCounts:
    """Histogram of sampled outcomes."""

    counts: np.ndarray
    shots: int
    seed: int

    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots

    def total_variation(self, probabilities) -> float:
        p = np.asarray(probabilities, dtype=float)
        return float(0.5 * np.abs(self.frequencies() - p).sum())

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "seed": self.seed,
            "counts": [int(c) for c in self.counts],
        }


def sample(probabilities, shots: int, seed: int = DEFAULT_SEED) -> SampleCounts:
    """Draw outcome counts by inverse-CDF sampling.

    Deterministic for a given seed: uniforms come from a fresh PCG64
    generator in one batch and land in outcome bins via a searchsorted
    over the cumulative distribution.
    """
    probs = np.asarray(probabilities, dtype=float)
    if shots < 1:
        raise InvalidParameterError("shots must be positive")
    if probs.min() < -1e-12:
        raise InvalidParameterError("probabilities must be nonnegative")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise InvalidParameterError("probabilities must sum to one")
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(shots)
    edges = np.cumsum(probs)
    idx = np.searchsorted(edges, u, side="right")
    idx = np.minimum(idx, len(probs) - 1)  # guard the u ~ 1 edge
    counts = np.bincount(idx, minlength=len(probs))
    return SampleCounts(counts=counts, shots=shots, seed=seed)


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-direction qubit state from complex Gaussian amplitudes."""
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return psi / np.linalg.norm(psi)


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """Random mixture of a pure state with the maximally mixed state."""
    psi = random_pure_state(rng)
    weight = rng.random()
    return weight * np.outer(psi, psi.conj()) + (1 - weight) * np.eye(2) / 2


# ---------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    """Residuals and pass/fail bookkeeping for one family."""

    label: str
    family: dict
    method: str
    seed: int = DEFAULT_SEED
    n_outcomes: Optional[int] = None
    dim: Optional[int] = None
    n_qubits: Optional[int] = None
    gate_count: Optional[int] = None
    completeness_residual: Optional[float] = None
    unitarity_residual: Optional[float] = None
    embedding_residual: Optional[float] = None
    circuit_distance: Optional[float] = None
    max_probability_error: Optional[float] = None
    max_padding_probability: Optional[float] = None
    states_checked: int = 0
    failures: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.error is None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data


def verify_family(
    family: PovmFamily,
    n_states: int = 20,
    seed: int = DEFAULT_SEED,
    merge: bool = True,
    method: str = "structured",
) -> VerificationReport:
    """Check one family end to end against the analytic probabilities.

    Builds the vectors, the dilation and (for the structured method) the
    circuit, then compares circuit statistics with the analytic ones on
    ``n_states`` seeded random density matrices.  A degenerate seed is
    reported as a failed run with the cause recorded, not an exception.
    """
    if method not in ("structured", "generic"):
        raise InvalidParameterError("method must be 'structured' or 'generic'")
    report = VerificationReport(
        label=family.label(), family=family.to_dict(), method=method, seed=seed
    )
    try:
        povm = build_povm(family)
    except DegenerateOrbitError as exc:
        report.error = str(exc)
        return report

    report.n_outcomes = povm.n
    check = validate_povm(povm)
    report.completeness_residual = check.completeness_residual
    if check.completeness_residual > COMPLETENESS_TOL:
        report.failures.append("completeness")

    build = structured_dilation if method == "structured" else generic_completion
    dilated = build(povm)
    report.dim = dilated.dim
    report.n_qubits = dilated.n_qubits
    report.unitarity_residual = dilated.unitarity_residual()
    report.embedding_residual = dilated.embedding_residual()
    if report.unitarity_residual > DILATION_TOL:
        report.failures.append("unitarity")
    if report.embedding_residual > DILATION_TOL:
        report.failures.append("embedding")

    adjoint = dilated.matrix.conj().T
    if method == "structured":
        circuit = synthesize_circuit(dilated, merge=merge)
        report.gate_count = len(circuit.gates)
        compiled = compile_circuit(circuit)
        report.circuit_distance = distance_up_to_global_phase(compiled, adjoint)
        if report.circuit_distance > CIRCUIT_DISTANCE_TOL:
            report.failures.append("circuit")
        apply = compiled
    else:
        apply = adjoint

    rng = np.random.Generator(np.random.PCG64(seed))
    worst_prob = 0.0
    worst_leak = 0.0
    for _ in range(n_states):
        rho = random_density_matrix(rng)
        expected = analytic_probabilities(povm, rho)
        big = apply @ _embedded_state(rho, dilated.dim) @ apply.conj().T
        folded, leak = _fold(dilated, np.diag(big).real)
        worst_prob = max(worst_prob, float(np.abs(folded - expected).max()))
        worst_leak = max(worst_leak, leak)
    report.states_checked = n_states
    report.max_probability_error = worst_prob
    report.max_padding_probability = worst_leak
    if worst_prob > PROBABILITY_TOL:
        report.failures.append("probabilities")
    if worst_leak > PADDING_TOL:
        report.failures.append("padding")
    return report
