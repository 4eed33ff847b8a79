"""
Doubled-up linear quantum systems.

A system is given by Δ-form coefficient matrices (A, B, C, D) acting on n
cavity modes and m field channels. This module evaluates transfer matrices,
tests stability and certifies physical realizability: the existence of a
commutation matrix Θ with

    AΘ + ΘA† + BJB† = 0,   B = -ΘC†J,   D = I,

and Θ congruent to J.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import lu_factor, lu_solve, solve_sylvester

from quantamp.dup_linalg import (
    DoubledUpMatrix,
    bogoliubov_residual,
    delta_extract,
    is_hermitian,
    j_matrix,
    matrix_from_json,
    matrix_to_json,
)
from quantamp.errors import (
    ArtifactParseError,
    AmpSynthError,
    ContractError,
    DimensionError,
    NoUniqueSolutionError,
    SingularityError,
)

logger = logging.getLogger(__name__)

DEFAULT_REALIZABILITY_TOL = 1e-8
DEFAULT_PROBE_TOL = 1e-9
CONDITION_LIMIT = 1e12
MARGINAL_TOL = 1e-12
INERTIA_TOL = 1e-10
HERMITIAN_M_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumStateSpace:
    """Doubled-up realization (A, B, C, D) with n modes and m channels"""

    A: DoubledUpMatrix
    B: DoubledUpMatrix
    C: DoubledUpMatrix
    D: DoubledUpMatrix

    def __post_init__(self):
        n = self.A.shape[0]
        m = self.D.shape[0]
        expected = {"A": (n, n), "B": (n, m), "C": (m, n), "D": (m, m)}
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise DimensionError(f"{name} blocks have shape {actual}, expected {shape}")

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.D.shape[0]

    @classmethod
    def from_full(cls, A: Any, B: Any, C: Any, D: Any) -> "QuantumStateSpace":
        """Build from full 2n x 2n ... matrices, checking their Δ structure"""
        return cls(delta_extract(A), delta_extract(B), delta_extract(C), delta_extract(D))

    def matrices(self):
        """Full (A, B, C, D)"""
        return self.A.expand(), self.B.expand(), self.C.expand(), self.D.expand()


@dataclass
class RealizabilityCertificate:
    """Residuals of the realizability conditions, each with its own threshold"""

    theta: np.ndarray
    residual_lyap: float
    residual_B: float
    residual_D: float
    inertia_ok: bool
    tolerance: float
    tol_lyap: float
    tol_B: float
    tol_D: float

    @property
    def passed(self) -> bool:
        return (
            self.inertia_ok
            and self.residual_lyap <= self.tol_lyap
            and self.residual_B <= self.tol_B
            and self.residual_D <= self.tol_D
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta": matrix_to_json(self.theta),
            "residual_lyap": self.residual_lyap,
            "residual_B": self.residual_B,
            "residual_D": self.residual_D,
            "inertia_ok": self.inertia_ok,
            "tolerance": self.tolerance,
            "tol_lyap": self.tol_lyap,
            "tol_B": self.tol_B,
            "tol_D": self.tol_D,
            "passed": self.passed,
        }


@dataclass
class HamiltonianCoupling:
    """Hamiltonian matrix M and coupling matrix N of an open oscillator"""

    M: np.ndarray
    N: np.ndarray
    hermiticity_residual: float = 0.0


@dataclass
class TransferProbeReport:
    frequencies: List[float]
    residuals: List[float]
    infinity_offdiag: float
    infinity_unitarity: float
    tolerance: float

    @property
    def sample_count(self) -> int:
        return len(self.frequencies)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def symplectic_ok(self) -> bool:
        return self.max_residual <= self.tolerance

    @property
    def infinity_ok(self) -> bool:
        return self.infinity_offdiag <= self.tolerance and self.infinity_unitarity <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.symplectic_ok and self.infinity_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sample_count": self.sample_count,
            "max_residual": self.max_residual,
            "symplectic_ok": self.symplectic_ok,
            "infinity_offdiag": self.infinity_offdiag,
            "infinity_unitarity": self.infinity_unitarity,
            "infinity_ok": self.infinity_ok,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def system_scale(sys: QuantumStateSpace) -> float:
    """max(1, ||A||); residuals are compared relative to it"""
    return max(1.0, float(np.linalg.norm(sys.A.expand())))


def transfer_at(sys: QuantumStateSpace, s: complex) -> np.ndarray:
    """G(s) = C (sI - A)^-1 B + D as a full 2m x 2m matrix"""
    A, B, C, D = sys.matrices()
    resolvent = s * np.eye(A.shape[0]) - A
    cond = np.linalg.cond(resolvent)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        eigenvalues = np.linalg.eigvals(A)
        nearest = complex(eigenvalues[np.argmin(np.abs(eigenvalues - s))])
        raise SingularityError(
            f"s = {s} is a pole of the system (nearest eigenvalue of A: {nearest})",
            eigenvalue=nearest,
        )
    return C @ lu_solve(lu_factor(resolvent), B) + D


def is_stable(sys: QuantumStateSpace) -> bool:
    """Strict Hurwitz test; marginal eigenvalues count as unstable"""
    eigenvalues = np.linalg.eigvals(sys.A.expand())
    return bool(np.all(eigenvalues.real < -MARGINAL_TOL))


def check_realizability(sys: QuantumStateSpace, theta: Any,
                        tol: float = DEFAULT_REALIZABILITY_TOL) -> RealizabilityCertificate:
    """Evaluate the realizability conditions for a candidate Θ"""
    theta = np.asarray(theta, dtype=complex)
    A, B, C, D = sys.matrices()
    if theta.shape != A.shape:
        raise DimensionError(f"theta must be {A.shape}, got {theta.shape}")
    if not is_hermitian(theta, tol=tol):
        raise ContractError("theta must be Hermitian")

    J = j_matrix(sys.m)
    residual_lyap = float(np.linalg.norm(A @ theta + theta @ A.conj().T + B @ J @ B.conj().T))
    residual_B = float(np.linalg.norm(B + theta @ C.conj().T @ J))
    residual_D = float(np.linalg.norm(D - np.eye(D.shape[0])))

    eigenvalues = np.linalg.eigvalsh((theta + theta.conj().T) / 2)
    positive = int(np.sum(eigenvalues > INERTIA_TOL))
    negative = int(np.sum(eigenvalues < -INERTIA_TOL))
    inertia_ok = positive == sys.n and negative == sys.n

    # Lyapunov terms scale like ||A|| and ||B||^2, the B condition like ||B||; D is dimensionless
    b_norm = float(np.linalg.norm(B))
    certificate = RealizabilityCertificate(
        theta=theta,
        residual_lyap=residual_lyap,
        residual_B=residual_B,
        residual_D=residual_D,
        inertia_ok=inertia_ok,
        tolerance=tol,
        tol_lyap=tol * max(system_scale(sys), b_norm ** 2),
        tol_B=tol * max(1.0, b_norm),
        tol_D=tol,
    )
    logger.debug(
        "realizability residuals lyap=%.3e/%.3e B=%.3e/%.3e D=%.3e/%.3e inertia=(%d,%d)",
        residual_lyap, certificate.tol_lyap, residual_B, certificate.tol_B,
        residual_D, certificate.tol_D, positive, negative,
    )
    return certificate


def solve_theta(sys: QuantumStateSpace) -> np.ndarray:
    """Unique Hermitian solution of AΘ + ΘA† + BJB† = 0"""
    A, B, _, _ = sys.matrices()
    eigenvalues = np.linalg.eigvals(A)
    # AΘ + ΘA† is singular iff λ_i + conj(λ_j) = 0 for some pair
    gaps = np.abs(eigenvalues[:, None] + eigenvalues.conj()[None, :])
    if gaps.min() <= MARGINAL_TOL * system_scale(sys):
        raise NoUniqueSolutionError("A and -A† share an eigenvalue; Θ is not unique")
    J = j_matrix(sys.m)
    theta = solve_sylvester(A, A.conj().T, -B @ J @ B.conj().T)
    return (theta + theta.conj().T) / 2


def extract_mn(sys: QuantumStateSpace, theta: Any,
               tol: float = DEFAULT_REALIZABILITY_TOL) -> HamiltonianCoupling:
    """Recover (M, N) with N = C and M = iΘ⁻¹(A + ½ΘN†JN)"""
    theta = np.asarray(theta, dtype=complex)
    if theta.shape == (2 * sys.n, 2 * sys.n) and np.linalg.cond(theta) > CONDITION_LIMIT:
        raise SingularityError("theta is singular")
    certificate = check_realizability(sys, theta, tol=tol)
    if not certificate.passed:
        raise ContractError("system is not physically realizable with the given theta")

    A, _, C, _ = sys.matrices()
    N = C
    J = j_matrix(sys.m)
    M = 1j * np.linalg.solve(theta, A + 0.5 * theta @ N.conj().T @ J @ N)
    residual = float(np.linalg.norm(M - M.conj().T))
    if residual > HERMITIAN_M_TOL * system_scale(sys):
        raise ContractError(f"recovered Hamiltonian is not Hermitian (residual {residual:.3e})")
    return HamiltonianCoupling(M=(M + M.conj().T) / 2, N=N, hermiticity_residual=residual)


def from_hamiltonian(M: Any, N: Any, theta: Optional[Any] = None) -> QuantumStateSpace:
    """Open oscillator system A = -iΘM - ½ΘN†JN, B = -ΘN†J, C = N, D = I"""
    M = np.asarray(M, dtype=complex)
    N = np.asarray(N, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise DimensionError(f"M must be square with even dimension, got {M.shape}")
    if N.ndim != 2 or N.shape[1] != M.shape[0] or N.shape[0] % 2:
        raise DimensionError(f"N must be 2m x {M.shape[0]}, got {N.shape}")
    if not is_hermitian(M):
        raise ContractError("M must be Hermitian")
    n, m = M.shape[0] // 2, N.shape[0] // 2
    theta = j_matrix(n) if theta is None else np.asarray(theta, dtype=complex)
    J = j_matrix(m)
    A = -1j * theta @ M - 0.5 * theta @ N.conj().T @ J @ N
    B = -theta @ N.conj().T @ J
    return QuantumStateSpace.from_full(A, B, N, np.eye(2 * m))


def tf_realizability_probe(sys: QuantumStateSpace, freqs: Sequence[float],
                           tol: float = DEFAULT_PROBE_TOL) -> TransferProbeReport:
    """
    Sampled check of the transfer-function realizability conditions.

    G(jω)†JG(jω) = J is tested at every sample; the condition at s -> ∞ is
    read off D, which must be Δ(S, 0) with S unitary. Agreement on more
    samples than the rational degree is taken as numerical evidence for all s.
    """
    residuals = [bogoliubov_residual(transfer_at(sys, 1j * float(w))) for w in freqs]
    D1, D2 = sys.D.block1, sys.D.block2
    report = TransferProbeReport(
        frequencies=[float(w) for w in freqs],
        residuals=residuals,
        infinity_offdiag=float(np.linalg.norm(D2)),
        infinity_unitarity=float(np.linalg.norm(D1.conj().T @ D1 - np.eye(D1.shape[0]))),
        tolerance=tol,
    )
    logger.debug("probe over %d samples: max residual %.3e", report.sample_count, report.max_residual)
    return report


def system_to_json(sys: QuantumStateSpace) -> Dict[str, Any]:
    A, B, C, D = sys.matrices()
    return {
        "n": sys.n,
        "m": sys.m,
        "A": matrix_to_json(A),
        "B": matrix_to_json(B),
        "C": matrix_to_json(C),
        "D": matrix_to_json(D),
    }


def system_from_json(data: Any) -> QuantumStateSpace:
    if not isinstance(data, dict):
        raise ArtifactParseError("system", "expected a JSON object")
    for key in ("n", "m"):
        if not isinstance(data.get(key), int):
            raise ArtifactParseError(key, "missing or not an integer")
    full = {name: matrix_from_json(data.get(name), field=name) for name in ("A", "B", "C", "D")}
    try:
        sys = QuantumStateSpace.from_full(full["A"], full["B"], full["C"], full["D"])
    except AmpSynthError as e:
        raise ArtifactParseError("system", str(e))
    if (sys.n, sys.m) != (data["n"], data["m"]):
        raise ArtifactParseError("n", f"declared (n, m) = ({data['n']}, {data['m']}) but matrices give ({sys.n}, {sys.m})")
    return sys
