"""
Shale (Bloch-Messiah) factorisation of two-channel Bogoliubov matrices.

Any symplectic 4x4 doubled-up matrix factors as

    Gbar = Δ(S1, 0) · [[-cosh R, -sinh R], [-sinh R, -cosh R]] · Δ(S2, 0)

with S1, S2 unitary 2x2 (beamsplitters) and R = diag(r1, r2) real (two
single-mode squeezers). The factors are computed from an SVD of the G block;
the diagonal phase gauge left free by the SVD is fixed so that the recovered
sinh block is real.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from quantamp.dup_linalg import (
    DoubledUpMatrix,
    bogoliubov_residual,
    delta_extract,
    is_unitary,
    matrix_to_json,
    number_from_json,
)
from quantamp.errors import (
    ArtifactParseError,
    ContractError,
    DecompositionError,
    DimensionError,
    NotSymplecticError,
)

logger = logging.getLogger(__name__)

SYMPLECTIC_TOL = 1e-8
UNITARY_TOL = 1e-10
NEAR_DEGENERATE_TOL = 1e-4
OFFDIAG_TOL = 1e-6
SINGULAR_FLOOR_TOL = 1e-10
ZERO_SQUEEZE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ShaleFactors:
    S1: np.ndarray
    S2: np.ndarray
    r1: float
    r2: float

    def __post_init__(self):
        for name in ("S1", "S2"):
            S = np.array(getattr(self, name), dtype=complex)
            if S.shape != (2, 2):
                raise DimensionError(f"{name} must be 2x2, got {S.shape}")
            S.setflags(write=False)
            object.__setattr__(self, name, S)
        object.__setattr__(self, "r1", float(self.r1))
        object.__setattr__(self, "r2", float(self.r2))

    @property
    def R(self) -> np.ndarray:
        return np.diag([self.r1, self.r2])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S1": matrix_to_json(self.S1),
            "S2": matrix_to_json(self.S2),
            "r1": self.r1,
            "r2": self.r2,
        }


@dataclass(frozen=True)
class BeamsplitterParams:
    """
    Beamsplitter with phase shifters:

        [[ e^{iφ1} sin θ,  e^{i(φ1+φ3)} cos θ],
         [ e^{iφ2} cos θ, -e^{i(φ2+φ3)} sin θ]]
    """

    theta: float
    phi1: float = 0.0
    phi2: float = 0.0
    phi3: float = 0.0

    def to_dict(self) -> Dict[str, float]:
        return {"theta": self.theta, "phi1": self.phi1, "phi2": self.phi2, "phi3": self.phi3}

    @classmethod
    def from_dict(cls, data: Any, field: str = "beamsplitter") -> "BeamsplitterParams":
        if not isinstance(data, dict):
            raise ArtifactParseError(field, "expected an object with theta, phi1, phi2, phi3")
        return cls(**{key: number_from_json(data, key, field) for key in ("theta", "phi1", "phi2", "phi3")})


def wrap_angle(x: float) -> float:
    """Map an angle into (-π, π]"""
    return float(np.pi - np.mod(np.pi - x, 2 * np.pi))


def takagi(N: Any, tol: float = 1e-12) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autonne-Takagi factorisation N = U diag(l) Uᵀ of a complex symmetric matrix.

    Uses the real symmetric embedding [[Re N, -Im N], [-Im N, -Re N]], whose
    eigenvalues come in pairs ±l. Its eigenvectors (x; y) for the n largest
    eigenvalues satisfy N(x + iy) = l(x - iy), which stays accurate when the
    singular values of N are close or equal.
    """
    N = np.asarray(N, dtype=complex)
    if N.ndim != 2 or N.shape[0] != N.shape[1]:
        raise DimensionError("Takagi factorisation needs a square matrix")
    n = N.shape[0]
    if np.linalg.norm(N - N.T) > tol * max(1.0, np.linalg.norm(N)):
        raise ContractError("Takagi factorisation needs a symmetric matrix")
    if np.allclose(N, 0, atol=tol):
        return np.zeros(n), np.eye(n, dtype=complex)

    embedding = np.block([[N.real, -N.imag], [-N.imag, -N.real]])
    eigenvalues, Q = np.linalg.eigh(embedding)
    top = Q[:, ::-1][:, :n]
    l = np.clip(eigenvalues[::-1][:n], 0.0, None)
    return l, np.conj(top[:n] + 1j * top[n:])


def _diagonal_gauge(k: complex) -> Tuple[complex, float]:
    """Phase φ and real s with conj(φ)^2 k = s, taking φ closest to 1"""
    if abs(k) <= ZERO_SQUEEZE_TOL:
        return 1.0 + 0j, 0.0
    angle = float(np.angle(k))
    if abs(angle) <= np.pi / 2:
        return np.exp(0.5j * angle), abs(k)
    return np.exp(0.5j * (angle - np.pi * np.sign(angle))), -abs(k)


def shale_decompose(Gbar: Any, tol: float = SYMPLECTIC_TOL) -> ShaleFactors:
    """Factor a symplectic 4x4 doubled-up matrix into (S1, R, S2)"""
    Gbar = np.asarray(Gbar, dtype=complex)
    if Gbar.shape != (4, 4):
        raise DimensionError(f"Shale decomposition needs a 4x4 matrix, got {Gbar.shape}")
    residual = bogoliubov_residual(Gbar)
    if residual > tol:
        raise NotSymplecticError(f"matrix is not symplectic (residual {residual:.3e})")
    blocks = delta_extract(Gbar, tol=tol)
    G, H = blocks.block1, blocks.block2

    U, sigma, Vh = np.linalg.svd(G)
    V = Vh.conj().T
    logger.debug("singular values of G block: %s", sigma)
    if sigma.min() < 1.0 - SINGULAR_FLOOR_TOL:
        raise NotSymplecticError(f"G block has singular value {sigma.min():.12g} < 1")

    if abs(sigma[0] - sigma[1]) <= NEAR_DEGENERATE_TOL * sigma[0]:
        # close singular values leave the SVD basis free up to a rotation that
        # mixes the two columns; pick the one that makes U† H V̄ diagonal
        K0 = U.conj().T @ H @ V.conj()
        _, W = takagi((K0 + K0.T) / 2, tol=ZERO_SQUEEZE_TOL)
        U, V = U @ W, V @ W
        Vh = V.conj().T

    K0 = U.conj().T @ H @ V.conj()
    phases = np.ones(2, dtype=complex)
    sinh = np.zeros(2)
    for i in range(2):
        phases[i], sinh[i] = _diagonal_gauge(K0[i, i])
        if sinh[i] == 0.0:
            # free gauge: first nonzero entry of the S1 column real positive
            column = -U[:, i]
            first = column[np.argmax(np.abs(column) > ZERO_SQUEEZE_TOL)]
            phases[i] = np.conj(first) / abs(first)

    S1 = -U * phases[None, :]
    S2 = phases.conj()[:, None] * Vh
    K = S1.conj().T @ H @ S2.T
    offdiag = abs(K[0, 1]) + abs(K[1, 0])
    if offdiag > OFFDIAG_TOL * max(1.0, float(np.max(np.abs(sinh)))):
        raise DecompositionError(f"sinh block is not diagonal (off-diagonal {offdiag:.3e})")
    consistency = np.abs(sigma ** 2 - sinh ** 2 - 1.0)
    if np.any(consistency > OFFDIAG_TOL * np.maximum(1.0, sigma ** 2)):
        raise DecompositionError(f"cosh and sinh factors are inconsistent ({consistency.max():.3e})")

    r = np.arcsinh(sinh)
    logger.debug("recovered squeeze parameters r=%s", r)
    factors = ShaleFactors(S1, S2, r[0], r[1])
    error = float(np.linalg.norm(shale_reconstruct(factors) - Gbar))
    if error > tol * max(1.0, float(np.linalg.norm(Gbar))):
        raise DecompositionError(f"factors do not reconstruct the input (error {error:.3e})")
    return factors


def _core(r1: float, r2: float) -> DoubledUpMatrix:
    return DoubledUpMatrix(-np.diag(np.cosh([r1, r2])), -np.diag(np.sinh([r1, r2])))


def shale_reconstruct(f: ShaleFactors) -> np.ndarray:
    """Δ(S1, 0) · core(R) · Δ(S2, 0) as a full 4x4 matrix"""
    for name, S in (("S1", f.S1), ("S2", f.S2)):
        if not is_unitary(S, tol=UNITARY_TOL):
            raise ContractError(f"{name} is not unitary")
    product = DoubledUpMatrix.passive(f.S1) @ _core(f.r1, f.r2) @ DoubledUpMatrix.passive(f.S2)
    return product.expand()


def bs_matrix(p: BeamsplitterParams) -> np.ndarray:
    s, c = np.sin(p.theta), np.cos(p.theta)
    return np.array([
        [np.exp(1j * p.phi1) * s, np.exp(1j * (p.phi1 + p.phi3)) * c],
        [np.exp(1j * p.phi2) * c, -np.exp(1j * (p.phi2 + p.phi3)) * s],
    ])


def beamsplitter_params(S: Any) -> BeamsplitterParams:
    """
    Beamsplitter parameters of a 2x2 unitary.

    θ is taken in [-π/2, π/2] with φ1 folded into (-π/2, π/2], so real
    matrices give φ values in {0, π}. Every unitary is exactly representable;
    residual_phase reports any leftover global phase.
    """
    S = np.asarray(S, dtype=complex)
    if S.shape != (2, 2):
        raise DimensionError(f"beamsplitter matrix must be 2x2, got {S.shape}")
    if not is_unitary(S, tol=UNITARY_TOL):
        raise ContractError("beamsplitter matrix is not unitary")
    a, b = S[0]
    c, d = S[1]

    theta = float(np.arctan2(abs(a), abs(b)))
    phi1 = float(np.angle(a))
    if phi1 > np.pi / 2 or phi1 <= -np.pi / 2:
        phi1 -= np.pi * np.sign(phi1)
        theta = -theta
    if abs(d) >= abs(c):
        # φ2 + φ3 from d is better conditioned than from b and c
        total = float(np.angle(-d / np.sin(theta)))
        phi3 = float(np.angle(b)) - phi1
        phi2 = total - phi3
    else:
        phi2 = float(np.angle(c))
        phi3 = float(np.angle(b)) - phi1
    return BeamsplitterParams(
        theta=wrap_angle(theta),
        phi1=wrap_angle(phi1),
        phi2=wrap_angle(phi2),
        phi3=wrap_angle(phi3),
    )


def residual_phase(S: Any, p: BeamsplitterParams) -> float:
    """δ with bs_matrix(p) = S e^{iδ}"""
    S = np.asarray(S, dtype=complex)
    return float(np.angle(np.trace(S.conj().T @ bs_matrix(p))))
