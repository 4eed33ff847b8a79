"""
Added-noise bound for phase-insensitive amplification.

A two-channel amplifier has the doubled-up transfer value

    Gbar = [[G,  H ],      G = [[g11, g12],   H = [[h11, h12],
            [H#, G#]],          [g21, g22]],       [h21, h22]]

with channel 1 carrying the signal and channel 2 the idler/noise port. If
Gbar is symplectic and h11 = 0, the noise reaching the signal output obeys
|g12|^2 + |h12|^2 >= |g11|^2 - 1, with equality for the matrix returned by
optimal_dc_matrix.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from quantamp.dup_linalg import DoubledUpMatrix, delta_expand, delta_extract, matrix_to_json
from quantamp.errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

GAIN_TOL = 1e-12
PR_TOL = 1e-9


@dataclass(frozen=True)
class AmplifierDCSpec:
    """Requested signal gain g11 (complex, |g11| >= 1)"""

    g11: complex

    def __post_init__(self):
        g11 = complex(self.g11)
        if not np.isfinite(g11.real) or not np.isfinite(g11.imag):
            raise DomainError(f"gain must be finite, got {g11}")
        if abs(g11) < 1.0 - GAIN_TOL:
            raise DomainError(f"gain magnitude must be at least 1 for amplification, got |g11| = {abs(g11):.6g}")
        object.__setattr__(self, "g11", g11)

    @property
    def power_gain(self) -> float:
        return abs(self.g11) ** 2

    def to_dict(self) -> Dict[str, float]:
        return {"g11_re": self.g11.real, "g11_im": self.g11.imag}


@dataclass(frozen=True, eq=False)
class AmplifierGainMatrix:
    G: np.ndarray
    H: np.ndarray
    optimal: bool = False

    def __post_init__(self):
        G = np.array(self.G, dtype=complex)
        H = np.array(self.H, dtype=complex)
        if G.shape != (2, 2) or H.shape != (2, 2):
            raise DimensionError(f"G and H must be 2x2, got {G.shape} and {H.shape}")
        G.setflags(write=False)
        H.setflags(write=False)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "H", H)

    g11 = property(lambda self: self.G[0, 0])
    g12 = property(lambda self: self.G[0, 1])
    g21 = property(lambda self: self.G[1, 0])
    g22 = property(lambda self: self.G[1, 1])
    h11 = property(lambda self: self.H[0, 0])
    h12 = property(lambda self: self.H[0, 1])
    h21 = property(lambda self: self.H[1, 0])
    h22 = property(lambda self: self.H[1, 1])

    def full(self) -> np.ndarray:
        """4x4 matrix in (s, w, s*, w*) ordering"""
        return delta_expand(DoubledUpMatrix(self.G, self.H))

    @classmethod
    def from_full(cls, Gbar: Any, tol: float = 1e-10) -> "AmplifierGainMatrix":
        Gbar = np.asarray(Gbar, dtype=complex)
        if Gbar.shape != (4, 4):
            raise DimensionError(f"amplifier matrix must be 4x4, got {Gbar.shape}")
        d = delta_extract(Gbar, tol=tol)
        return cls(d.block1, d.block2)

    def to_dict(self) -> Dict[str, Any]:
        return {"G": matrix_to_json(self.G), "H": matrix_to_json(self.H), "optimal": self.optimal}


def min_added_noise(spec: AmplifierDCSpec) -> float:
    """|g11|^2 - 1"""
    return max(0.0, spec.power_gain - 1.0)


def optimal_dc_matrix(spec: AmplifierDCSpec) -> AmplifierGainMatrix:
    """Noise-optimal matrix with g12 = 0 and h11 = 0 for the requested g11"""
    g11 = spec.g11
    p = spec.power_gain
    # radicands are nonnegative for p >= 1; clip the rounding at p == 1
    g21 = np.sqrt(max(0.0, (p - 1.0) / p))
    g22 = np.sqrt(1.0 + p)
    h12 = np.sqrt(max(0.0, p * (p - 1.0))) / np.conj(g11)
    h21 = np.sqrt(max(0.0, (p * p - 1.0) / p))
    G = np.array([[g11, 0.0], [g21, g22]], dtype=complex)
    H = np.array([[0.0, h12], [h21, 1.0]], dtype=complex)
    logger.debug("optimal DC matrix for g11=%s: G=%s H=%s", g11, G.tolist(), H.tolist())
    return AmplifierGainMatrix(G, H, optimal=True)


def noise_figure(m: AmplifierGainMatrix) -> float:
    """Noise power reaching the signal output, |g12|^2 + |h12|^2"""
    return float(abs(m.g12) ** 2 + abs(m.h12) ** 2)


def is_phase_insensitive(m: AmplifierGainMatrix, tol: float = PR_TOL) -> bool:
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    return bool(abs(m.h11) <= tol)


def pr_equation_residuals(m: AmplifierGainMatrix) -> Tuple[float, float, float, float, float]:
    """
    Absolute residuals of the five scalar identities equivalent to
    Gbar† J Gbar = J for a 4x4 doubled-up matrix.
    """
    g11, g12, g21, g22 = m.g11, m.g12, m.g21, m.g22
    h11, h12, h21, h22 = m.h11, m.h12, m.h21, m.h22
    c = np.conj
    return (
        float(abs(c(g11) * h12 + c(g21) * h22 - (h11 * c(g12) + h21 * c(g22)))),
        float(abs(c(g12) * h12 + c(g22) * h22 - (h12 * c(g12) + h22 * c(g22)))),
        float(abs(c(g11) * g11 + c(g21) * g21 - (h11 * c(h11) + h21 * c(h21) + 1.0))),
        float(abs(c(g11) * g12 + c(g21) * g22 - (h11 * c(h12) + h21 * c(h22)))),
        float(abs(c(g12) * g12 + c(g22) * g22 - (h12 * c(h12) + h22 * c(h22) + 1.0))),
    )


def noise_identity_residual(m: AmplifierGainMatrix) -> float:
    """|(|h12|^2 - |g12|^2) - (|g11|^2 - 1)|, zero for symplectic h11 = 0 matrices"""
    return float(abs((abs(m.h12) ** 2 - abs(m.g12) ** 2) - (abs(m.g11) ** 2 - 1.0)))
