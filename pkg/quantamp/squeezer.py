"""
Single-mode dynamic squeezer: an optical cavity with decay rate κ around a
χ-strength degenerate parametric element,

    da = -κ/2 a dt - χ a* dt - √κ du,   dy = √κ a dt + du.

At DC it implements the hyperbolic core [[-cosh r, -sinh r], [-sinh r, -cosh r]]
when α = 2χ/κ = -tanh(r/2). Scaling κ and χ by ε dilates the frequency axis
and leaves the DC value untouched.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from quantamp.dup_linalg import DoubledUpMatrix, number_from_json
from quantamp.errors import ArtifactParseError, DomainError
from quantamp.qsys import QuantumStateSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SqueezerParams:
    """Cavity decay κ, nonlinearity χ and bandwidth scale ε, all in rad/s"""

    kappa: float
    chi: complex
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "chi", complex(self.chi))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def alpha(self) -> complex:
        return 2 * self.chi / self.kappa

    @property
    def is_stable(self) -> bool:
        return self.kappa ** 2 > 4 * abs(self.chi) ** 2

    def to_dict(self) -> Dict[str, float]:
        return {
            "kappa_rad_s": self.kappa,
            "chi_re_rad_s": self.chi.real,
            "chi_im_rad_s": self.chi.imag,
            "epsilon_rad_s": self.epsilon,
        }

    @classmethod
    def from_dict(cls, data: Any, field: str = "squeezer") -> "SqueezerParams":
        if not isinstance(data, dict):
            raise ArtifactParseError(field, "expected an object")
        return cls(
            kappa=number_from_json(data, "kappa_rad_s", field, positive=True),
            chi=complex(number_from_json(data, "chi_re_rad_s", field),
                        number_from_json(data, "chi_im_rad_s", field)),
            epsilon=number_from_json(data, "epsilon_rad_s", field, positive=True),
        )


def squeezer_system(p: SqueezerParams) -> QuantumStateSpace:
    """One mode, one channel: A = [[-κ/2, -χ], [-χ*, -κ/2]], B = -√κ I, C = √κ I, D = I"""
    if p.kappa <= 0:
        raise DomainError(f"cavity decay rate must be positive, got {p.kappa}")
    root = np.sqrt(p.kappa)
    return QuantumStateSpace(
        A=DoubledUpMatrix([[-p.kappa / 2]], [[-p.chi]]),
        B=DoubledUpMatrix([[-root]], [[0.0]]),
        C=DoubledUpMatrix([[root]], [[0.0]]),
        D=DoubledUpMatrix.identity(1),
    )


def dc_gain_from_alpha(alpha: float) -> np.ndarray:
    """DC transfer matrix of the squeezer for real α = 2χ/κ"""
    alpha = float(alpha)
    if alpha ** 2 >= 1.0:
        raise DomainError(f"squeezer is unstable for |alpha| >= 1, got alpha = {alpha}")
    diagonal = -(1 + alpha ** 2) / (1 - alpha ** 2)
    off = 2 * alpha / (1 - alpha ** 2)
    return np.array([[diagonal, off], [off, diagonal]], dtype=complex)


def alpha_from_r(r: float) -> float:
    """Stable root α = -tanh(r/2) of the design equation"""
    return float(-np.tanh(r / 2))


def rejected_alpha_root(r: float) -> float:
    """The other root 1/tanh(r/2); |value| > 1, so it gives an unstable cavity"""
    if r == 0:
        raise DomainError("the second design root is unbounded at r = 0")
    return float(1.0 / np.tanh(r / 2))


def design_squeezer(r: float, epsilon: float) -> SqueezerParams:
    """Squeezer with DC core for r and bandwidth scale ε (κ̄ = 1, real χ)"""
    if not (np.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"bandwidth scale must be positive and finite, got {epsilon}")
    alpha = alpha_from_r(r)
    params = SqueezerParams(kappa=epsilon, chi=alpha * epsilon / 2, epsilon=epsilon)
    logger.debug("squeezer for r=%.6g: alpha=%.6g kappa=%.6g chi=%.6g", r, alpha, params.kappa, params.chi.real)
    return params


def squeezing_db(r: float) -> float:
    """Squeezing level of parameter r in dB"""
    return float(20 * np.log10(np.exp(abs(r))))
