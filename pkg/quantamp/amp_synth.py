"""
Amplifier synthesis pipeline.

gain -> optimal DC matrix -> Shale factors -> (two squeezers, two
beamsplitters) -> network transfer function, verified at DC and along the
imaginary axis. Channel ordering at the network ports is (s, w, s*, w*).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import block_diag

from quantamp.caves_bound import (
    AmplifierDCSpec,
    AmplifierGainMatrix,
    min_added_noise,
    noise_figure,
    optimal_dc_matrix,
)
from quantamp.dup_linalg import (
    DoubledUpMatrix,
    bogoliubov_residual,
    channel_permutation,
    number_from_json,
)
from quantamp.errors import (
    AmpSynthError,
    ArtifactParseError,
    DomainError,
    SynthesisError,
)
from quantamp.qsys import DEFAULT_PROBE_TOL, QuantumStateSpace, TransferProbeReport, transfer_at
from quantamp.shale import (
    BeamsplitterParams,
    beamsplitter_params,
    bs_matrix,
    residual_phase,
    shale_decompose,
)
from quantamp.squeezer import SqueezerParams, design_squeezer, squeezer_system

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {
    "dc_match": 1e-8,
    "noise_gap": 1e-8,
    "phase_insensitive": 1e-9,
    "symplectic": 1e-9,
}
CSV_COLUMNS = (
    "omega_rad_s", "g11_db", "h12_db", "g11_re", "g11_im", "h12_re", "h12_im", "sympl_residual",
)
HALF_POWER_DB = 10 * np.log10(2.0)


@dataclass(frozen=True)
class AmplifierNetwork:
    """Input beamsplitter (S2), two squeezers, output beamsplitter (S1)"""

    bs_in: BeamsplitterParams
    sq1: SqueezerParams
    sq2: SqueezerParams
    bs_out: BeamsplitterParams
    spec: AmplifierDCSpec
    epsilon: float
    gauge_phases: Tuple[float, float] = (0.0, 0.0)

    @property
    def S_in(self) -> np.ndarray:
        return bs_matrix(self.bs_in) * np.exp(-1j * self.gauge_phases[0])

    @property
    def S_out(self) -> np.ndarray:
        return bs_matrix(self.bs_out) * np.exp(-1j * self.gauge_phases[1])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "epsilon_rad_s": self.epsilon,
            "bs_in": self.bs_in.to_dict(),
            "sq1": self.sq1.to_dict(),
            "sq2": self.sq2.to_dict(),
            "bs_out": self.bs_out.to_dict(),
            "gauge_phases": list(self.gauge_phases),
        }

    @classmethod
    def from_dict(cls, data: Any) -> "AmplifierNetwork":
        if not isinstance(data, dict):
            raise ArtifactParseError("network", "expected a JSON object")
        spec_data = data.get("spec")
        if not isinstance(spec_data, dict):
            raise ArtifactParseError("spec", "missing or not an object")
        try:
            g11 = complex(number_from_json(spec_data, "g11_re", "spec"),
                          number_from_json(spec_data, "g11_im", "spec") if "g11_im" in spec_data else 0.0)
            spec = AmplifierDCSpec(g11)
        except (TypeError, ValueError) as e:
            raise ArtifactParseError("spec", str(e))
        epsilon = number_from_json(data, "epsilon_rad_s", positive=True)
        phases = data.get("gauge_phases", [0.0, 0.0])
        if not isinstance(phases, list) or len(phases) != 2:
            raise ArtifactParseError("gauge_phases", "expected a list of two angles")
        phases = (number_from_json(phases, 0, "gauge_phases"), number_from_json(phases, 1, "gauge_phases"))
        return cls(
            bs_in=BeamsplitterParams.from_dict(data.get("bs_in"), field="bs_in"),
            sq1=SqueezerParams.from_dict(data.get("sq1"), field="sq1"),
            sq2=SqueezerParams.from_dict(data.get("sq2"), field="sq2"),
            bs_out=BeamsplitterParams.from_dict(data.get("bs_out"), field="bs_out"),
            spec=spec,
            epsilon=epsilon,
            gauge_phases=phases,
        )


@dataclass
class FrequencySweep:
    omegas: np.ndarray
    values: List[np.ndarray]

    def __post_init__(self):
        self.omegas = np.asarray(self.omegas, dtype=float)
        if len(self.values) != len(self.omegas):
            raise DomainError("one transfer matrix is needed per frequency")
        if np.any(np.diff(self.omegas) <= 0):
            raise DomainError("sweep frequencies must be strictly increasing")

    def entry(self, row: int, col: int) -> np.ndarray:
        return np.array([value[row, col] for value in self.values])

    @property
    def g11(self) -> np.ndarray:
        return self.entry(0, 0)

    @property
    def h11(self) -> np.ndarray:
        return self.entry(0, 2)

    @property
    def h12(self) -> np.ndarray:
        return self.entry(0, 3)

    @property
    def g12(self) -> np.ndarray:
        return self.entry(0, 1)

    @property
    def g11_db(self) -> np.ndarray:
        return 20 * np.log10(np.abs(self.g11))

    @property
    def h12_db(self) -> np.ndarray:
        # h12 vanishes only for unit gain at DC; report -inf there
        with np.errstate(divide="ignore"):
            return 20 * np.log10(np.abs(self.h12))

    @property
    def noise_figure(self) -> np.ndarray:
        return np.abs(self.g12) ** 2 + np.abs(self.h12) ** 2

    @property
    def sympl_residual(self) -> np.ndarray:
        return np.array([bogoliubov_residual(value) for value in self.values])

    def csv_rows(self) -> List[List[float]]:
        g11, h12 = self.g11, self.h12
        columns = (
            self.omegas, self.g11_db, self.h12_db,
            g11.real, g11.imag, h12.real, h12.imag, self.sympl_residual,
        )
        return [list(map(float, row)) for row in zip(*columns)]


@dataclass
class VerificationReport:
    dc_gain_error: float
    dc_noise_figure: float
    min_noise: float
    dc_h11: float
    dc_match_error: float
    max_sympl_residual: float
    sample_count: int
    bandwidth_3db: Optional[float]
    squeezers_stable: bool
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @property
    def noise_gap(self) -> float:
        return self.dc_noise_figure - self.min_noise

    @property
    def passed(self) -> bool:
        tol = self.tolerances
        return (
            self.squeezers_stable
            and self.dc_gain_error <= tol["dc_match"]
            and self.dc_match_error <= tol["dc_match"]
            and abs(self.noise_gap) <= tol["noise_gap"]
            and self.dc_h11 <= tol["phase_insensitive"]
            and self.max_sympl_residual <= tol["symplectic"]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dc_gain_error": self.dc_gain_error,
            "dc_noise_figure": self.dc_noise_figure,
            "min_noise": self.min_noise,
            "noise_gap": self.noise_gap,
            "dc_h11": self.dc_h11,
            "dc_match_error": self.dc_match_error,
            "max_sympl_residual": self.max_sympl_residual,
            "sample_count": self.sample_count,
            "bandwidth_3db_rad_s": self.bandwidth_3db,
            "squeezers_stable": self.squeezers_stable,
            "passed": self.passed,
        }


def synthesize(spec: AmplifierDCSpec, epsilon: float) -> AmplifierNetwork:
    """Minimum-noise phase-insensitive amplifier for the requested DC gain"""
    if not (np.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"bandwidth scale must be positive and finite, got {epsilon}")
    target = optimal_dc_matrix(spec)
    logger.info("synthesizing amplifier for g11=%s, epsilon=%.6g rad/s", spec.g11, epsilon)

    try:
        factors = shale_decompose(target.full())
    except AmpSynthError as e:
        raise SynthesisError("shale_decompose", e)

    sq1 = design_squeezer(factors.r1, epsilon)
    sq2 = design_squeezer(factors.r2, epsilon)
    if not (sq1.is_stable and sq2.is_stable):
        raise SynthesisError("design_squeezer", DomainError("designed squeezer is unstable"))

    try:
        bs_out = beamsplitter_params(factors.S1)
        bs_in = beamsplitter_params(factors.S2)
    except AmpSynthError as e:
        raise SynthesisError("beamsplitter_params", e)
    phases = (residual_phase(factors.S2, bs_in), residual_phase(factors.S1, bs_out))

    net = AmplifierNetwork(
        bs_in=bs_in, sq1=sq1, sq2=sq2, bs_out=bs_out,
        spec=spec, epsilon=float(epsilon), gauge_phases=phases,
    )
    mismatch = float(np.linalg.norm(network_transfer_at(net, 0.0) - target.full()))
    if mismatch > DEFAULT_TOLERANCES["dc_match"] * max(1.0, np.linalg.norm(target.full())):
        raise SynthesisError("verify_dc", ValueError(f"DC mismatch {mismatch:.3e}"))
    logger.info("synthesis complete: r=(%.6g, %.6g), DC mismatch %.3e", factors.r1, factors.r2, mismatch)
    return net


def squeezer_pair_system(net: AmplifierNetwork) -> QuantumStateSpace:
    """Both squeezers as one 2-mode system in grouped ordering (a1, a2, a1*, a2*)"""
    kappas = np.array([net.sq1.kappa, net.sq2.kappa])
    chis = np.array([net.sq1.chi, net.sq2.chi])
    roots = np.sqrt(kappas)
    return QuantumStateSpace(
        A=DoubledUpMatrix(np.diag(-kappas / 2), np.diag(-chis)),
        B=DoubledUpMatrix(np.diag(-roots), np.zeros((2, 2))),
        C=DoubledUpMatrix(np.diag(roots), np.zeros((2, 2))),
        D=DoubledUpMatrix.identity(2),
    )


def network_state_space(net: AmplifierNetwork) -> Tuple[QuantumStateSpace, np.ndarray]:
    """
    Realization of the network as (system with D = I, static output map).

    The input beamsplitter is absorbed into B and C; the returned 4x4
    Δ(S_out S_in, 0) multiplies the system output.
    """
    pair = squeezer_pair_system(net)
    S_in = DoubledUpMatrix.passive(net.S_in)
    system = QuantumStateSpace(
        A=pair.A,
        B=pair.B @ S_in,
        C=S_in.dagger() @ pair.C,
        D=DoubledUpMatrix.identity(2),
    )
    static = DoubledUpMatrix.passive(net.S_out @ net.S_in).expand()
    return system, static


def network_transfer_at(net: AmplifierNetwork, s: complex) -> np.ndarray:
    """Δ(S1,0) · P · blkdiag(G̃1(s), G̃2(s)) · P · Δ(S2,0)"""
    P = channel_permutation(2)
    G1 = transfer_at(squeezer_system(net.sq1), s)
    G2 = transfer_at(squeezer_system(net.sq2), s)
    core = P.T @ block_diag(G1, G2) @ P
    return DoubledUpMatrix.passive(net.S_out).expand() @ core @ DoubledUpMatrix.passive(net.S_in).expand()


def network_probe(net: AmplifierNetwork, freqs: Sequence[float],
                  tol: float = DEFAULT_PROBE_TOL) -> TransferProbeReport:
    """Sampled symplectic check of the whole network; at infinity it is the passive Δ(S_out S_in, 0)"""
    residuals = [bogoliubov_residual(network_transfer_at(net, 1j * float(w))) for w in freqs]
    S = net.S_out @ net.S_in
    return TransferProbeReport(
        frequencies=[float(w) for w in freqs],
        residuals=residuals,
        infinity_offdiag=0.0,
        infinity_unitarity=float(np.linalg.norm(S.conj().T @ S - np.eye(2))),
        tolerance=tol,
    )


def evaluate_sweep(net: AmplifierNetwork, omegas: Sequence[float]) -> FrequencySweep:
    omegas = np.asarray(omegas, dtype=float)
    return FrequencySweep(omegas, [network_transfer_at(net, 1j * w) for w in omegas])


def frequency_sweep(net: AmplifierNetwork, omega_min: float, omega_max: float,
                    points: int, spacing: str = "log") -> FrequencySweep:
    if points < 2:
        raise DomainError(f"a sweep needs at least 2 points, got {points}")
    if not (np.isfinite(omega_min) and np.isfinite(omega_max)):
        raise DomainError(f"sweep limits must be finite, got {omega_min} and {omega_max}")
    if spacing == "log":
        if not 0 < omega_min < omega_max:
            raise DomainError("log spacing needs 0 < omega_min < omega_max")
        omegas = np.logspace(np.log10(omega_min), np.log10(omega_max), points)
    elif spacing == "linear":
        if not 0 <= omega_min < omega_max:
            raise DomainError("linear spacing needs 0 <= omega_min < omega_max")
        omegas = np.linspace(omega_min, omega_max, points)
    else:
        raise DomainError(f"unknown spacing '{spacing}', expected 'linear' or 'log'")
    return evaluate_sweep(net, omegas)


def bandwidth_3db(sweep: FrequencySweep) -> Optional[float]:
    """First frequency where |g11| is 3 dB below its lowest-frequency value"""
    gains = sweep.g11_db
    target = gains[0] - HALF_POWER_DB
    below = np.nonzero(gains <= target)[0]
    if below.size == 0 or below[0] == 0:
        return None
    i = int(below[0])
    w0, w1 = sweep.omegas[i - 1], sweep.omegas[i]
    t = (gains[i - 1] - target) / (gains[i - 1] - gains[i])
    if w0 > 0:
        return float(np.exp(np.log(w0) + t * (np.log(w1) - np.log(w0))))
    return float(w0 + t * (w1 - w0))


def verify_synthesis(net: AmplifierNetwork, freqs: Sequence[float],
                     tolerances: Optional[Dict[str, float]] = None) -> VerificationReport:
    """DC gain, noise and phase-insensitivity checks plus sampled symplecticity"""
    dc = network_transfer_at(net, 0.0)
    measured = AmplifierGainMatrix.from_full(dc)
    target = optimal_dc_matrix(net.spec)
    residuals = [bogoliubov_residual(network_transfer_at(net, 1j * float(w))) for w in freqs]
    bandwidth_grid = frequency_sweep(net, net.epsilon * 1e-3, net.epsilon * 1e3, 301, "log")
    merged = dict(DEFAULT_TOLERANCES)
    merged.update(tolerances or {})
    report = VerificationReport(
        dc_gain_error=float(abs(measured.g11 - net.spec.g11)),
        dc_noise_figure=noise_figure(measured),
        min_noise=min_added_noise(net.spec),
        dc_h11=float(abs(measured.h11)),
        dc_match_error=float(np.linalg.norm(dc - target.full())),
        max_sympl_residual=max(residuals) if residuals else 0.0,
        sample_count=len(residuals),
        bandwidth_3db=bandwidth_3db(bandwidth_grid),
        squeezers_stable=net.sq1.is_stable and net.sq2.is_stable,
        tolerances=merged,
    )
    logger.debug("verification: %s", report.to_dict())
    return report
