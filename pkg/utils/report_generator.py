from datetime import datetime
from typing import Any, Dict, Optional

import numpy as np

from quantamp.amp_synth import AmplifierNetwork, FrequencySweep, VerificationReport
from quantamp.qsys import RealizabilityCertificate, TransferProbeReport
from quantamp.shale import BeamsplitterParams, ShaleFactors
from quantamp.squeezer import squeezing_db


class ReportGenerator:
    """Generates markdown reports from synthesis and verification results"""

    def __init__(self, float_format: str = ".6g"):
        self.float_format = float_format

    def fmt(self, value: Optional[float]) -> str:
        if value is None:
            return "n/a"
        return format(float(value), self.float_format)

    def fmt_complex(self, value: complex) -> str:
        value = complex(value)
        if value.imag == 0:
            return self.fmt(value.real)
        return f"{self.fmt(value.real)}{'+' if value.imag >= 0 else '-'}{self.fmt(abs(value.imag))}j"

    def generate_synthesis_report(self, network: AmplifierNetwork, report: VerificationReport) -> str:
        """Generate markdown for a synthesized network and its verification"""
        g11 = network.spec.g11
        markdown = f"# Amplifier synthesis - g11 = {self.fmt_complex(g11)}\n\n"
        markdown += f"**DC gain**: {self.fmt(20 * np.log10(abs(g11)))} dB\n"
        markdown += f"**Bandwidth scale**: {self.fmt(network.epsilon)} rad/s\n"
        markdown += f"**Generated**: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n\n"

        markdown += "## Beamsplitters\n\n"
        markdown += self.format_beamsplitter("input", network.bs_in)
        markdown += self.format_beamsplitter("output", network.bs_out)
        markdown += "\n## Squeezers\n\n"
        for name, sq in (("sq1", network.sq1), ("sq2", network.sq2)):
            markdown += (
                f"- {name}: kappa = {self.fmt(sq.kappa)} rad/s, chi = {self.fmt_complex(sq.chi)} rad/s, "
                f"alpha = {self.fmt_complex(sq.alpha)}\n"
            )
        markdown += "\n" + self.generate_verification_section(report)
        return markdown

    def format_beamsplitter(self, name: str, params: BeamsplitterParams) -> str:
        return (
            f"- {name}: theta = {self.fmt(params.theta)}, phi1 = {self.fmt(params.phi1)}, "
            f"phi2 = {self.fmt(params.phi2)}, phi3 = {self.fmt(params.phi3)} (rad)\n"
        )

    def generate_verification_section(self, report: VerificationReport) -> str:
        status = "PASS" if report.passed else "FAIL"
        markdown = f"## Verification: {status}\n\n"
        markdown += f"- DC gain error: {self.fmt(report.dc_gain_error)}\n"
        markdown += f"- Added noise: {self.fmt(report.dc_noise_figure)} (bound {self.fmt(report.min_noise)})\n"
        markdown += f"- |h11(0)|: {self.fmt(report.dc_h11)}\n"
        markdown += f"- DC match error: {self.fmt(report.dc_match_error)}\n"
        markdown += (
            f"- Max symplectic residual: {self.fmt(report.max_sympl_residual)} "
            f"over {report.sample_count} samples\n"
        )
        markdown += f"- Measured -3 dB frequency: {self.fmt(report.bandwidth_3db)} rad/s\n"
        markdown += f"- Squeezers stable: {'yes' if report.squeezers_stable else 'no'}\n"
        return markdown

    def generate_certificate_report(self, certificate: RealizabilityCertificate) -> str:
        """Generate markdown for a realizability certificate"""
        status = "PASS" if certificate.passed else "FAIL"
        markdown = f"# Realizability certificate: {status}\n\n"
        markdown += (f"- Lyapunov residual: {self.fmt(certificate.residual_lyap)} "
                     f"(threshold {self.fmt(certificate.tol_lyap)})\n")
        markdown += (f"- B residual: {self.fmt(certificate.residual_B)} "
                     f"(threshold {self.fmt(certificate.tol_B)})\n")
        markdown += (f"- D residual: {self.fmt(certificate.residual_D)} "
                     f"(threshold {self.fmt(certificate.tol_D)})\n")
        markdown += f"- Theta inertia matches J: {'yes' if certificate.inertia_ok else 'no'}\n"
        markdown += f"- Tolerance: {self.fmt(certificate.tolerance)}\n"
        return markdown

    def generate_probe_report(self, probe: TransferProbeReport) -> str:
        """Generate markdown for a sampled transfer-function probe"""
        status = "PASS" if probe.passed else "FAIL"
        markdown = f"# Transfer-function probe: {status}\n\n"
        markdown += f"- Samples: {probe.sample_count}\n"
        markdown += f"- Max symplectic residual: {self.fmt(probe.max_residual)}\n"
        markdown += f"- Off-diagonal block at infinity: {self.fmt(probe.infinity_offdiag)}\n"
        markdown += f"- Unitarity defect at infinity: {self.fmt(probe.infinity_unitarity)}\n"
        markdown += f"- Tolerance: {self.fmt(probe.tolerance)}\n"
        return markdown

    def generate_decomposition_report(self, factors: ShaleFactors, bs_out: BeamsplitterParams,
                                      bs_in: BeamsplitterParams) -> str:
        """Generate markdown for a Shale decomposition"""
        markdown = "# Shale decomposition\n\n"
        markdown += "## Squeezing\n\n"
        for name, r in (("r1", factors.r1), ("r2", factors.r2)):
            markdown += f"- {name} = {self.fmt(r)} ({self.fmt(squeezing_db(r))} dB)\n"
        markdown += "\n## Beamsplitters\n\n"
        markdown += self.format_beamsplitter("S1", bs_out)
        markdown += self.format_beamsplitter("S2", bs_in)
        return markdown

    def generate_sweep_summary(self, sweep: FrequencySweep, dc: Dict[str, Any],
                               bandwidth: Optional[float]) -> str:
        """Generate markdown summarizing a Bode sweep"""
        markdown = "# Frequency sweep\n\n"
        markdown += (
            f"- Grid: {len(sweep.omegas)} points, {self.fmt(sweep.omegas[0])} to "
            f"{self.fmt(sweep.omegas[-1])} rad/s\n"
        )
        markdown += self.format_content_sections({"DC values": dc})
        markdown += f"- Measured -3 dB frequency: {self.fmt(bandwidth)} rad/s\n"
        return markdown

    def format_content_sections(self, sections: Dict[str, Dict[str, Any]]) -> str:
        """Format named groups of values into markdown"""
        markdown = ""
        for section_name, values in sections.items():
            markdown += f"\n## {section_name}\n\n"
            for key, value in values.items():
                text = self.fmt(value) if isinstance(value, (int, float)) else str(value)
                markdown += f"- {key}: {text}\n"
            markdown += "\n"
        return markdown
