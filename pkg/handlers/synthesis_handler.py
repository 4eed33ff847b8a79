import logging
from typing import Dict, Optional

import click
import numpy as np

from handlers.base_handler import EXIT_OK, EXIT_VERIFY_FAILED, BaseHandler
from quantamp.amp_synth import synthesize, verify_synthesis
from quantamp.caves_bound import AmplifierDCSpec

logger = logging.getLogger(__name__)


class SynthesisHandler(BaseHandler):
    """Runs the synthesis pipeline and writes the network artifact"""

    def probe_frequencies(self, epsilon: float) -> np.ndarray:
        probe = self.config.get_section("probe")
        span = float(probe["span_decades"])
        center = np.log10(epsilon)
        return np.logspace(center - span, center + span, int(probe["samples"]))

    def tolerances(self, override: Optional[float] = None) -> Dict[str, float]:
        names = ("dc_match", "noise_gap", "phase_insensitive", "symplectic")
        return {name: self.config.get_tolerance(name, override) for name in names}

    def synthesize(self, gain: complex, bandwidth: float, out_path: Optional[str] = None,
                   tolerance: Optional[float] = None) -> int:
        return self.run_guarded(lambda: self._synthesize(gain, bandwidth, out_path, tolerance))

    def _synthesize(self, gain: complex, bandwidth: float, out_path: Optional[str],
                    tolerance: Optional[float]) -> int:
        spec = AmplifierDCSpec(gain)
        network = synthesize(spec, bandwidth)
        report = verify_synthesis(network, self.probe_frequencies(bandwidth), self.tolerances(tolerance))

        path = out_path or self.files.get_network_path(self.output_dir, gain)
        status = self.save_json(path, network.to_dict())
        if status != EXIT_OK:
            return status

        click.echo(self.reports.generate_synthesis_report(network, report))
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
