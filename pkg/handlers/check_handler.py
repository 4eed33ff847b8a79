import logging
from typing import Any, Optional

import click
import numpy as np

from handlers.base_handler import EXIT_OK, EXIT_VERIFY_FAILED, BaseHandler
from quantamp.amp_synth import AmplifierNetwork, network_probe, network_state_space
from quantamp.dup_linalg import j_matrix
from quantamp.errors import DomainError
from quantamp.qsys import (
    check_realizability,
    solve_theta,
    system_from_json,
    system_scale,
    tf_realizability_probe,
)

logger = logging.getLogger(__name__)


class CheckHandler(BaseHandler):
    """Realizability checks for state-space and network artifacts"""

    def probe_frequencies(self, center: float) -> np.ndarray:
        if not (np.isfinite(center) and center > 0):
            raise DomainError(f"sample frequencies need a positive finite center, got {center}")
        probe = self.config.get_section("probe")
        span = float(probe["span_decades"])
        return np.logspace(np.log10(center) - span, np.log10(center) + span, int(probe["samples"]))

    def is_network(self, data: Any) -> bool:
        return isinstance(data, dict) and "bs_in" in data

    def check(self, input_path: str, tolerance: Optional[float] = None) -> int:
        return self.run_guarded(lambda: self._check(input_path, tolerance))

    def _check(self, input_path: str, tolerance: Optional[float]) -> int:
        data = self.files.load_json(input_path)
        realizability_tol = self.config.get_tolerance("realizability", tolerance)
        probe_tol = self.config.get_tolerance("symplectic", tolerance)

        if self.is_network(data):
            network = AmplifierNetwork.from_dict(data)
            system, _ = network_state_space(network)
            # squeezer modes in grouped ordering are canonical, so Θ = J
            certificate = check_realizability(system, j_matrix(system.n), realizability_tol)
            probe = network_probe(network, self.probe_frequencies(network.epsilon), probe_tol)
        else:
            system = system_from_json(data)
            certificate = check_realizability(system, solve_theta(system), realizability_tol)
            probe = tf_realizability_probe(system, self.probe_frequencies(system_scale(system)), probe_tol)

        click.echo(self.reports.generate_certificate_report(certificate))
        click.echo(self.reports.generate_probe_report(probe))
        passed = certificate.passed and probe.passed
        logger.info("check of %s: %s", input_path, "pass" if passed else "fail")
        return EXIT_OK if passed else EXIT_VERIFY_FAILED
