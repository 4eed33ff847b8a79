import json
import logging
from typing import Any

import click

from handlers.base_handler import EXIT_OK, BaseHandler
from quantamp.caves_bound import (
    AmplifierDCSpec,
    AmplifierGainMatrix,
    min_added_noise,
    noise_identity_residual,
    optimal_dc_matrix,
)
from quantamp.dup_linalg import matrix_from_json, matrix_to_json
from quantamp.errors import ArtifactParseError
from quantamp.shale import beamsplitter_params, shale_decompose

logger = logging.getLogger(__name__)


class AnalysisHandler(BaseHandler):
    """Noise bound and Shale decomposition commands"""

    def bound(self, gain: complex) -> int:
        return self.run_guarded(lambda: self._bound(gain))

    def _bound(self, gain: complex) -> int:
        spec = AmplifierDCSpec(gain)
        matrix = optimal_dc_matrix(spec)
        result = {
            "gain": spec.to_dict(),
            "min_added_noise": min_added_noise(spec),
            "optimal_matrix": matrix_to_json(matrix.full()),
            "noise_identity_residual": noise_identity_residual(matrix),
        }
        click.echo(json.dumps(result, indent=2))
        return EXIT_OK

    def read_matrix(self, data: Any):
        """Accepts a bare matrix, the bound output or a {G, H} pair"""
        if not isinstance(data, dict):
            raise ArtifactParseError("matrix", "expected a JSON object")
        if "optimal_matrix" in data:
            return matrix_from_json(data["optimal_matrix"], field="optimal_matrix")
        if "G" in data and "H" in data:
            G = matrix_from_json(data["G"], field="G")
            H = matrix_from_json(data["H"], field="H")
            return AmplifierGainMatrix(G, H).full()
        return matrix_from_json(data, field="matrix")

    def decompose(self, matrix_path: str) -> int:
        return self.run_guarded(lambda: self._decompose(matrix_path))

    def _decompose(self, matrix_path: str) -> int:
        Gbar = self.read_matrix(self.files.load_json(matrix_path))
        factors = shale_decompose(Gbar)
        bs_out = beamsplitter_params(factors.S1)
        bs_in = beamsplitter_params(factors.S2)
        logger.info("decomposed %s: r=(%.6g, %.6g)", matrix_path, factors.r1, factors.r2)
        result = {
            "factors": factors.to_dict(),
            "bs_out": bs_out.to_dict(),
            "bs_in": bs_in.to_dict(),
        }
        click.echo(json.dumps(result, indent=2))
        click.echo(self.reports.generate_decomposition_report(factors, bs_out, bs_in))
        return EXIT_OK
