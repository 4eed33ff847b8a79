import logging
from typing import Optional

import click
import numpy as np

from handlers.base_handler import EXIT_IO_ERROR, EXIT_OK, BaseHandler
from quantamp.amp_synth import (
    CSV_COLUMNS,
    AmplifierNetwork,
    bandwidth_3db,
    frequency_sweep,
    network_transfer_at,
)
from quantamp.caves_bound import AmplifierGainMatrix, noise_figure

logger = logging.getLogger(__name__)


class BodeHandler(BaseHandler):
    """Frequency sweeps of a synthesized network"""

    def sweep_settings(self, omega_min: Optional[float], omega_max: Optional[float],
                       points: Optional[int], spacing: Optional[str]):
        defaults = self.config.get_section("sweep")
        return (
            float(defaults["omega_min"] if omega_min is None else omega_min),
            float(defaults["omega_max"] if omega_max is None else omega_max),
            int(defaults["points"] if points is None else points),
            str(defaults["spacing"] if spacing is None else spacing),
        )

    def dc_values(self, network: AmplifierNetwork):
        dc = AmplifierGainMatrix.from_full(network_transfer_at(network, 0.0))
        with np.errstate(divide="ignore"):
            h12_db = float(20 * np.log10(abs(dc.h12)))
        return {
            "g11 (dB)": float(20 * np.log10(abs(dc.g11))),
            "h12 (dB)": h12_db,
            "|h11|": float(abs(dc.h11)),
            "added noise": noise_figure(dc),
        }

    def bode(self, network_path: str, omega_min: Optional[float] = None, omega_max: Optional[float] = None,
             points: Optional[int] = None, spacing: Optional[str] = None,
             csv_path: Optional[str] = None) -> int:
        return self.run_guarded(
            lambda: self._bode(network_path, omega_min, omega_max, points, spacing, csv_path)
        )

    def _bode(self, network_path, omega_min, omega_max, points, spacing, csv_path) -> int:
        network = AmplifierNetwork.from_dict(self.files.load_json(network_path))
        omega_min, omega_max, points, spacing = self.sweep_settings(omega_min, omega_max, points, spacing)
        sweep = frequency_sweep(network, omega_min, omega_max, points, spacing)

        path = csv_path or self.files.get_sweep_path(self.output_dir, network_path)
        if not self.files.save_csv(path, CSV_COLUMNS, sweep.csv_rows()):
            click.echo(f"Failed to write {path}", err=True)
            return EXIT_IO_ERROR
        click.echo(f"Wrote {path}")

        click.echo(self.reports.generate_sweep_summary(sweep, self.dc_values(network), bandwidth_3db(sweep)))
        return EXIT_OK
