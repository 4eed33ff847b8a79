import logging
from typing import Callable, Optional

import click
import numpy as np

from quantamp.errors import AmpSynthError, ArtifactParseError
from utils.config_manager import ConfigManager
from utils.file_manager import FileManager
from utils.report_generator import ReportGenerator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN_ERROR = 2
EXIT_IO_ERROR = 3
EXIT_PARSE_ERROR = 4


class BaseHandler:
    """Shared wiring of configuration, files and reports for every command"""

    def __init__(self, config_manager: Optional[ConfigManager] = None,
                 file_manager: Optional[FileManager] = None,
                 report_generator: Optional[ReportGenerator] = None):
        self.config = config_manager or ConfigManager()
        output = self.config.get_section("output")
        self.output_dir = output["directory"]
        self.files = file_manager or FileManager(csv_digits=int(output["csv_digits"]))
        self.reports = report_generator or ReportGenerator()

    def run_guarded(self, action: Callable[[], int]) -> int:
        """Run a command body and map failures onto exit statuses"""
        try:
            return action()
        except ArtifactParseError as e:
            click.echo(f"Malformed input: {e}", err=True)
            return EXIT_PARSE_ERROR
        except AmpSynthError as e:
            click.echo(f"Error: {e}", err=True)
            return EXIT_DOMAIN_ERROR
        except np.linalg.LinAlgError as e:
            click.echo(f"Numerical error: {e}", err=True)
            return EXIT_DOMAIN_ERROR
        except OSError as e:
            click.echo(f"I/O error: {e}", err=True)
            return EXIT_IO_ERROR

    def save_json(self, path: str, data) -> int:
        if not self.files.save_json(path, data):
            click.echo(f"Failed to write {path}", err=True)
            return EXIT_IO_ERROR
        click.echo(f"Wrote {path}")
        return EXIT_OK
