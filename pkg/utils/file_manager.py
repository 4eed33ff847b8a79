import csv
import json
import logging
import os
import re
from typing import Any, Iterable, Sequence

from quantamp.errors import ArtifactParseError

logger = logging.getLogger(__name__)


class FileManager:
    """Manages artifact files and the output directory structure"""

    def __init__(self, base_dir: str = ".", csv_digits: int = 17):
        self.base_dir = base_dir
        self.csv_digits = csv_digits

    def create_directory(self, directory_path: str) -> bool:
        """Create directory if it doesn't exist. Return False on any error."""
        try:
            os.makedirs(directory_path, exist_ok=True)
            return os.path.isdir(directory_path)
        except OSError as e:
            logger.error("Error creating directory %s: %s", directory_path, e)
            return False

    def dump_json(self, data: Any) -> str:
        """Canonical JSON text; writing what load_json returns gives the same bytes"""
        return json.dumps(data, indent=2) + "\n"

    def save_json(self, file_path: str, data: Any) -> bool:
        """Save a JSON artifact. Return False on any error."""
        try:
            directory = os.path.dirname(file_path)
            if directory and not self.create_directory(directory):
                return False
            with open(file_path, 'w', encoding='utf-8') as f:
                f.write(self.dump_json(data))
            logger.info("wrote %s", file_path)
            return True
        except (OSError, TypeError, ValueError) as e:
            logger.error("Error saving file %s: %s", file_path, e)
            return False

    def save_csv(self, file_path: str, header: Sequence[str], rows: Iterable[Sequence[float]]) -> bool:
        """Save numeric rows at full double precision. Return False on any error."""
        try:
            directory = os.path.dirname(file_path)
            if directory and not self.create_directory(directory):
                return False
            with open(file_path, 'w', encoding='utf-8', newline='') as f:
                writer = csv.writer(f)
                writer.writerow(header)
                for row in rows:
                    writer.writerow([self.format_number(x) for x in row])
            logger.info("wrote %s", file_path)
            return True
        except OSError as e:
            logger.error("Error saving file %s: %s", file_path, e)
            return False

    def format_number(self, value: float) -> str:
        return f"{value:.{self.csv_digits}g}"

    def load_json(self, file_path: str) -> Any:
        """Read a JSON artifact; OSError propagates, bad JSON becomes ArtifactParseError"""
        with open(file_path, 'r', encoding='utf-8') as f:
            text = f.read()
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ArtifactParseError(os.path.basename(file_path), f"invalid JSON at line {e.lineno}: {e.msg}")

    def get_network_path(self, output_dir: str, gain: complex) -> str:
        """Default path of a synthesized network, e.g. artifacts/network_g2.json"""
        return os.path.join(self.base_dir, output_dir, f"network_g{self.clean_filename(self.format_gain(gain))}.json")

    def get_sweep_path(self, output_dir: str, network_path: str) -> str:
        """Default CSV path for the sweep of a network file"""
        stem = os.path.splitext(os.path.basename(network_path))[0]
        return os.path.join(self.base_dir, output_dir, f"{self.clean_filename(stem)}_bode.csv")

    @staticmethod
    def format_gain(gain: complex) -> str:
        gain = complex(gain)
        if gain.imag == 0:
            return f"{gain.real:g}"
        return f"{gain.real:g}{gain.imag:+g}j"

    def clean_filename(self, filename: str) -> str:
        """Clean filename to be filesystem-safe"""
        # Replace invalid characters with underscores
        cleaned = re.sub(r'[<>:"/\\|?*+ ]', '_', filename)
        # Remove leading/trailing spaces and dots
        cleaned = cleaned.strip('. ')
        # Replace multiple underscores with single
        cleaned = re.sub(r'_+', '_', cleaned)
        return cleaned
