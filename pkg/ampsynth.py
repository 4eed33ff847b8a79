#!/usr/bin/env python3
"""
Phase-Insensitive Amplifier Synthesis CLI

Builds minimum-noise phase-insensitive amplifiers from two beamsplitters and
two dynamic squeezers, checks physical realizability and emits
frequency-response data.

Exit codes: 0 pass, 1 verification failure, 2 domain error, 3 I/O error,
4 malformed input.
"""

import logging
import math
import sys

import click

from handlers.analysis_handler import AnalysisHandler
from handlers.bode_handler import BodeHandler
from handlers.check_handler import CheckHandler
from handlers.synthesis_handler import SynthesisHandler


def validate_gain(ctx, param, value):
    """Validate complex gain syntax a+bj (plain real accepted)"""
    if value is None:
        return value
    text = value.replace(' ', '')
    try:
        gain = complex(text)
    except ValueError:
        raise click.BadParameter('Gain must be a number or a complex value like 2 or 1.5+0.5j')
    return gain


def validate_positive(ctx, param, value):
    """Validate a strictly positive, finite rate in rad/s"""
    if value is None:
        return value
    if not (math.isfinite(value) and value > 0):
        raise click.BadParameter('Value must be positive and finite (rad/s)')
    return value


def finish(status: int):
    if status != 0:
        sys.exit(status)


@click.group()
@click.version_option(version='1.0.0')
@click.option('--verbose', '-v', is_flag=True, help='Log intermediate numeric quantities')
def cli(verbose):
    """Amplifier Synthesis - minimum-noise phase-insensitive amplifiers from squeezers and beamsplitters"""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)


@cli.command()
@click.option('--gain', required=True, help='Signal DC gain g11, e.g. 2 or 1.5+0.5j', callback=validate_gain)
@click.option('--bandwidth', required=True, type=float, help='Bandwidth scale epsilon (rad/s)', callback=validate_positive)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), help='Network JSON output path')
@click.option('--tolerance', type=float, envvar='AMPSYNTH_TOLERANCE', help='Override all verification tolerances')
def synthesize(gain, bandwidth, out_path, tolerance):
    """Synthesize a network for the requested gain"""
    handler = SynthesisHandler()
    finish(handler.synthesize(gain, bandwidth, out_path, tolerance))


@cli.command()
@click.option('--gain', required=True, help='Signal DC gain g11', callback=validate_gain)
def bound(gain):
    """Minimum added noise and the optimal DC matrix"""
    handler = AnalysisHandler()
    finish(handler.bound(gain))


@cli.command()
@click.option('--matrix', 'matrix_path', required=True, type=click.Path(dir_okay=False), help='4x4 matrix JSON')
def decompose(matrix_path):
    """Shale decomposition into beamsplitters and squeezers"""
    handler = AnalysisHandler()
    finish(handler.decompose(matrix_path))


@cli.command()
@click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False), help='State-space or network JSON')
@click.option('--tolerance', type=float, envvar='AMPSYNTH_TOLERANCE', help='Override the realizability tolerance')
def check(input_path, tolerance):
    """Physical realizability check"""
    handler = CheckHandler()
    finish(handler.check(input_path, tolerance))


@cli.command()
@click.option('--network', 'network_path', required=True, type=click.Path(dir_okay=False), help='Network JSON')
@click.option('--min', 'omega_min', type=float, help='Lowest frequency (rad/s)')
@click.option('--max', 'omega_max', type=float, help='Highest frequency (rad/s)')
@click.option('--points', type=int, help='Number of grid points')
@click.option('--spacing', type=click.Choice(['log', 'linear']), help='Grid spacing')
@click.option('--csv', 'csv_path', type=click.Path(dir_okay=False), help='Sweep CSV output path')
def bode(network_path, omega_min, omega_max, points, spacing, csv_path):
    """Frequency sweep of a synthesized network"""
    handler = BodeHandler()
    finish(handler.bode(network_path, omega_min, omega_max, points, spacing, csv_path))


if __name__ == '__main__':
    cli()
