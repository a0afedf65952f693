"""
CLI and I/O Module
Config parsing, result files, phase-diagram SVG, rate chart and the command line
"""

from .config import parse_config, config_from_dict, parse_spec, parse_law
from .results import (
    ResultFile,
    ResultFormat,
    RAW_COLUMNS,
    AGGREGATE_COLUMNS,
    emit_results,
    write_json,
    load_results_csv,
    load_results_json,
)
from .svg import DiagramFile, emit_phase_svg
from .charts import emit_rate_chart
from .main import cli_main

__all__ = [
    'parse_config',
    'config_from_dict',
    'parse_spec',
    'parse_law',
    'ResultFile',
    'ResultFormat',
    'RAW_COLUMNS',
    'AGGREGATE_COLUMNS',
    'emit_results',
    'write_json',
    'load_results_csv',
    'load_results_json',
    'DiagramFile',
    'emit_phase_svg',
    'emit_rate_chart',
    'cli_main',
]
