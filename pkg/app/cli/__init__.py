"""
Command-line package
"""
from app.cli.config_loader import SimConfig, load_config, dump_config, parse_config
from app.cli.presets import preset, get_available_presets
from app.cli.csv_writer import emit_csv, CSV_HEADER
from app.cli.commands import cli

__all__ = [
    'SimConfig',
    'load_config',
    'dump_config',
    'parse_config',
    'preset',
    'get_available_presets',
    'emit_csv',
    'CSV_HEADER',
    'cli'
]
