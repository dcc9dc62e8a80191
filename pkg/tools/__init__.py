"""
Tools package
Run-configuration parsing and CSV input/output for the command-line front end
"""

from tools.run_config import RunConfig, parse_config_text, load_config_file, build_run_config
from tools.csv_tools import (
    module_versions,
    render_csv,
    write_csv,
    sibling_path,
    read_csv_with_header,
    read_boundary,
)

__all__ = [
    'RunConfig',
    'parse_config_text',
    'load_config_file',
    'build_run_config',
    'module_versions',
    'render_csv',
    'write_csv',
    'sibling_path',
    'read_csv_with_header',
    'read_boundary',
]
