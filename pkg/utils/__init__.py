"""
Utilities package for configuration, trajectory I/O and run logging.
"""

__version__ = "0.1.0"

from .config_utils import (
    ConfigError,
    config_to_dict,
    load_config,
    parse_config,
    parse_config_dict,
    set_config_value,
)
from .io_utils import (
    MANIFEST_FILE,
    TRAJECTORY_FILE,
    RunManifest,
    events_path,
    read_manifest,
    read_trajectory,
    write_manifest,
    write_trajectory,
    work_path,
)
from .logging_utils import RunLogger, RunResult, configure_console, measure_execution

__all__ = [
    '__version__',
    'ConfigError',
    'config_to_dict',
    'load_config',
    'parse_config',
    'parse_config_dict',
    'set_config_value',
    'MANIFEST_FILE',
    'TRAJECTORY_FILE',
    'RunManifest',
    'events_path',
    'read_manifest',
    'read_trajectory',
    'write_manifest',
    'write_trajectory',
    'work_path',
    'RunLogger',
    'RunResult',
    'configure_console',
    'measure_execution',
]
