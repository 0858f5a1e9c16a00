# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Run configuration: defaults, JSONC config files and command line flags."""
from dataclasses import asdict, dataclass, fields
from logging import getLogger
from os import path
from typing import Optional, Tuple

from aalto.exceptions import ConfigError, StrictModeError
from aalto.interface_methods import load_json_conf, parse_m_range
from aalto.lattice_utilities.frequency_set import MAX_M
from aalto.lattice_utilities.parallel import default_workers
from aalto.operations.simulation.crofton import MIN_OVERSAMPLE

logger = getLogger('aalto')

AALTO_PATH = path.dirname(__file__)
DEFAULT_CONFIG = path.join(AALTO_PATH, 'resources', 'files', 'config_default.jsonc')

OUTPUT_FORMATS = ('json', 'csv')

# fields that must be positive integers
POSITIVE_FIELDS = ('d', 'n_samples', 'n_lines', 'mc_samples', 'n_points',
                   'singular_samples', 'c6_budget', 'max_table_entries', 'grid',
                   'oversample', 'threads')


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: int
    m_values: Tuple[int, ...]
    seed: int
    n_samples: int
    n_lines: int
    mc_samples: int
    n_points: int
    singular_samples: int
    c6_budget: int
    max_table_entries: int
    grid: int
    oversample: int
    output_format: str
    output_path: Optional[str]
    strict_mode: bool
    threads: int

    def __post_init__(self):
        for name in POSITIVE_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f'{name} must be a positive integer, got {value!r}')
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f'seed must be a non-negative integer, got {self.seed!r}')
        if self.d < 2:
            raise ConfigError(f'd must be at least 2, got {self.d}')
        if not self.m_values:
            raise ConfigError('No m values given')
        for m in self.m_values:
            if m < 1 or m > MAX_M:
                raise ConfigError(f'm must lie in [1, {MAX_M}], got {m}')
        if self.strict_mode and self.d == 4:
            even = [m for m in self.m_values if m % 2 == 0]
            if even:
                raise StrictModeError(f'd = 4 requires odd m in strict mode, got {even}')
        if self.oversample < MIN_OVERSAMPLE:
            raise ConfigError(f'oversample must be at least {MIN_OVERSAMPLE}, got {self.oversample}')
        if not isinstance(self.strict_mode, bool):
            raise ConfigError(f'strict_mode must be true or false, got {self.strict_mode!r}')
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f'output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}')

    @property
    def m(self) -> int:
        """The first m value; single-m commands use it."""
        return self.m_values[0]

    def to_dict(self) -> dict:
        """Config as embedded in artifacts.

        The thread count is left out so that output does not depend on it.
        """
        record = asdict(self)
        record.pop('threads')
        record['m_values'] = list(self.m_values)
        return record


def merge_nested_dicts(dict_a: dict, dict_b: dict, path: str = None) -> dict:
    """Merge dictionary b to dictionary a.

    If keys conflict, that is, the same key exists in both dictionaries,
    overwrite the value of dictionary a with the value of dictionary b.
    """
    if path is None:
        path = []
    for key in dict_b:
        if key in dict_a and isinstance(dict_a[key], dict) and isinstance(dict_b[key], dict):
            merge_nested_dicts(dict_a[key], dict_b[key], path + [str(key)])
        else:
            dict_a[key] = dict_b[key]
    return dict_a


def merge_config_files(config_filename: str) -> dict:
    """Return the RUN block of config_filename, merged with the RUN block of
    the file named by its LOCAL key when there is one.
    """
    config_data = load_json_conf(config_filename, key='')
    if config_data is None:
        raise ConfigError(f'No such config file: {config_filename}')
    if 'RUN' in config_data:
        run_data = dict(config_data['RUN'])
    else:
        run_data = {key: value for key, value in config_data.items() if key != 'LOCAL'}
    local_path = config_data.get('LOCAL', None)
    if local_path is not None:
        if not path.isabs(local_path):
            local_path = path.join(path.dirname(path.abspath(config_filename)), local_path)
        local_data = load_json_conf(local_path, key='')
        if local_data is None:
            logger.error(f'Could not open file {local_path}')
        else:
            merge_nested_dicts(run_data, local_data.get('RUN', local_data))
    return run_data


def _m_values(value) -> Tuple[int, ...]:
    if isinstance(value, bool):
        raise ConfigError(f'Invalid m {value!r}')
    if isinstance(value, int):
        return (value,)
    if isinstance(value, str):
        return tuple(parse_m_range(value))
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return tuple(sorted(set(value)))
    raise ConfigError(f'Invalid m {value!r}: use an integer, a list or a range expression')


class Context:
    """Everything passed to actions: the merged settings and the RunConfig.

    Settings are merged in increasing precedence from the packaged defaults,
    the RUN block of an optional JSONC config file and command line flags
    (None flags are ignored). The thread count comes from AALTO_THREADS.
    """

    def __init__(self, command: str, config_filename: str = None, overrides: dict = None):
        self.command = command
        self.config_filename = config_filename
        settings = load_json_conf(DEFAULT_CONFIG)
        if settings is None:
            raise ConfigError('Packaged default configuration is missing')
        settings = dict(settings)
        if config_filename is not None:
            merge_nested_dicts(settings, merge_config_files(config_filename))
        for key, value in (overrides or {}).items():
            if value is not None:
                settings[key] = value
        self.configuration = settings
        self.run_config = self.build_run_config(settings)

    def build_run_config(self, settings: dict) -> RunConfig:
        known = {f.name for f in fields(RunConfig)} - {'command', 'm_values', 'threads'}
        unknown = set(settings) - known - {'m'}
        if unknown:
            raise ConfigError(f'Unknown configuration keys: {", ".join(sorted(unknown))}')
        if 'm' not in settings:
            raise ConfigError('No m given')
        values = {key: settings.get(key) for key in known}
        return RunConfig(command=self.command, m_values=_m_values(settings['m']),
                         threads=default_workers(), **values)
