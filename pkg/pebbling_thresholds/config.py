#
# MIT License
#
# (C) Copyright 2025-2026 Pebbling Thresholds Developers
#
# Permission is hereby granted, free of charge, to any person obtaining a
# copy of this software and associated documentation files (the "Software"),
# to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense,
# and/or sell copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included
# in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
# OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
# ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
"""
Loading of YAML experiment files and merging of command-line overrides.

An experiment file is a mapping whose keys may be nested; a value is
addressed by its dotted path, for example:

    family: "fuse:0.25"
    n_grid: "2^12..2^18"
    seed: 42
    trials:
      min: 400
      cap: 10000
    bisection:
      precision: 0.05
"""
import logging
from typing import (
    Any,
    Dict,
    Mapping,
    Optional,
    Tuple,
)

import yaml

from pebbling_thresholds.errors import InvalidParameterError, handle_errors
from pebbling_thresholds.experiments import ExperimentSpec, Family
from pebbling_thresholds.sampling import Model
from pebbling_thresholds.util import (
    get_val_by_path,
    iter_dotted_paths,
    parse_count,
    parse_n_grid,
    set_val_by_path,
)

LOGGER = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    'model': 'dependent',
    'trials.min': 400,
    'trials.batch': 100,
    'trials.cap': 10_000,
    'bisection.p_star': 0.5,
    'bisection.precision': 0.05,
    'bisection.max_iterations': 64,
    'threads': None,
}
KNOWN_KEYS = frozenset(DEFAULTS) | {'family', 'n_grid', 't_grid', 'seed'}


def check_keys(config: Mapping) -> None:
    """Raise InvalidParameterError if `config` contains an unrecognised key."""
    unknown = sorted(path for path in iter_dotted_paths(config) if path not in KNOWN_KEYS)
    if unknown:
        raise InvalidParameterError(f'Unknown configuration keys: {", ".join(unknown)}')


def load_config(path: str) -> Dict[str, Any]:
    """Load an experiment file.

    Raises:
        InvalidParameterError: if the file cannot be read, is not a YAML
            mapping, or contains unknown keys.
    """
    try:
        with open(path) as f:
            config = yaml.safe_load(f)
    except OSError as err:
        raise InvalidParameterError(f'Unable to read configuration file {path}: {err}') from err
    except yaml.YAMLError as err:
        raise InvalidParameterError(f'Unable to parse configuration file {path}: {err}') from err

    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise InvalidParameterError(f'Configuration file {path} must contain a mapping')
    check_keys(config)
    LOGGER.debug('Loaded configuration from %s: %s', path, config)
    return config


def apply_overrides(config: Dict[str, Any], overrides: Mapping[str, Optional[Any]]) -> Dict[str, Any]:
    """Set every dotted-path override whose value is not None, in place.

    Returns:
        `config`, for chaining.
    """
    for path, value in overrides.items():
        if value is None:
            continue
        if path not in KNOWN_KEYS:
            raise InvalidParameterError(f'Unknown configuration key: {path}')
        set_val_by_path(config, path, value)
    return config


def get_option(config: Mapping, path: str) -> Any:
    """The value at `path`, or its default."""
    return get_val_by_path(config, path, DEFAULTS.get(path))


def _parse_grid(value: Any) -> Tuple[int, ...]:
    if isinstance(value, str):
        return tuple(parse_n_grid(value))
    if isinstance(value, int):
        return (value,)
    return tuple(parse_count(str(item)) for item in value)


@handle_errors(InvalidParameterError)
def build_experiment_spec(config: Mapping) -> ExperimentSpec:
    """Build the ExperimentSpec described by a merged configuration.

    Raises:
        InvalidParameterError: if a required key is missing or a value is invalid.
    """
    check_keys(config)
    for required in ('family', 'n_grid', 'seed'):
        if get_val_by_path(config, required) is None:
            raise InvalidParameterError(f'The configuration does not define {required}')

    t_grid = get_val_by_path(config, 't_grid')
    return ExperimentSpec(
        family=Family.parse(str(get_option(config, 'family'))),
        n_grid=_parse_grid(get_option(config, 'n_grid')),
        master_seed=int(get_option(config, 'seed')),
        trials_per_point=int(get_option(config, 'trials.min')),
        model=Model(get_option(config, 'model')),
        t_grid=None if t_grid is None else _parse_grid(t_grid),
        p_star=float(get_option(config, 'bisection.p_star')),
        precision=float(get_option(config, 'bisection.precision')),
        batch_size=int(get_option(config, 'trials.batch')),
        trial_cap=int(get_option(config, 'trials.cap')),
        max_iterations=int(get_option(config, 'bisection.max_iterations')),
    )
