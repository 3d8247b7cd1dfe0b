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
Contains helpers that are generally useful across the toolkit.
"""
import re
from typing import (
    Any,
    Iterator,
    List,
    Mapping,
    Optional,
)

POWER_RE = re.compile(r'^\s*(?P<base>\d+)\s*\^\s*(?P<exponent>\d+)\s*$')
GRID_RANGE_RE = re.compile(r'^\s*(?P<start>[^.]+?)\s*\.\.\s*(?P<stop>[^.]+?)\s*$')


def get_val_by_path(
    mapping: Mapping,
    dotted_path: str,
    default_value: Optional[Any] = None
) -> Optional[Any]:
    """Get a value from a mapping (e.g. dict) based on a dotted path.

    For example, if `config` is as follows:

        config = {
            'bisection': {
                'precision': 0.05
            }
        }

    Then get_val_by_path(config, 'bisection.precision') would return 0.05, and
    get_val_by_path(config, 'trials.cap') would return None.

    Args:
        mapping: The dictionary in which to search for the dotted path.
        dotted_path: The dotted path to look for in the dictionary. The
            dot character, '.', separates the keys to use when traversing a
            nested dictionary.
        default_value: The default value to return when the given dotted path
            does not exist in the mapping.

    Returns:
        The value that exists at the dotted path or `default_value` if no such
        path exists in `mapping`.
    """
    keys = dotted_path.split('.')
    if not all(keys):
        raise ValueError(f'Invalid dotted_path "{dotted_path}"')

    current_val: Any = mapping
    for key in keys:
        if isinstance(current_val, Mapping) and key in current_val:
            current_val = current_val[key]
        else:
            return default_value
    return current_val


def set_val_by_path(dict_val: dict, dotted_path: str, value: Any) -> None:
    """Set a value in a dictionary using a dotted path.

    If any values along the path are not a dictionary, this will overwrite those
    values with a dictionary. For example, the calls

        set_val_by_path(config, 'trials.cap', 5000)
        set_val_by_path(config, 'trials.batch', 50)

    on an empty dictionary result in {'trials': {'cap': 5000, 'batch': 50}}.

    The dictionary `dict_val` is modified in place.
    """
    if not dotted_path:
        raise ValueError('set_val_by_path requires a non-empty path')

    split_path = dotted_path.split('.')

    for key in split_path[:-1]:
        if not isinstance(dict_val.get(key), dict):
            dict_val[key] = {}
        dict_val = dict_val[key]

    dict_val[split_path[-1]] = value


def iter_dotted_paths(mapping: Mapping, prefix: str = '') -> Iterator[str]:
    """Yield the dotted path of every leaf value in a nested mapping."""
    for key, value in mapping.items():
        path = f'{prefix}{key}'
        if isinstance(value, Mapping) and value:
            yield from iter_dotted_paths(value, f'{path}.')
        else:
            yield path


def parse_count(text: str) -> int:
    """Parse a nonnegative integer written either plainly or as "base^exponent".

    Args:
        text: e.g. "1024" or "2^10".

    Returns:
        The integer value.

    Raises:
        ValueError: if the text is not a nonnegative integer expression.
    """
    match = POWER_RE.match(text)
    if match:
        return int(match.group('base')) ** int(match.group('exponent'))
    value = int(text.strip())
    if value < 0:
        raise ValueError(f'expected a nonnegative integer, got {text!r}')
    return value


def parse_n_grid(text: str) -> List[int]:
    """Parse a vertex-count grid.

    Two syntaxes are accepted: "2^a..2^b" expands to every power of two from
    2^a to 2^b inclusive, and a comma-separated list such as "64,128,2^9"
    is taken literally.

    Raises:
        ValueError: if the grid is empty, malformed, or not strictly increasing.
    """
    range_match = GRID_RANGE_RE.match(text)
    if range_match:
        start = POWER_RE.match(range_match.group('start'))
        stop = POWER_RE.match(range_match.group('stop'))
        if not (start and stop) or start.group('base') != '2' or stop.group('base') != '2':
            raise ValueError(f'range grids must have the form 2^a..2^b, got {text!r}')
        grid = [2 ** k for k in range(int(start.group('exponent')),
                                      int(stop.group('exponent')) + 1)]
    else:
        grid = [parse_count(part) for part in text.split(',') if part.strip()]

    if not grid:
        raise ValueError(f'empty vertex-count grid {text!r}')
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError(f'vertex-count grid must be strictly increasing, got {grid}')
    return grid
