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
Run manifests recording how an output file was produced.
"""
from dataclasses import asdict, dataclass, field
import json
import logging
from typing import (
    Any,
    Dict,
    List,
    Optional,
)

from pebbling_thresholds import __version__
from pebbling_thresholds.errors import InvalidParameterError

LOGGER = logging.getLogger(__name__)


class ManifestError(InvalidParameterError):
    """The manifest could not be written."""


@dataclass
class RunManifest:
    """Everything needed to reproduce the outputs of one CLI invocation."""
    subcommand: str
    parameters: Dict[str, Any]
    master_seed: Optional[int]
    outputs: List[str] = field(default_factory=list)
    duration_seconds: float = 0.0
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=str) + '\n'

    def write(self, path: str) -> None:
        """Write the manifest as JSON to `path`.

        Raises:
            ManifestError: if the file cannot be written.
        """
        try:
            with open(path, 'w') as f:
                f.write(self.to_json())
        except OSError as err:
            raise ManifestError(f'Unable to write manifest {path}: {err}') from err
        LOGGER.info('Wrote run manifest to %s', path)


def default_manifest_path(out_path: Optional[str]) -> Optional[str]:
    """The manifest path accompanying `out_path`; None when writing to stdout."""
    if out_path is None or out_path == '-':
        return None
    return f'{out_path}.manifest.json'
