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
Execution of independent Monte Carlo trials, serially or on a process pool.

A trial is identified by its index; its randomness comes from
SeedPolicy(point_seed, index). Workers return counts over contiguous index
ranges and the runner adds them up, so the result does not depend on the
number of workers or the order in which ranges finish.
"""
import logging
import multiprocessing
import os
from types import TracebackType
from typing import (
    Any,
    Callable,
    Optional,
    Type,
)

import numpy as np

from pebbling_thresholds.errors import InvalidParameterError
from pebbling_thresholds.graph import FuseSpec, Graph
from pebbling_thresholds.sampling import Model, SeedPolicy, level_set_sizes, sample, sample_dependent
from pebbling_thresholds.solvers.fuse import fuse_certificate
from pebbling_thresholds.solvers.tree import tree_solvable_batch

LOGGER = logging.getLogger(__name__)

# counts-matrix entries solved at once by one worker
BATCH_CELLS = 1 << 22
DEFAULT_CHUNK_TRIALS = 100

TrialCounter = Callable[..., int]


def count_solvable(graph: Graph, t: int, model: Model, policy: SeedPolicy, start: int, stop: int) -> int:
    """Number of solvable configurations among trials [start, stop)."""
    rows = max(1, BATCH_CELLS // graph.n)
    solved = 0
    for low in range(start, stop, rows):
        high = min(stop, low + rows)
        counts = np.stack([sample(graph.n, t, policy.for_trial(i), model).counts
                           for i in range(low, high)])
        solved += int(tree_solvable_batch(graph, counts).sum())
    return solved


def count_pair_shortfalls(fuse: FuseSpec, t: int, needed: float, policy: SeedPolicy,
                          start: int, stop: int) -> int:
    """Number of trials in [start, stop) where fewer than `needed` sparks hold exactly two pebbles."""
    short = 0
    for i in range(start, stop):
        config = sample_dependent(fuse.n, t, policy.for_trial(i))
        if level_set_sizes(config, fuse.sparks).get(2, 0) < needed:
            short += 1
    return short


def count_certificate_exceedances(fuse: FuseSpec, t: int, policy: SeedPolicy, start: int, stop: int) -> int:
    """Number of trials in [start, stop) whose certificate satisfies Y >= 1."""
    return sum(
        1 for i in range(start, stop)
        if fuse_certificate(fuse, sample_dependent(fuse.n, t, policy.for_trial(i))).v1_solvable
    )


class TrialRunner:
    """Runs ranges of trials through a counting function.

    Use as a context manager so the worker pool is shut down:

        with TrialRunner(threads=8) as runner:
            solved = runner.count(count_solvable, 0, 1000, graph, t, model, policy)
    """

    def __init__(self, threads: Optional[int] = None, chunk_trials: int = DEFAULT_CHUNK_TRIALS) -> None:
        """Create a runner.

        Args:
            threads: number of worker processes; defaults to the available
                parallelism. 1 runs everything in the calling process.
            chunk_trials: trials per work item handed to a worker.

        Raises:
            InvalidParameterError: if threads or chunk_trials is below 1.
        """
        if threads is not None and threads < 1:
            raise InvalidParameterError(f'threads must be at least 1, got {threads}')
        if chunk_trials < 1:
            raise InvalidParameterError(f'chunk_trials must be at least 1, got {chunk_trials}')
        self.threads = threads if threads is not None else os.cpu_count() or 1
        self.chunk_trials = chunk_trials
        self._pool: Optional[Any] = None

    def __enter__(self) -> 'TrialRunner':
        if self.threads > 1:
            LOGGER.debug('Starting %d worker processes', self.threads)
            self._pool = multiprocessing.get_context('spawn').Pool(self.threads)
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc_val: Optional[BaseException],
        exc_tb: Optional[TracebackType],
    ) -> None:
        if self._pool is not None:
            if exc_type is None:
                self._pool.close()
            else:
                self._pool.terminate()
            self._pool.join()
            self._pool = None

    def count(self, counter: TrialCounter, start: int, stop: int, *args: Any) -> int:
        """Sum `counter(*args, low, high)` over chunks covering trials [start, stop)."""
        chunks = [(low, min(stop, low + self.chunk_trials))
                  for low in range(start, stop, self.chunk_trials)]
        if self._pool is None or len(chunks) == 1:
            return sum(counter(*args, low, high) for low, high in chunks)
        return sum(self._pool.starmap(counter, [(*args, low, high) for low, high in chunks]))


SERIAL_RUNNER = TrialRunner(threads=1)
