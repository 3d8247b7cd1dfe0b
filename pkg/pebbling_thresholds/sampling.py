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
Random pebbling configurations under the dependent and independent models.

In the dependent model a configuration of t pebbles on n vertices is drawn
uniformly from all C(n+t-1, t) multisets. In the independent model every
pebble picks a vertex uniformly and independently.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
import logging
import math
from typing import (
    Dict,
    Iterable,
    Iterator,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from pebbling_thresholds.errors import InvalidParameterError, handle_errors

LOGGER = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
# Solver sums stay below 2^63 as long as the total is at most this.
MAX_PEBBLES = 1 << 62


class Model(Enum):
    """How pebbles are placed on the vertices."""
    DEPENDENT = 'dependent'
    INDEPENDENT = 'independent'

    def __str__(self) -> str:
        """Use just the value as the string method.

        This allows its use as the value of the `choices` parameter in the
        add_argument method of argparse.ArgumentParser.
        """
        return self.value


def mix64(value: int) -> int:
    """The 64-bit splitmix finalizer."""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedPolicy:
    """Where the randomness of one trial comes from.

    The generator of a trial is a pure function of (master_seed, trial_index),
    so trials can run in any order on any number of workers.
    """
    master_seed: int
    trial_index: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= MASK64:
            raise InvalidParameterError(f'Seeds must be 64-bit unsigned values, got {self.master_seed}')
        if self.trial_index < 0:
            raise InvalidParameterError(f'Trial index must be nonnegative, got {self.trial_index}')

    @property
    def trial_seed(self) -> int:
        return mix64(self.master_seed ^ mix64(self.trial_index))

    def generator(self) -> np.random.Generator:
        """A fresh generator for this trial."""
        return np.random.Generator(np.random.PCG64(self.trial_seed))

    def for_trial(self, trial_index: int) -> 'SeedPolicy':
        return SeedPolicy(self.master_seed, trial_index)

    def derive(self, *keys: int) -> 'SeedPolicy':
        """An independent policy for a sub-experiment identified by `keys`.

        For example, every (n, t, model) point of a threshold search draws
        from `policy.derive(n, t, model_index)`.
        """
        seed = self.master_seed
        for key in keys:
            seed = mix64(seed ^ mix64(key & MASK64))
        return SeedPolicy(seed)


RandomSource = Union[SeedPolicy, np.random.Generator]


class Configuration:
    """A multiset of pebbles stored as per-vertex counts.

    Counts are 64-bit integers. The array is read-only; operations that change
    the configuration return a new one.
    """

    def __init__(self, counts: Union[np.ndarray, Sequence[int]], total: Optional[int] = None) -> None:
        """Create a Configuration.

        Args:
            counts: the number of pebbles on each vertex, 0-indexed.
            total: the expected total; checked against the counts when given.

        Raises:
            InvalidParameterError: if a count is negative, the total does not
                match, or the total exceeds MAX_PEBBLES.
        """
        try:
            array = np.array(counts, dtype=np.int64).reshape(-1)
        except OverflowError as err:
            raise InvalidParameterError(
                f'Pebble counts must lie in 0..2^62: {err}'
            ) from err
        if array.size and array.min() < 0:
            raise InvalidParameterError('Pebble counts must be nonnegative')
        summed = int(array.sum(dtype=object)) if array.size else 0
        if total is not None and summed != total:
            raise InvalidParameterError(f'Counts sum to {summed}, expected total {total}')
        if summed > MAX_PEBBLES:
            raise InvalidParameterError(f'At most 2^62 pebbles are supported, got {summed}')
        array.setflags(write=False)
        self.counts = array
        self.total = summed

    @property
    def n(self) -> int:
        return len(self.counts)

    def __getitem__(self, v: int) -> int:
        return int(self.counts[v])

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(self.counts.tolist())

    def add_pebble(self, v: int) -> 'Configuration':
        """A copy of this configuration with one more pebble on vertex `v`."""
        counts = self.counts.copy()
        counts[v] += 1
        return Configuration(counts)

    def format(self) -> str:
        """Serialize as space-separated 1-indexed "v:count" pairs, omitting zeros."""
        return ' '.join(f'{v + 1}:{c}' for v, c in enumerate(self.counts.tolist()) if c)

    @classmethod
    @handle_errors(InvalidParameterError)
    def parse(cls, text: str, n: int) -> 'Configuration':
        """Parse the "v:count" format for a graph on `n` vertices.

        Pairs may be separated by whitespace or commas; a vertex may appear
        more than once, in which case its counts add up.

        Raises:
            InvalidParameterError: if a pair is malformed or names a vertex
                outside 1..n.
        """
        counts = [0] * n
        for token in text.replace(',', ' ').split():
            vertex, _, count = token.partition(':')
            if not count:
                raise ValueError(f'expected "v:count", got {token!r}')
            v = int(vertex)
            if not 1 <= v <= n:
                raise ValueError(f'vertex {v} is outside 1..{n}')
            counts[v - 1] += int(count)
        return cls(counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    def __repr__(self) -> str:
        return f'Configuration({self.format() or "empty"}; t={self.total})'


def _check_arguments(n: int, t: int) -> None:
    if n < 1:
        raise InvalidParameterError(f'Configurations need at least one vertex, got n={n}')
    if t < 0:
        raise InvalidParameterError(f'The pebble count must be nonnegative, got t={t}')
    if t > MAX_PEBBLES:
        raise InvalidParameterError(f'At most 2^62 pebbles are supported, got t={t}')


def _generator(source: RandomSource) -> np.random.Generator:
    if isinstance(source, SeedPolicy):
        return source.generator()
    return source


def count_configurations(n: int, t: int) -> int:
    """The number C(n+t-1, t) of configurations of t pebbles on n vertices, exactly."""
    _check_arguments(n, t)
    return math.comb(n + t - 1, t)


def sample_dependent(n: int, t: int, seed: RandomSource) -> Configuration:
    """Draw a configuration uniformly from all C(n+t-1, t) multisets.

    Positions 0..n+t-2 are split into n-1 bars and t stars; the count on
    vertex i is the number of stars between bar i-1 and bar i. Whichever of
    the two sets is smaller is drawn as a uniform subset (numpy switches
    between Floyd's algorithm and a partial Fisher-Yates shuffle internally),
    so time and memory are O(min(n, t)) plus the O(n) output.

    Args:
        n: number of vertices.
        t: number of pebbles.
        seed: a SeedPolicy, or a Generator to draw from directly.
    """
    _check_arguments(n, t)
    if n == 1 or t == 0:
        counts = np.zeros(n, dtype=np.int64)
        counts[0] = t
        return Configuration(counts, t)

    rng = _generator(seed)
    positions = n + t - 1
    if n - 1 <= t:
        bars = np.sort(rng.choice(positions, n - 1, replace=False, shuffle=False))
        counts = np.diff(np.concatenate(([-1], bars, [positions]))) - 1
    else:
        stars = np.sort(rng.choice(positions, t, replace=False, shuffle=False))
        # a star preceded by j other stars sits after (position - j) bars
        counts = np.bincount(stars - np.arange(t), minlength=n)
    return Configuration(counts.astype(np.int64), t)


def sample_independent(n: int, t: int, seed: RandomSource) -> Configuration:
    """Drop each of t pebbles on a uniformly random vertex, independently."""
    _check_arguments(n, t)
    if n == 1 or t == 0:
        counts = np.zeros(n, dtype=np.int64)
        counts[0] = t
        return Configuration(counts, t)
    rng = _generator(seed)
    counts = rng.multinomial(t, np.full(n, 1.0 / n))
    return Configuration(counts.astype(np.int64), t)


def sample(n: int, t: int, seed: RandomSource, model: Model = Model.DEPENDENT) -> Configuration:
    """Draw a configuration from the given model."""
    if model is Model.INDEPENDENT:
        return sample_independent(n, t, seed)
    return sample_dependent(n, t, seed)


def iter_configurations(n: int, t: int) -> Iterator[Configuration]:
    """Enumerate all C(n+t-1, t) configurations, ordered by bar positions."""
    _check_arguments(n, t)
    positions = n + t - 1
    for bars in combinations(range(positions), n - 1):
        edges = (-1,) + bars + (positions,)
        yield Configuration([b - a - 1 for a, b in zip(edges, edges[1:])], t)


def independent_weight(config: Configuration) -> float:
    """The probability of `config` under the independent model."""
    n, t = config.n, config.total
    log_weight = (math.lgamma(t + 1) - sum(math.lgamma(c + 1) for c in config.counts.tolist())
                  - t * math.log(n))
    return math.exp(log_weight)


def level_set_sizes(config: Configuration, vertices: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """Sizes of the level sets L_i = {v : C(v) = i}, restricted to `vertices`.

    Returns:
        A mapping from each count i present to |L_i ∩ vertices|.
    """
    counts = config.counts if vertices is None else config.counts[np.fromiter(vertices, dtype=np.int64)]
    values, sizes = np.unique(counts, return_counts=True)
    return dict(zip(values.tolist(), sizes.tolist()))
