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
Graphs used by the pebbling toolkit: fuses, paths, stars and small arbitrary graphs.

Vertices are stored 0-indexed. Everything that faces a user (edge lists,
configurations, messages) uses the 1-indexed names v_1..v_n.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import logging
import math
from typing import (
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from pebbling_thresholds.errors import InvalidParameterError, handle_errors

LOGGER = logging.getLogger(__name__)

Edge = Tuple[int, int]


class GraphKind(Enum):
    """Tag describing how a Graph was built or recognised."""
    FUSE = 'fuse'
    PATH = 'path'
    STAR = 'star'
    TREE = 'tree'
    GENERAL = 'general'

    def __str__(self) -> str:
        """Use just the value as the string method."""
        return self.value


@dataclass(frozen=True)
class FuseSpec:
    """The fuse F_{m,n}: a wick v_1..v_m with sparks v_{m+1}..v_n attached to v_m."""
    n: int
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.m <= self.n:
            raise InvalidParameterError(
                f'Fuse wick length must satisfy 1 <= m <= n, got m={self.m}, n={self.n}'
            )

    @property
    def wick(self) -> range:
        """0-indexed ids of the wick vertices v_1..v_m"""
        return range(0, self.m)

    @property
    def sparks(self) -> range:
        """0-indexed ids of the spark vertices v_{m+1}..v_n"""
        return range(self.m, self.n)

    @property
    def center(self) -> int:
        """0-indexed id of v_m, the vertex the sparks hang from"""
        return self.m - 1

    def __str__(self) -> str:
        return f'F_{{{self.m},{self.n}}}'


@dataclass(frozen=True)
class LevelGroup:
    """One BFS level of a rooted layout.

    Vertices appear in BFS order, so the children of each parent are
    contiguous. `starts` indexes the first child of every distinct parent
    within `vertices` and `group_parents` lists those parents, which is the
    shape `numpy.add.reduceat` needs.
    """
    vertices: np.ndarray
    parents: np.ndarray
    starts: np.ndarray
    group_parents: np.ndarray


@dataclass(frozen=True)
class RootedLayout:
    """A graph's BFS tree from a root, grouped by depth."""
    root: int
    parent: np.ndarray
    levels: Tuple[LevelGroup, ...]

    @property
    def depth(self) -> int:
        return len(self.levels)


class Graph:
    """An immutable connected simple graph in compressed adjacency form.

    Neighbors of vertex v are `neighbors[offsets[v]:offsets[v + 1]]`, sorted.
    Instances are safe to share between worker processes.
    """

    def __init__(
        self,
        n: int,
        offsets: np.ndarray,
        neighbors: np.ndarray,
        kind: GraphKind,
        wick_length: Optional[int] = None,
    ) -> None:
        """Create a Graph from already validated arrays. Use `from_edges` instead."""
        self.n = n
        self.offsets = offsets
        self.neighbors = neighbors
        self.kind = kind
        self.wick_length = wick_length
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Edge],
        kind: Optional[GraphKind] = None,
        wick_length: Optional[int] = None,
    ) -> 'Graph':
        """Validate an edge list and build a Graph.

        Args:
            n: the number of vertices; ids are 0..n-1.
            edges: 0-indexed vertex pairs.
            kind: the tag to record. If omitted, the graph is tagged TREE when it
                has n - 1 edges and GENERAL otherwise.
            wick_length: the wick length m when the graph is a fuse labelled
                as F_{m,n}.

        Raises:
            InvalidParameterError: if n < 1, an id is out of range, or the graph
                has a self-loop, a repeated edge, or is disconnected.
        """
        if n < 1:
            raise InvalidParameterError(f'A graph needs at least one vertex, got n={n}')

        edge_array = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edge_array.size and (edge_array.min() < 0 or edge_array.max() >= n):
            raise InvalidParameterError(f'Edge endpoints must lie in 1..{n}')
        if np.any(edge_array[:, 0] == edge_array[:, 1]):
            loop = int(edge_array[edge_array[:, 0] == edge_array[:, 1]][0, 0])
            raise InvalidParameterError(f'Self-loop at v{loop + 1} is not allowed')

        normalized = np.sort(edge_array, axis=1)
        if len(normalized) and len(np.unique(normalized, axis=0)) != len(normalized):
            raise InvalidParameterError('Repeated edges are not allowed')

        sources = np.concatenate((edge_array[:, 0], edge_array[:, 1]))
        targets = np.concatenate((edge_array[:, 1], edge_array[:, 0]))
        order = np.lexsort((targets, sources))
        neighbors = targets[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(sources, minlength=n), out=offsets[1:])

        if kind is None:
            kind = GraphKind.TREE if len(edge_array) == n - 1 else GraphKind.GENERAL
        graph = cls(n, offsets, neighbors.astype(np.int64), kind, wick_length)

        reached = sum(len(level.vertices) for level in graph.rooted_layout(0).levels) + 1
        if reached != n:
            raise InvalidParameterError(
                f'Graph must be connected; only {reached} of {n} vertices reachable from v1'
            )
        return graph

    @cached_property
    def degrees(self) -> np.ndarray:
        """The degree of every vertex"""
        return np.diff(self.offsets)

    @property
    def num_edges(self) -> int:
        return len(self.neighbors) // 2

    @cached_property
    def is_tree(self) -> bool:
        """Whether the graph is a tree (connectivity is checked at construction)"""
        return self.num_edges == self.n - 1

    def neighbors_of(self, v: int) -> np.ndarray:
        """The sorted neighbor ids of vertex `v`."""
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def edges(self) -> List[Edge]:
        """The edges as sorted 0-indexed pairs (u, v) with u < v."""
        sources = np.repeat(np.arange(self.n), self.degrees)
        mask = sources < self.neighbors
        return list(zip(sources[mask].tolist(), self.neighbors[mask].tolist()))

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges())

    @property
    def fuse_spec(self) -> Optional[FuseSpec]:
        """The FuseSpec when this graph is labelled as a fuse, else None."""
        if self.wick_length is None:
            return None
        return FuseSpec(self.n, self.wick_length)

    def rooted_layout(self, root: int) -> RootedLayout:
        """Compute the BFS layout of the graph from `root`.

        The frontier is expanded with array operations, so the cost is O(n + E)
        with one Python-level step per BFS level.
        """
        if not 0 <= root < self.n:
            raise InvalidParameterError(f'Root v{root + 1} is not a vertex of a graph on {self.n} vertices')

        parent = np.full(self.n, -1, dtype=np.int64)
        parent[root] = root
        frontier = np.array([root], dtype=np.int64)
        levels = []
        while frontier.size:
            counts = self.degrees[frontier]
            first = np.repeat(self.offsets[frontier], counts)
            within = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
            candidates = self.neighbors[first + within]
            sources = np.repeat(frontier, counts)

            fresh = parent[candidates] == -1
            candidates, sources = candidates[fresh], sources[fresh]
            # keep the first discovery of each vertex, in discovery order
            _, first_seen = np.unique(candidates, return_index=True)
            first_seen.sort()
            candidates, sources = candidates[first_seen], sources[first_seen]
            if not candidates.size:
                break

            parent[candidates] = sources
            starts = np.flatnonzero(np.r_[True, sources[1:] != sources[:-1]])
            levels.append(LevelGroup(candidates, sources, starts, sources[starts]))
            frontier = candidates

        return RootedLayout(root, parent, tuple(levels))

    @cached_property
    def center(self) -> int:
        """A vertex of minimum eccentricity (exact for trees).

        Found with the double sweep: the farthest vertex a from v_1, then the
        farthest vertex b from a, then the middle of the a-b path.
        """
        first = self.rooted_layout(0)
        if not first.levels:
            return 0
        a = int(first.levels[-1].vertices[0])
        sweep = self.rooted_layout(a)
        if not sweep.levels:
            return a
        b = int(sweep.levels[-1].vertices[0])
        path = [b]
        while path[-1] != a:
            path.append(int(sweep.parent[path[-1]]))
        return path[len(path) // 2]

    @cached_property
    def center_layout(self) -> RootedLayout:
        """The rooted layout from `center`, which has minimum depth."""
        return self.rooted_layout(self.center)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set))

    def __repr__(self) -> str:
        if self.fuse_spec is not None:
            return f'Graph({self.kind}, {self.fuse_spec})'
        return f'Graph({self.kind}, n={self.n}, edges={self.num_edges})'


def _require_count(name: str, value: int, minimum: int = 1) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidParameterError(f'{name} must be an integer, got {value!r}')
    if value < minimum:
        raise InvalidParameterError(f'{name} must be at least {minimum}, got {value}')


def fuse_edges(m: int, n: int) -> List[Edge]:
    """The 0-indexed edge list of F_{m,n}."""
    wick = [(i, i + 1) for i in range(m - 1)]
    sparks = [(i, m - 1) for i in range(m, n)]
    return wick + sparks


def build_fuse(m: int, n: int) -> Graph:
    """Build the fuse F_{m,n}.

    The edges are {v_i, v_{i+1}} for 1 <= i <= m-1 and {v_i, v_m} for
    m+1 <= i <= n. m = n gives the path P_n and m = 1 the star centered at v_1.

    Raises:
        InvalidParameterError: if m < 1 or m > n.
    """
    _require_count('n', n)
    _require_count('m', m)
    if m > n:
        raise InvalidParameterError(f'Fuse wick length m={m} exceeds the vertex count n={n}')
    return Graph.from_edges(n, fuse_edges(m, n), GraphKind.FUSE, wick_length=m)


def build_path(n: int) -> Graph:
    """Build the path P_n on v_1..v_n; the same edges as build_fuse(n, n)."""
    _require_count('n', n)
    return Graph.from_edges(n, fuse_edges(n, n), GraphKind.PATH, wick_length=n)


def build_star(n: int) -> Graph:
    """Build the star on n vertices centered at v_1; the same edges as build_fuse(1, n)."""
    _require_count('n', n)
    return Graph.from_edges(n, fuse_edges(1, n), GraphKind.STAR, wick_length=1)


def wick_length_for_target_threshold(t: int, n: int) -> int:
    """The wick length m = lg(t^2/n) whose fuse has pebbling threshold about t.

    The value is rounded to the nearest integer and clamped to [1, n].

    Raises:
        InvalidParameterError: if n < 2 or t^2 < n (below the sqrt(n) floor
            of the threshold spectrum).
    """
    _require_count('n', n, minimum=2)
    _require_count('t', t)
    if t * t < n:
        raise InvalidParameterError(
            f'Target threshold t={t} is below sqrt(n) for n={n}; no fuse has that threshold'
        )
    exponent = 2 * math.log2(t) - math.log2(n)
    return min(n, max(1, math.floor(exponent + 0.5)))


def wick_length_for_epsilon(n: int, epsilon: float) -> int:
    """The wick length max(1, round((1 - 2*epsilon) lg n)), clamped to n.

    Raises:
        InvalidParameterError: unless n >= 1 and 0 <= epsilon < 1/2.
    """
    _require_count('n', n)
    if not 0 <= epsilon < 0.5:
        raise InvalidParameterError(f'epsilon must lie in [0, 1/2), got {epsilon}')
    m = math.floor((1 - 2 * epsilon) * math.log2(n) + 0.5)
    return min(n, max(1, m))


def detect_fuse_wick_length(n: int, edges: Sequence[Edge]) -> Optional[int]:
    """Find m such that `edges` are exactly the edges of F_{m,n}, if any.

    Only a few candidates are possible: the wick is the longest run
    v_1 - v_2 - ... starting at v_1, possibly overshooting by one spark.
    """
    if len(edges) != n - 1:
        return None
    edge_set = {tuple(sorted(edge)) for edge in edges}
    run_end = 1
    while (run_end - 1, run_end) in edge_set:
        run_end += 1
    for m in sorted({1, max(1, run_end - 1), run_end}, reverse=True):
        if m <= n and {tuple(sorted(edge)) for edge in fuse_edges(m, n)} == edge_set:
            return m
    return None


def format_edge_list(graph: Graph) -> str:
    """Serialize a graph as "n m_edges" followed by one 1-indexed "u v" line per edge."""
    lines = [f'{graph.n} {graph.num_edges}']
    lines.extend(f'{u + 1} {v + 1}' for u, v in graph.edges())
    return '\n'.join(lines) + '\n'


@handle_errors(InvalidParameterError)
def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format written by `format_edge_list`.

    Blank lines and lines starting with '#' are ignored. Graphs whose labelling
    is exactly a fuse are tagged as such so a certificate can be computed.

    Raises:
        InvalidParameterError: if the text is malformed or describes an
            invalid graph.
    """
    rows = [line.split() for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith('#')]
    if not rows:
        raise ValueError('no header line')
    if len(rows[0]) != 2:
        raise ValueError(f'header must be "n m_edges", got {" ".join(rows[0])!r}')
    n, num_edges = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != num_edges:
        raise ValueError(f'header announces {num_edges} edges but {len(rows) - 1} follow')

    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f'edge lines must be "u v", got {" ".join(row)!r}')
        edges.append((int(row[0]) - 1, int(row[1]) - 1))

    wick_length = detect_fuse_wick_length(n, edges)
    if wick_length is not None:
        kind = GraphKind.FUSE
    else:
        kind = GraphKind.TREE if len(edges) == n - 1 else GraphKind.GENERAL
    LOGGER.debug('Parsed %s graph on %d vertices with %d edges', kind, n, len(edges))
    return Graph.from_edges(n, edges, kind, wick_length=wick_length)
