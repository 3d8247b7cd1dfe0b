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
Exact linear-time solvability for trees.

On a tree, moving pebbles away from the root never helps, so the number of
pebbles that can be delivered to a root r is

    movable(v) = C(v) + sum over children u of floor(movable(u) / 2),

evaluated bottom-up from the leaves. Rerooting gives every root at once:
the contributions of a vertex's neighbors add up before the final floor,
so removing one child's share from its parent's total is a subtraction.

All passes run one BFS level at a time over 2-D arrays whose rows are
configurations, which is how the Monte Carlo harness solves whole batches.
"""
from dataclasses import dataclass

import numpy as np

from pebbling_thresholds.errors import InvalidParameterError
from pebbling_thresholds.graph import Graph, RootedLayout
from pebbling_thresholds.sampling import Configuration
from pebbling_thresholds.solvers.oracle import check_configuration, check_root


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a rooted tree solve."""
    root: int
    solvable: bool
    movable: int


def require_tree(graph: Graph) -> None:
    """Raise InvalidParameterError unless `graph` is a tree."""
    if not graph.is_tree:
        raise InvalidParameterError(
            f'Expected a tree but the graph has {graph.num_edges} edges on {graph.n} vertices'
        )


def _as_matrix(graph: Graph, counts: np.ndarray) -> np.ndarray:
    matrix = np.array(counts, dtype=np.int64, ndmin=2)
    if matrix.ndim != 2 or matrix.shape[1] != graph.n:
        raise InvalidParameterError(
            f'Expected configurations with {graph.n} counts, got shape {matrix.shape}'
        )
    return matrix


def pull_up(layout: RootedLayout, counts: np.ndarray) -> np.ndarray:
    """Pebbles movable onto every vertex from its own subtree, for each row."""
    down = counts.copy()
    for level in reversed(layout.levels):
        halves = down[:, level.vertices] // 2
        down[:, level.group_parents] += np.add.reduceat(halves, level.starts, axis=1)
    return down


def movable_all_roots(layout: RootedLayout, counts: np.ndarray) -> np.ndarray:
    """Pebbles movable onto every vertex from the whole tree, for each row."""
    down = pull_up(layout, counts)
    full = down.copy()
    for level in layout.levels:
        own = down[:, level.vertices]
        # what the rest of the tree can hand to this vertex through its parent
        through_parent = full[:, level.parents] - own // 2
        full[:, level.vertices] = own + through_parent // 2
    return full


def tree_movable(graph: Graph, config: Configuration, root: int) -> SolveResult:
    """The maximum number of pebbles that can be moved onto `root` of a tree.

    Raises:
        InvalidParameterError: if `graph` is not a tree or the configuration
            does not match it.
    """
    require_tree(graph)
    check_configuration(graph, config)
    check_root(graph, root)
    layout = graph.center_layout if root == graph.center else graph.rooted_layout(root)
    movable = int(pull_up(layout, _as_matrix(graph, config.counts))[0, root])
    return SolveResult(root, movable >= 1, movable)


def tree_movable_all_roots(graph: Graph, config: Configuration) -> np.ndarray:
    """movable(r) for every root r of a tree, in O(n) total."""
    require_tree(graph)
    check_configuration(graph, config)
    return movable_all_roots(graph.center_layout, _as_matrix(graph, config.counts))[0]


def tree_solvable_all_roots(graph: Graph, config: Configuration) -> np.ndarray:
    """Whether the configuration is r-solvable, for every vertex r of a tree."""
    return tree_movable_all_roots(graph, config) >= 1


def tree_solvable_batch(graph: Graph, counts: np.ndarray) -> np.ndarray:
    """Full solvability of every row of a (configurations x n) count matrix."""
    require_tree(graph)
    matrix = _as_matrix(graph, counts)
    if matrix.size and matrix.min() < 0:
        raise InvalidParameterError('Pebble counts must be nonnegative')
    return (movable_all_roots(graph.center_layout, matrix) >= 1).all(axis=1)
