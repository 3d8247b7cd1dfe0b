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
Exhaustive search for r-solvability on arbitrary small graphs.

This is the reference every faster decider is tested against.
"""
import logging
from typing import List, Set, Tuple

from pebbling_thresholds.errors import BudgetExceededError, InvalidParameterError
from pebbling_thresholds.graph import Graph
from pebbling_thresholds.sampling import Configuration

LOGGER = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 10 ** 7

State = Tuple[int, ...]


def check_configuration(graph: Graph, config: Configuration) -> None:
    """Raise InvalidParameterError unless `config` lives on the vertices of `graph`."""
    if config.n != graph.n:
        raise InvalidParameterError(
            f'Configuration has {config.n} vertices but the graph has {graph.n}'
        )


def check_root(graph: Graph, root: int) -> None:
    if not 0 <= root < graph.n:
        raise InvalidParameterError(f'Root v{root + 1} is not a vertex of a graph on {graph.n} vertices')


def oracle_r_solvable(
    graph: Graph,
    config: Configuration,
    root: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> bool:
    """Decide whether some sequence of pebbling steps puts a pebble on `root`.

    Depth-first search over configurations, remembering every configuration
    already visited. Each step removes one pebble from the board, so no
    path is longer than t steps.

    Args:
        graph: any connected graph.
        config: the starting configuration.
        root: 0-indexed target vertex.
        state_cap: the maximum number of distinct configurations to visit.

    Returns:
        True if `config` is root-solvable.

    Raises:
        BudgetExceededError: if more than `state_cap` configurations are visited.
    """
    check_configuration(graph, config)
    check_root(graph, root)
    if config[root] >= 1:
        return True

    adjacency: List[List[int]] = [graph.neighbors_of(v).tolist() for v in range(graph.n)]
    start = config.as_tuple()
    visited: Set[State] = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        for v, count in enumerate(state):
            if count < 2:
                continue
            for u in adjacency[v]:
                if u == root:
                    LOGGER.debug('Reached v%d after visiting %d configurations', root + 1, len(visited))
                    return True
                successor = list(state)
                successor[v] -= 2
                successor[u] += 1
                key = tuple(successor)
                if key in visited:
                    continue
                if len(visited) >= state_cap:
                    raise BudgetExceededError(
                        f'Exhaustive search visited more than {state_cap} configurations; '
                        f'it is meant for graphs with at most 10 vertices and 12 pebbles'
                    )
                visited.add(key)
                stack.append(key)

    LOGGER.debug('v%d unreachable; visited %d configurations', root + 1, len(visited))
    return False
