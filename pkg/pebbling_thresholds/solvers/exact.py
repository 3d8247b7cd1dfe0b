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
Full solvability, exact pebbling numbers and exact solvability probabilities.
"""
from fractions import Fraction
import logging
from typing import Iterator, Union

from pebbling_thresholds.errors import BudgetExceededError
from pebbling_thresholds.graph import Graph
from pebbling_thresholds.sampling import (
    Configuration,
    Model,
    count_configurations,
    independent_weight,
    iter_configurations,
)
from pebbling_thresholds.solvers.oracle import DEFAULT_STATE_CAP, check_configuration, oracle_r_solvable
from pebbling_thresholds.solvers.tree import tree_solvable_all_roots

LOGGER = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10 ** 6


def solvable(graph: Graph, config: Configuration, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    """Whether `config` is r-solvable for every vertex r.

    Trees use the linear-time rerooting solver; any other graph falls back to
    exhaustive search from every root.

    Raises:
        BudgetExceededError: if a non-tree search exceeds `state_cap`.
    """
    check_configuration(graph, config)
    if graph.is_tree:
        return bool(tree_solvable_all_roots(graph, config).all())
    return all(oracle_r_solvable(graph, config, root, state_cap) for root in range(graph.n))


def _check_enumeration_budget(graph: Graph, t: int, enumeration_cap: int) -> None:
    total = count_configurations(graph.n, t)
    if total > enumeration_cap:
        raise BudgetExceededError(
            f'Enumerating {total} configurations of {t} pebbles on {graph.n} vertices '
            f'exceeds the cap of {enumeration_cap}'
        )


def enumerate_unsolvable(
    graph: Graph,
    t: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> Iterator[Configuration]:
    """Yield every unsolvable configuration of `t` pebbles on `graph`."""
    _check_enumeration_budget(graph, t, enumeration_cap)
    for config in iter_configurations(graph.n, t):
        if not solvable(graph, config):
            yield config


def pebbling_number_exact(graph: Graph, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """The smallest t such that every configuration of t pebbles is solvable.

    Every t from 0 up is checked against all C(n+t-1, t) configurations.
    Adding a pebble never breaks solvability, so the first universal t is
    the answer; t + 1 is checked as well when it fits the budget.

    Raises:
        BudgetExceededError: if some t needs more than `enumeration_cap`
            configurations.
    """
    t = 0
    while True:
        witness = next(enumerate_unsolvable(graph, t, enumeration_cap), None)
        if witness is None:
            break
        LOGGER.debug('t=%d is not enough: %s is unsolvable', t, witness)
        t += 1

    if count_configurations(graph.n, t + 1) <= enumeration_cap:
        late = next(enumerate_unsolvable(graph, t + 1, enumeration_cap), None)
        if late is not None:
            LOGGER.error('%s is unsolvable although every configuration of %d pebbles is solvable',
                         late, t)
    return t


def exact_solvable_probability(
    graph: Graph,
    t: int,
    model: Model = Model.DEPENDENT,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> Union[Fraction, float]:
    """Pr[solvable] for a random configuration of `t` pebbles, by enumeration.

    Returns:
        An exact Fraction under the dependent model; a float under the
        independent model, whose weights are multinomial.
    """
    _check_enumeration_budget(graph, t, enumeration_cap)
    if model is Model.DEPENDENT:
        good = sum(1 for config in iter_configurations(graph.n, t) if solvable(graph, config))
        return Fraction(good, count_configurations(graph.n, t))
    return sum(independent_weight(config) for config in iter_configurations(graph.n, t)
               if solvable(graph, config))
