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
Unit tests for pebbling_thresholds.solvers.exact
"""
from fractions import Fraction
import unittest

from pebbling_thresholds.errors import BudgetExceededError
from pebbling_thresholds.graph import Graph, build_fuse, build_path, build_star
from pebbling_thresholds.sampling import Configuration, Model
from pebbling_thresholds.solvers.exact import (
    enumerate_unsolvable,
    exact_solvable_probability,
    pebbling_number_exact,
    solvable,
)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestSolvable(unittest.TestCase):
    """Tests for the solvable function."""

    def test_no_pebbles(self):
        """Test that no graph with n >= 2 is solvable without pebbles."""
        for graph in (build_path(2), build_fuse(2, 5), cycle(4)):
            with self.subTest(graph=graph):
                self.assertFalse(solvable(graph, Configuration([0] * graph.n)))

    def test_every_vertex_pebbled(self):
        """Test that (1,1) on P_2 is solvable."""
        self.assertTrue(solvable(build_path(2), Configuration([1, 1])))

    def test_center_of_small_fuse(self):
        """Test four pebbles on the center or a spark of F_{2,4}, and three on a spark."""
        self.assertTrue(solvable(build_fuse(2, 4), Configuration([0, 4, 0, 0])))
        self.assertTrue(solvable(build_fuse(2, 4), Configuration([0, 0, 4, 0])))
        self.assertFalse(solvable(build_fuse(2, 4), Configuration([0, 0, 3, 0])))

    def test_general_graph(self):
        """Test the oracle fallback on a cycle."""
        self.assertTrue(solvable(cycle(4), Configuration([0, 0, 4, 0])))
        self.assertFalse(solvable(cycle(4), Configuration([0, 0, 3, 0])))


class TestPebblingNumber(unittest.TestCase):
    """Tests for pebbling_number_exact and enumerate_unsolvable."""

    def test_known_pebbling_numbers(self):
        """Test the pebbling number of small paths, stars, cycles and complete graphs."""
        cases = [
            ('K_1', build_path(1), 1),
            ('P_2', build_path(2), 2),
            ('P_3', build_path(3), 4),
            ('P_4', build_path(4), 8),
            ('K_{1,3}', build_star(4), 5),
            ('K_3', complete(3), 3),
            ('C_4', cycle(4), 4),
        ]
        for name, graph, expected in cases:
            with self.subTest(name):
                self.assertEqual(pebbling_number_exact(graph), expected)

    def test_unsolvable_witnesses(self):
        """Test that the unsolvable configurations of three pebbles on P_3 are the end piles."""
        witnesses = {config.as_tuple() for config in enumerate_unsolvable(build_path(3), 3)}
        self.assertEqual(witnesses, {(3, 0, 0), (0, 0, 3)})

    def test_enumeration_cap(self):
        """Test that a too large enumeration raises BudgetExceededError."""
        with self.assertRaises(BudgetExceededError):
            pebbling_number_exact(build_path(10), enumeration_cap=100)


class TestExactSolvableProbability(unittest.TestCase):
    """Tests for the exact_solvable_probability function."""

    def test_p2(self):
        """Test Pr[solvable] on P_2 for zero, one and two pebbles."""
        graph = build_path(2)
        self.assertEqual(exact_solvable_probability(graph, 0), 0)
        self.assertEqual(exact_solvable_probability(graph, 1), 0)
        self.assertEqual(exact_solvable_probability(graph, 2), 1)

    def test_small_fuse(self):
        """Test that only two pebbles on the center solve F_{2,4}."""
        self.assertEqual(exact_solvable_probability(build_fuse(2, 4), 2), Fraction(1, 10))

    def test_models_differ(self):
        """Test Pr[solvable] of two pebbles on P_3 in both models."""
        graph = build_path(3)
        self.assertEqual(exact_solvable_probability(graph, 2, Model.DEPENDENT), Fraction(1, 6))
        self.assertAlmostEqual(exact_solvable_probability(graph, 2, Model.INDEPENDENT), 1 / 9)


if __name__ == '__main__':
    unittest.main()
