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
Unit tests for pebbling_thresholds.solvers.oracle
"""
import unittest

from pebbling_thresholds.errors import BudgetExceededError, InvalidParameterError
from pebbling_thresholds.graph import Graph, build_path
from pebbling_thresholds.sampling import Configuration
from pebbling_thresholds.solvers.oracle import oracle_r_solvable


class TestOracleRSolvable(unittest.TestCase):
    """Tests for the oracle_r_solvable function."""

    def setUp(self):
        self.p3 = build_path(3)

    def test_one_step(self):
        """Test that two pebbles on v3 reach v2."""
        self.assertTrue(oracle_r_solvable(self.p3, Configuration([0, 0, 2]), 1))

    def test_two_steps(self):
        """Test that (0,1,2) is v1-solvable by moving v3 to v2 then v2 to v1."""
        self.assertTrue(oracle_r_solvable(self.p3, Configuration([0, 1, 2]), 0))

    def test_unsolvable(self):
        """Test that (0,1,1) is not v1-solvable."""
        self.assertFalse(oracle_r_solvable(self.p3, Configuration([0, 1, 1]), 0))

    def test_pebble_on_root(self):
        """Test that a pebbled root is solvable without any step."""
        self.assertTrue(oracle_r_solvable(self.p3, Configuration([1, 0, 0]), 0))

    def test_no_pebbles(self):
        """Test that the empty configuration solves nothing."""
        for root in range(3):
            with self.subTest(root=root):
                self.assertFalse(oracle_r_solvable(self.p3, Configuration([0, 0, 0]), root))

    def test_cycle(self):
        """Test the oracle on a non-tree graph: C_5 is searched in both directions."""
        cycle = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        self.assertTrue(oracle_r_solvable(cycle, Configuration([0, 0, 4, 0, 0]), 0))
        self.assertFalse(oracle_r_solvable(cycle, Configuration([0, 0, 3, 0, 0]), 0))
        self.assertTrue(oracle_r_solvable(cycle, Configuration([0, 1, 2, 0, 0]), 0))
        self.assertFalse(oracle_r_solvable(cycle, Configuration([0, 0, 2, 2, 0]), 0))

    def test_state_cap(self):
        """Test that exceeding the visited-state cap raises BudgetExceededError."""
        with self.assertRaises(BudgetExceededError):
            oracle_r_solvable(build_path(6), Configuration([0, 0, 0, 0, 0, 20]), 0, state_cap=5)

    def test_mismatched_configuration(self):
        """Test that configurations on the wrong vertex count are rejected."""
        with self.assertRaises(InvalidParameterError):
            oracle_r_solvable(self.p3, Configuration([1, 1]), 0)
        with self.assertRaises(InvalidParameterError):
            oracle_r_solvable(self.p3, Configuration([1, 1, 1]), 3)


if __name__ == '__main__':
    unittest.main()
