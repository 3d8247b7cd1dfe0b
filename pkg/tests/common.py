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
Helpers shared by the tests: hypothesis strategies and a TestCase subclass
with additional assertions.
"""
import math
import unittest

from hypothesis import strategies as st
from scipy.stats import chisquare


@st.composite
def random_trees(draw, min_n=1, max_n=40):
    """Random labelled trees as (n, 0-indexed edge list)."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    labels = draw(st.permutations(range(n)))
    edges = [(labels[i], labels[draw(st.integers(min_value=0, max_value=i - 1))]) for i in range(1, n)]
    return n, edges


@st.composite
def random_counts(draw, n, max_t):
    """Pebble counts on n vertices with at most max_t pebbles in total."""
    t = draw(st.integers(min_value=0, max_value=max_t))
    vertices = draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=t, max_size=t))
    counts = [0] * n
    for v in vertices:
        counts[v] += 1
    return counts


class ExtendedTestCase(unittest.TestCase):
    """A subclass that implements additional helpful assertions."""

    def assert_in_element(self, element, container):
        """Assert the given element is in one of the elements in container.

        Args:
            element: The element to search for
            container (Iterable): The iterable in which to search for an item
                that contains element.

        Raises:
            AssertionError: if the assertion fails.
        """
        for item in container:
            if element in item:
                return
        self.fail(f"Element '{element}' is not in any of the elements in the given container.")

    def assert_within_standard_errors(self, successes, trials, p, errors=4.0):
        """Assert an observed frequency is within `errors` standard errors of p.

        Args:
            successes (int): number of observed events
            trials (int): number of trials
            p (float): the true probability of the event
            errors (float): allowed deviation, in standard errors

        Raises:
            AssertionError: if the assertion fails.
        """
        standard_error = math.sqrt(p * (1 - p) / trials)
        deviation = abs(successes / trials - p)
        if deviation > errors * standard_error + 1e-12:
            self.fail(f'Observed frequency {successes / trials:.5f} is more than {errors} '
                      f'standard errors ({standard_error:.5f}) from {p:.5f}')

    def assert_chi_square_uniform(self, observed, significance=1e-3):
        """Assert that observed cell counts do not reject the uniform law.

        Args:
            observed (Sequence[int]): counts per cell; every cell must be listed,
                including those never observed.
            significance (float): the significance level of the test

        Raises:
            AssertionError: if uniformity is rejected.
        """
        result = chisquare(list(observed))
        if result.pvalue < significance:
            self.fail(f'Uniformity rejected: chi-square {result.statistic:.2f}, '
                      f'p-value {result.pvalue:.2e} over {len(observed)} cells')
