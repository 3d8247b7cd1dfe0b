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
Unit tests for pebbling_thresholds.graph
"""
import math
import unittest

from hypothesis import given, settings
import networkx as nx

from pebbling_thresholds.errors import InvalidParameterError
from pebbling_thresholds.graph import (
    FuseSpec,
    Graph,
    GraphKind,
    build_fuse,
    build_path,
    build_star,
    detect_fuse_wick_length,
    format_edge_list,
    parse_edge_list,
    wick_length_for_epsilon,
    wick_length_for_target_threshold,
)
from tests.common import random_trees


class TestBuildFuse(unittest.TestCase):
    """Tests for build_fuse, build_path and build_star."""

    def test_fuse_2_4_is_star_at_v2(self):
        """Test that F_{2,4} has edges v1v2, v3v2, v4v2."""
        graph = build_fuse(2, 4)
        self.assertEqual(graph.edge_set, {(0, 1), (1, 2), (1, 3)})
        self.assertEqual(graph.kind, GraphKind.FUSE)
        self.assertEqual(graph.fuse_spec, FuseSpec(4, 2))

    def test_fuse_with_full_wick_is_path(self):
        """Test that m = n yields a path with no sparks."""
        graph = build_fuse(5, 5)
        self.assertEqual(graph.edge_set, {(0, 1), (1, 2), (2, 3), (3, 4)})
        self.assertEqual(len(graph.fuse_spec.sparks), 0)

    def test_fuse_with_unit_wick_is_star(self):
        """Test that m = 1 yields the star K_{1,5} centered at v_1."""
        graph = build_fuse(1, 6)
        self.assertEqual(graph.degrees.tolist(), [5, 1, 1, 1, 1, 1])

    def test_path_and_star_match_fuses(self):
        """Test that paths and stars have the edge sets of the corresponding fuses."""
        self.assertEqual(build_path(7), build_fuse(7, 7))
        self.assertEqual(build_star(4), build_fuse(1, 4))
        self.assertEqual(build_path(2).edges(), [(0, 1)])
        self.assertEqual(build_path(7).kind, GraphKind.PATH)
        self.assertEqual(build_star(4).kind, GraphKind.STAR)

    def test_single_vertex(self):
        """Test that K_1 is a tree without edges."""
        graph = build_path(1)
        self.assertEqual(graph.num_edges, 0)
        self.assertTrue(graph.is_tree)
        self.assertEqual(graph.center, 0)

    def test_fuse_degree_profile(self):
        """Test the degree of every vertex of F_{m,n}."""
        for m, n in [(1, 5), (2, 6), (3, 6), (4, 9), (6, 6)]:
            with self.subTest(m=m, n=n):
                graph = build_fuse(m, n)
                self.assertEqual(graph.num_edges, n - 1)
                self.assertTrue(graph.is_tree)
                degrees = graph.degrees.tolist()
                self.assertEqual(degrees[m - 1], n - m + (1 if m > 1 else 0))
                for v in range(1, m - 1):
                    self.assertEqual(degrees[v], 2)
                for v in range(m, n):
                    self.assertEqual(degrees[v], 1)
                if m >= 2:
                    self.assertEqual(degrees[0], 1)

    def test_build_is_deterministic(self):
        """Test that identical inputs give identical adjacency arrays."""
        first, second = build_fuse(3, 10), build_fuse(3, 10)
        self.assertEqual(first.offsets.tolist(), second.offsets.tolist())
        self.assertEqual(first.neighbors.tolist(), second.neighbors.tolist())

    def test_invalid_wick_lengths(self):
        """Test that m outside [1, n] and n < 1 are rejected."""
        for m, n in [(0, 4), (5, 4), (1, 0), (-1, 3)]:
            with self.subTest(m=m, n=n):
                with self.assertRaises(InvalidParameterError):
                    build_fuse(m, n)
        with self.assertRaises(InvalidParameterError):
            build_path(0)
        with self.assertRaises(InvalidParameterError):
            build_star(0)

    def test_fuse_spec_partition(self):
        """Test the wick, spark and center of a FuseSpec."""
        spec = FuseSpec(6, 3)
        self.assertEqual(list(spec.wick), [0, 1, 2])
        self.assertEqual(list(spec.sparks), [3, 4, 5])
        self.assertEqual(spec.center, 2)
        self.assertEqual(str(spec), 'F_{3,6}')


class TestGraphFromEdges(unittest.TestCase):
    """Tests for validation in Graph.from_edges."""

    def test_general_graph(self):
        """Test that a cycle is tagged as a general graph."""
        graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        self.assertEqual(graph.kind, GraphKind.GENERAL)
        self.assertFalse(graph.is_tree)
        self.assertEqual(graph.neighbors_of(0).tolist(), [1, 3])

    def test_adjacency_is_symmetric_and_sorted(self):
        """Test that every edge appears in both adjacency lists, sorted."""
        graph = Graph.from_edges(5, [(4, 0), (0, 2), (2, 1), (3, 2), (1, 4)])
        for v in range(graph.n):
            neighbors = graph.neighbors_of(v).tolist()
            self.assertEqual(neighbors, sorted(neighbors))
            for u in neighbors:
                self.assertIn(v, graph.neighbors_of(u).tolist())

    def test_invalid_graphs(self):
        """Test that loops, repeated edges, bad ids and disconnected graphs are rejected."""
        cases = {
            'self-loop': (3, [(0, 1), (1, 1)]),
            'repeated edge': (3, [(0, 1), (1, 0), (1, 2)]),
            'id out of range': (3, [(0, 1), (1, 3)]),
            'disconnected': (4, [(0, 1), (2, 3)]),
            'no vertices': (0, []),
        }
        for name, (n, edges) in cases.items():
            with self.subTest(name):
                with self.assertRaises(InvalidParameterError):
                    Graph.from_edges(n, edges)

    def test_arrays_are_read_only(self):
        """Test that the adjacency arrays cannot be modified."""
        graph = build_fuse(2, 4)
        with self.assertRaises(ValueError):
            graph.neighbors[0] = 3

    @settings(max_examples=100, deadline=None)
    @given(random_trees())
    def test_center_has_minimum_eccentricity(self, tree):
        """Test that the double-sweep center is a center of the tree."""
        n, edges = tree
        graph = Graph.from_edges(n, edges)
        reference = nx.Graph()
        reference.add_nodes_from(range(n))
        reference.add_edges_from(edges)
        self.assertTrue(graph.is_tree)
        self.assertTrue(nx.is_tree(reference))
        self.assertIn(graph.center, nx.center(reference))

    @settings(max_examples=100, deadline=None)
    @given(random_trees())
    def test_rooted_layout_parents(self, tree):
        """Test that the layout's BFS parents give the tree's depths from the root."""
        n, edges = tree
        graph = Graph.from_edges(n, edges)
        layout = graph.rooted_layout(0)
        depths = nx.single_source_shortest_path_length(nx.Graph(edges) if edges else nx.empty_graph(1), 0)
        self.assertEqual(layout.depth, max(depths.values()))
        for depth, level in enumerate(layout.levels, start=1):
            for v, p in zip(level.vertices.tolist(), level.parents.tolist()):
                self.assertEqual(depths[v], depth)
                self.assertEqual(layout.parent[v], p)
                self.assertIn(p, graph.neighbors_of(v).tolist())


class TestWickLengths(unittest.TestCase):
    """Tests for the wick length helpers."""

    def test_target_threshold_equal_to_n(self):
        """Test that t = n gives m = round(lg n)."""
        for n in (2, 16, 1000, 2 ** 16):
            with self.subTest(n=n):
                self.assertEqual(wick_length_for_target_threshold(n, n), min(n, max(1, round(math.log2(n)))))

    def test_target_threshold_at_sqrt_n(self):
        """Test that t = sqrt(n) is clamped to the star."""
        self.assertEqual(wick_length_for_target_threshold(2 ** 8, 2 ** 16), 1)

    def test_target_threshold_three_quarters(self):
        """Test that t = n^(3/4) for n = 2^16 gives m = 8."""
        self.assertEqual(wick_length_for_target_threshold(2 ** 12, 2 ** 16), 8)

    def test_target_threshold_below_floor(self):
        """Test that t^2 < n is rejected."""
        with self.assertRaises(InvalidParameterError):
            wick_length_for_target_threshold(3, 16)
        with self.assertRaises(InvalidParameterError):
            wick_length_for_target_threshold(5, 1)

    def test_wick_length_for_epsilon(self):
        """Test m = max(1, round((1 - 2 epsilon) lg n))."""
        self.assertEqual(wick_length_for_epsilon(2 ** 16, 0.25), 8)
        self.assertEqual(wick_length_for_epsilon(2 ** 16, 0.0), 16)
        self.assertEqual(wick_length_for_epsilon(2 ** 12, 0.4), 2)
        self.assertEqual(wick_length_for_epsilon(4, 0.45), 1)
        self.assertEqual(wick_length_for_epsilon(2, 0.0), 1)
        with self.assertRaises(InvalidParameterError):
            wick_length_for_epsilon(16, 0.5)


class TestEdgeListFormat(unittest.TestCase):
    """Tests for format_edge_list and parse_edge_list."""

    def test_format_fuse(self):
        """Test the 1-indexed edge-list text of F_{2,4}."""
        self.assertEqual(format_edge_list(build_fuse(2, 4)), '4 3\n1 2\n2 3\n2 4\n')

    def test_gen_edge_count(self):
        """Test that F_{8,1024} has 1023 edges."""
        text = format_edge_list(build_fuse(8, 1024))
        self.assertEqual(text.splitlines()[0], '1024 1023')
        self.assertEqual(len(text.splitlines()), 1024)

    def test_parse_detects_fuse(self):
        """Test that a parsed fuse labelling is recognised with its wick length."""
        for m, n in [(1, 5), (2, 4), (3, 6), (5, 5), (2, 2)]:
            with self.subTest(m=m, n=n):
                graph = parse_edge_list(format_edge_list(build_fuse(m, n)))
                self.assertEqual(graph.kind, GraphKind.FUSE)
                self.assertEqual(graph.fuse_spec, FuseSpec(n, m))

    def test_parse_comments_and_general_graph(self):
        """Test that comments are skipped and a triangle is a general graph."""
        graph = parse_edge_list('# triangle\n3 3\n1 2\n2 3\n\n3 1\n')
        self.assertEqual(graph.kind, GraphKind.GENERAL)
        self.assertIsNone(graph.fuse_spec)

    def test_parse_relabelled_tree(self):
        """Test that a star centered elsewhere is a tree but not a fuse labelling."""
        graph = parse_edge_list('4 3\n3 1\n3 2\n3 4\n')
        self.assertEqual(graph.kind, GraphKind.TREE)
        self.assertIsNone(detect_fuse_wick_length(4, graph.edges()))

    def test_parse_errors(self):
        """Test that malformed edge lists raise InvalidParameterError."""
        for text in ('', '3\n1 2\n2 3\n', '3 2\n1 2\n', '3 2\n1 2\n2 x\n', '3 2\n1 2 3\n2 3\n', '3 2\n1 2\n1 2\n'):
            with self.subTest(text=text):
                with self.assertRaises(InvalidParameterError):
                    parse_edge_list(text)


if __name__ == '__main__':
    unittest.main()
