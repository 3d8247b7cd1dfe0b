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
Unit tests for pebbling_thresholds.cli
"""
import csv
import io
import json
import os
import tempfile
import unittest
from unittest import mock

from pebbling_thresholds import __version__
from pebbling_thresholds.cli import (
    EXIT_BUDGET,
    EXIT_INVALID,
    EXIT_SUCCESS,
    EXIT_USAGE,
    _csv,
    run,
)

CYCLE_EDGE_LIST = '4 4\n1 2\n2 3\n3 4\n4 1\n'


class CliTestCase(unittest.TestCase):
    """A TestCase that runs the command line and captures its output."""

    def setUp(self):
        self.stderr = io.StringIO()
        patcher = mock.patch('sys.stderr', self.stderr)
        patcher.start()
        self.addCleanup(patcher.stop)
        self.tmp_dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp_dir.cleanup)

    def run_cli(self, *argv):
        """Run the command line and return (exit code, stdout text)."""
        stdout = io.StringIO()
        return run(list(argv), stdout=stdout), stdout.getvalue()

    def tmp_path(self, name):
        return os.path.join(self.tmp_dir.name, name)


class TestGen(CliTestCase):
    """Tests for the gen subcommand."""

    def test_fuse_edge_list(self):
        """Test that a fuse with 1024 vertices has 1023 edges."""
        code, output = self.run_cli('gen', '--fuse', '8', '1024')
        self.assertEqual(code, EXIT_SUCCESS)
        lines = output.splitlines()
        self.assertEqual(lines[0], '1024 1023')
        self.assertEqual(len(lines), 1024)
        self.assertEqual(lines[1], '1 2')

    def test_json(self):
        """Test the JSON document of a path."""
        code, output = self.run_cli('gen', '--path', '3', '--format', 'json')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertEqual(json.loads(output),
                         {'n': 3, 'kind': 'path', 'wick_length': 3, 'edges': [[1, 2], [2, 3]]})

    def test_powers_of_two(self):
        """Test that sizes may be written as powers of two."""
        code, output = self.run_cli('gen', '--star', '2^4', '--format', 'csv')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertEqual(len(output.splitlines()), 16)

    def test_invalid_fuse(self):
        """Test that a wick longer than the graph exits with the invalid-parameter code."""
        code, output = self.run_cli('gen', '--fuse', '5', '3')
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(output, '')
        self.assertIn('exceeds the vertex count', self.stderr.getvalue())


class TestSolve(CliTestCase):
    """Tests for the solve subcommand."""

    def test_fuse_text(self):
        """Test the text report of a solvable configuration on F_{2,4}."""
        code, output = self.run_cli('solve', '--fuse', '2', '4', '--pebbles', '2:1 3:2')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertIn('solvable: yes', output)
        self.assertTrue(output.endswith('certificate: v1-solvable, A=1, Y=1/1\n'))

    def test_fuse_json(self):
        """Test the JSON report of the same configuration."""
        code, output = self.run_cli('solve', '--fuse', '2', '4', '--pebbles', '2:1 3:2', '--format', 'json')
        self.assertEqual(code, EXIT_SUCCESS)
        document = json.loads(output)
        self.assertTrue(document['solvable'])
        self.assertEqual(document['certificate'], {'A': 1, 'Y': '1/1', 'v1_solvable': True})
        self.assertEqual([root['root'] for root in document['roots']], [1, 2, 3, 4])

    def test_graph_file(self):
        """Test solving on a non-tree read from a file."""
        graph_path = self.tmp_path('cycle.txt')
        with open(graph_path, 'w') as f:
            f.write(CYCLE_EDGE_LIST)
        code, output = self.run_cli('solve', '--graph', graph_path, '--pebbles', '1:2', '--format', 'csv')
        self.assertEqual(code, EXIT_SUCCESS)
        rows = list(csv.DictReader(io.StringIO(output)))
        self.assertEqual([row['solvable'] for row in rows], ['yes', 'yes', 'no', 'yes'])
        self.assertEqual({row['movable'] for row in rows}, {''})

    def test_bad_configuration(self):
        """Test that a vertex outside the graph exits with the invalid-parameter code."""
        code, _ = self.run_cli('solve', '--path', '3', '--pebbles', '4:1')
        self.assertEqual(code, EXIT_INVALID)

    def test_count_beyond_int64(self):
        """Test that a count of 2^63 exits with the invalid-parameter code."""
        code, output = self.run_cli('solve', '--path', '2', '--pebbles', '1:9223372036854775808')
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(output, '')

    def test_missing_graph_file(self):
        """Test that an unreadable graph file exits with the invalid-parameter code."""
        code, _ = self.run_cli('solve', '--graph', self.tmp_path('missing.txt'), '--pebbles', '1:1')
        self.assertEqual(code, EXIT_INVALID)


class TestCsvOutput(unittest.TestCase):
    """Tests for the CSV renderer shared by the subcommands."""

    def test_fields_with_commas_are_quoted(self):
        """Test that a field containing a comma is quoted and reads back intact."""
        text = _csv(('family', 't', 'p'), [('fuse:0.25,lg', 3, 0.5), ('path', 2, None)])
        self.assertEqual(text, 'family,t,p\n"fuse:0.25,lg",3,0.5\npath,2,\n')
        rows = list(csv.reader(io.StringIO(text)))
        self.assertEqual(rows[1], ['fuse:0.25,lg', '3', '0.5'])


class TestOccupancy(CliTestCase):
    """Tests for the occupancy subcommand."""

    def test_exact_csv(self):
        """Test the probabilities of C(v) = i with two pebbles on four vertices."""
        code, output = self.run_cli('occupancy', '--n', '4', '--t', '2', '--exact')
        self.assertEqual(code, EXIT_SUCCESS)
        rows = list(csv.DictReader(io.StringIO(output)))
        self.assertEqual([row['i'] for row in rows], ['0', '1', '2'])
        self.assertEqual([float(row['pmf']) for row in rows], [0.6, 0.3, 0.1])
        self.assertEqual((rows[0]['lower_bound'], rows[0]['upper_bound']), ('', ''))
        self.assertNotEqual(rows[1]['upper_bound'], '')

    def test_max_i(self):
        """Test that --max-i truncates the table."""
        code, output = self.run_cli('occupancy', '--n', '2^10', '--t', '2^9', '--max-i', '3', '--float')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertEqual(len(output.splitlines()), 5)


class TestStochasticSubcommands(CliTestCase):
    """Tests for sample, estimate and the seed handling they share."""

    def test_missing_seed(self):
        """Test that stochastic subcommands refuse to run without a seed."""
        for argv in (('estimate', '--path', '2', '--t', '2'),
                     ('sample', '--n', '4', '--t', '2'),
                     ('threshold', '--family', 'path', '--n', '2')):
            with self.subTest(subcommand=argv[0]):
                code, output = self.run_cli(*argv)
                self.assertEqual(code, EXIT_USAGE)
                self.assertEqual(output, '')
                self.assertIn('requires --seed', self.stderr.getvalue())

    def test_sample(self):
        """Test that each sampled configuration holds the requested pebbles."""
        code, output = self.run_cli('sample', '--n', '5', '--t', '3', '--seed', '1', '--count', '4')
        self.assertEqual(code, EXIT_SUCCESS)
        lines = output.splitlines()
        self.assertEqual(len(lines), 4)
        for line in lines:
            self.assertEqual(sum(int(pair.split(':')[1]) for pair in line.split()), 3)

    def test_estimate(self):
        """Test the CSV row of an estimate on P_2 with two pebbles."""
        code, output = self.run_cli('estimate', '--path', '2', '--t', '2', '--seed', '1', '--trials', '50')
        self.assertEqual(code, EXIT_SUCCESS)
        header, row = output.splitlines()
        self.assertEqual(header, 'family,n,m,t,trials,p_hat,ci_low,ci_high,seed')
        self.assertTrue(row.startswith('path,2,2,2,50,1.000000,'))

    def test_estimate_is_deterministic(self):
        """Test that the same seed gives byte-identical output."""
        argv = ('estimate', '--fuse', '3', '64', '--t', '20', '--seed', '99', '--trials', '200')
        self.assertEqual(self.run_cli(*argv), self.run_cli(*argv))

    def test_manifest(self):
        """Test that writing to a file also writes a run manifest."""
        out = self.tmp_path('estimate.csv')
        code, output = self.run_cli('estimate', '--path', '4', '--t', '3', '--seed', '5', '--trials', '40',
                                    '--out', out)
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertEqual(output, '')
        with open(f'{out}.manifest.json') as f:
            manifest = json.load(f)
        self.assertEqual(manifest['subcommand'], 'estimate')
        self.assertEqual(manifest['master_seed'], 5)
        self.assertEqual(manifest['outputs'], [out])
        self.assertEqual(manifest['version'], __version__)
        self.assertEqual(manifest['parameters']['trials'], 40)

    def test_contrast(self):
        """Test the columns of the model contrast on paths."""
        code, output = self.run_cli('contrast', '--n', '8,16', '--t', '0', '--seed', '3', '--trials', '20')
        self.assertEqual(code, EXIT_SUCCESS)
        rows = list(csv.DictReader(io.StringIO(output)))
        self.assertEqual([row['n'] for row in rows], ['8', '16'])
        self.assertEqual({row['p_dependent'] for row in rows}, {'0'})


class TestSweeps(CliTestCase):
    """Tests for the threshold and exponent subcommands."""

    def test_threshold(self):
        """Test the threshold row of P_2 at p* = 0.6."""
        code, output = self.run_cli('threshold', '--family', 'path', '--n', '2', '--seed', '1',
                                    '--p-star', '0.6')
        self.assertEqual(code, EXIT_SUCCESS)
        row, = csv.DictReader(io.StringIO(output))
        self.assertEqual((row['family'], row['t_half'], row['bracket_low'], row['bracket_high']),
                         ('path', '2', '1', '2'))

    def test_grid(self):
        """Test that the grid sweep writes one estimate per (n, t) pair."""
        code, output = self.run_cli('grid', '--family', 'fuse-m:2', '--n', '16,32', '--t', '0,4',
                                    '--seed', '3', '--trials', '30')
        self.assertEqual(code, EXIT_SUCCESS)
        rows = list(csv.DictReader(io.StringIO(output)))
        self.assertEqual([(row['n'], row['t']) for row in rows],
                         [('16', '0'), ('16', '4'), ('32', '0'), ('32', '4')])
        self.assertEqual({row['family'] for row in rows}, {'fuse-m:2'})
        self.assertEqual(rows[0]['p_hat'], '0.000000')

    def test_grid_needs_pebble_counts(self):
        """Test that a grid sweep without pebble counts exits with the invalid-parameter code."""
        code, _ = self.run_cli('grid', '--family', 'path', '--n', '16', '--seed', '3')
        self.assertEqual(code, EXIT_INVALID)

    def test_threshold_from_config(self):
        """Test that a YAML file may supply the family, grid and seed."""
        config_path = self.tmp_path('experiment.yaml')
        with open(config_path, 'w') as f:
            f.write('family: path\nn_grid: "2"\nseed: 1\nbisection:\n  p_star: 0.6\n')
        code, output = self.run_cli('threshold', '--config', config_path)
        self.assertEqual(code, EXIT_SUCCESS)
        row, = csv.DictReader(io.StringIO(output))
        self.assertEqual(row['t_half'], '2')

    def test_unknown_config_key(self):
        """Test that an unknown configuration key exits with the invalid-parameter code."""
        config_path = self.tmp_path('experiment.yaml')
        with open(config_path, 'w') as f:
            f.write('family: path\nn_grid: "2"\nseed: 1\nsteps: 3\n')
        code, _ = self.run_cli('threshold', '--config', config_path)
        self.assertEqual(code, EXIT_INVALID)

    def test_non_convergence(self):
        """Test that an exhausted probe budget exits with the search-failure code."""
        code, output = self.run_cli('threshold', '--family', 'star', '--n', '1024', '--seed', '7',
                                    '--max-iterations', '2', '--trials', '30')
        self.assertEqual(code, EXIT_BUDGET)
        self.assertEqual(output, '')
        self.assertIn('did not converge', self.stderr.getvalue())

    def test_exponent_needs_four_points(self):
        """Test that the exponent fit rejects short grids."""
        code, _ = self.run_cli('exponent', '--epsilon', '0.25', '--n', '2^8..2^10', '--seed', '1')
        self.assertEqual(code, EXIT_INVALID)


class TestPebblingNumber(CliTestCase):
    """Tests for the pebbling-number subcommand."""

    def test_path(self):
        """Test the pebbling number of P_3 and its witness."""
        code, output = self.run_cli('pebbling-number', '--path', '3')
        self.assertEqual(code, EXIT_SUCCESS)
        first, second = output.splitlines()
        self.assertEqual(first, 'pebbling number: 4')
        self.assertTrue(second.startswith('unsolvable with 3 pebbles: '))

    def test_budget(self):
        """Test that exceeding the enumeration cap exits with the budget code."""
        code, _ = self.run_cli('pebbling-number', '--path', '6', '--cap', '5')
        self.assertEqual(code, EXIT_BUDGET)
        self.assertIn('exceeds the cap', self.stderr.getvalue())


class TestUsage(CliTestCase):
    """Tests for malformed command lines."""

    def test_usage_errors(self):
        """Test that malformed command lines exit with the usage code."""
        for argv in ((), ('frobnicate',), ('gen',), ('gen', '--path', 'x'),
                     ('gen', '--path', '3', '--star', '3'), ('estimate', '--path', '2', '--t', '2',
                                                             '--seed', '2^64'),
                     ('estimate', '--path', '2', '--t', '2', '--seed', '1', '--trials', '0'),
                     ('estimate', '--path', '2', '--t', '2', '--seed', '1', '--threads', '0'),
                     ('contrast', '--n', '4', '--t', '2', '--seed', '1', '--trials', '-5')):
            with self.subTest(argv=argv):
                code, output = self.run_cli(*argv)
                self.assertEqual(code, EXIT_USAGE)
                self.assertEqual(output, '')

    def test_version(self):
        """Test that --version exits successfully."""
        with mock.patch('sys.stdout', io.StringIO()) as stdout:
            code, _ = self.run_cli('--version')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertIn(__version__, stdout.getvalue())


if __name__ == '__main__':
    unittest.main()
