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
The pebbling-thresholds command line.

Every subcommand writes its result to --out (stdout by default) in the format
chosen with --format; diagnostics go to stderr. Stochastic subcommands refuse
to run without an explicit seed.

Exit codes: 0 success, 1 usage error, 2 invalid parameters, 3 budget
exceeded or threshold search failure.
"""
import argparse
import csv
from fractions import Fraction
import io
import json
import logging
import math
import sys
import time
from typing import (
    Any,
    Callable,
    Dict,
    List,
    NoReturn,
    Optional,
    Sequence,
    TextIO,
)

from pebbling_thresholds import __version__
from pebbling_thresholds.analytics import occupancy_table
from pebbling_thresholds.config import (
    apply_overrides,
    build_experiment_spec,
    get_option,
    load_config,
)
from pebbling_thresholds.errors import (
    BudgetExceededError,
    InvalidParameterError,
    PebblingError,
    SearchError,
)
from pebbling_thresholds.experiments import (
    CSV_COLUMNS,
    Estimate,
    ExperimentSpec,
    Family,
    compare_bounds,
    estimate_solvable_probability,
    model_contrast,
    write_estimates_csv,
)
from pebbling_thresholds.graph import (
    Graph,
    build_fuse,
    build_path,
    build_star,
    format_edge_list,
    parse_edge_list,
    wick_length_for_target_threshold,
)
from pebbling_thresholds.manifest import RunManifest, default_manifest_path
from pebbling_thresholds.runner import TrialRunner
from pebbling_thresholds.sampling import Configuration, Model, SeedPolicy, sample
from pebbling_thresholds.solvers.exact import enumerate_unsolvable, pebbling_number_exact
from pebbling_thresholds.solvers.fuse import fuse_certificate
from pebbling_thresholds.solvers.oracle import DEFAULT_STATE_CAP, oracle_r_solvable
from pebbling_thresholds.solvers.tree import tree_movable_all_roots
from pebbling_thresholds.util import parse_count, parse_n_grid

LOGGER = logging.getLogger(__name__)

PROG = 'pebbling-thresholds'
EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

THRESHOLD_COLUMNS = ('family', 'n', 'm', 't_half', 'bracket_low', 'bracket_high', 'trials')
CONTRAST_COLUMNS = ('n', 't', 'trials', 'p_dependent', 'ci_low_dependent', 'ci_high_dependent',
                    'p_independent', 'ci_low_independent', 'ci_high_independent', 'seed')
BOUNDS_COLUMNS = ('n', 'epsilon', 'omega', 'm', 't_upper', 'p_solvable_upper', 'p_pair_shortfall',
                  'chebyshev_bound', 't_lower', 'p_solvable_lower', 'p_certificate', 'markov_bound',
                  'trials', 'seed')


class UsageError(Exception):
    """The command line is malformed."""


class ArgumentParser(argparse.ArgumentParser):
    """An ArgumentParser that exits with the usage exit code."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{PROG}: error: {message}\n')


def _count(text: str) -> int:
    try:
        return parse_count(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _positive(text: str) -> int:
    value = _count(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive count, got {text}')
    return value


def _seed(text: str) -> int:
    value = _count(text)
    if value >= 1 << 64:
        raise argparse.ArgumentTypeError(f'seeds are 64-bit values, got {text}')
    return value


def _grid(text: str) -> List[int]:
    try:
        return parse_n_grid(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _number(value: Any) -> str:
    """Format a number for CSV and text output."""
    if value is None:
        return ''
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return f'{float(value):.15g}'


def _csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows([value if isinstance(value, str) else _number(value) for value in row] for row in rows)
    return stream.getvalue()


def _json(document: Any) -> str:
    return json.dumps(document, indent=2, default=_number) + '\n'


def _text_table(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(columns)] + [[_number(v) if not isinstance(v, str) else v for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    return '\n'.join('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
                     for row in cells) + '\n'


def _render(args: argparse.Namespace, columns: Sequence[str], rows: Sequence[Sequence[Any]],
            document: Any) -> str:
    if args.format == 'json':
        return _json(document)
    if args.format == 'csv':
        return _csv(columns, rows)
    return _text_table(columns, rows)


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', type=_seed,
                        help='Master seed, a 64-bit value. Required by stochastic subcommands.')
    parser.add_argument('--trials', type=_positive, help='Trials per estimate (at least 1; 30 for sweeps).')
    parser.add_argument('--out', default='-', help='Output path; "-" writes to stdout.')
    parser.add_argument('--format', choices=('csv', 'json', 'text'), help='Output format.')
    parser.add_argument('--threads', type=_positive,
                        help='Worker processes for Monte Carlo trials; defaults to the CPU count.')
    parser.add_argument('--config', help='YAML experiment file supplying default parameters.')
    parser.add_argument('--manifest',
                        help='Path of the run manifest; defaults to <out>.manifest.json for file outputs.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log progress to stderr; repeat for debug output.')


def _add_graph_arguments(parser: argparse.ArgumentParser, allow_file: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--fuse', nargs=2, type=_count, metavar=('M', 'N'),
                       help='The fuse F_{M,N}: a path on M vertices with N-M sparks at v_M.')
    group.add_argument('--path', type=_count, metavar='N', help='The path P_N.')
    group.add_argument('--star', type=_count, metavar='N', help='The star on N vertices centered at v_1.')
    group.add_argument('--target-threshold', nargs=2, type=_count, metavar=('T', 'N'),
                       help='The fuse on N vertices whose threshold is about T.')
    if allow_file:
        group.add_argument('--graph', metavar='FILE', help='Read an edge list from FILE.')


def _read_text(path: str) -> str:
    try:
        if path == '-':
            return sys.stdin.read()
        with open(path) as f:
            return f.read()
    except OSError as err:
        raise InvalidParameterError(f'Unable to read {path}: {err}') from err


def _graph(args: argparse.Namespace) -> Graph:
    if getattr(args, 'graph', None):
        return parse_edge_list(_read_text(args.graph))
    if args.fuse:
        return build_fuse(*args.fuse)
    if args.path is not None:
        return build_path(args.path)
    if args.star is not None:
        return build_star(args.star)
    t, n = args.target_threshold
    return build_fuse(wick_length_for_target_threshold(t, n), n)


def _require_seed(args: argparse.Namespace, seed: Optional[Any]) -> int:
    if seed is None:
        raise UsageError(f'{args.subcommand} is stochastic and requires --seed')
    return int(seed)


def _trials(args: argparse.Namespace) -> int:
    return 1000 if args.trials is None else args.trials


def _runner(args: argparse.Namespace, config: Optional[Dict[str, Any]] = None) -> TrialRunner:
    threads = args.threads
    if threads is None and config is not None:
        threads = get_option(config, 'threads')
    return TrialRunner(threads=threads)


def _experiment_config(args: argparse.Namespace, overrides: Dict[str, Any]) -> Dict[str, Any]:
    config = load_config(args.config) if args.config else {}
    return apply_overrides(config, overrides)


def cmd_gen(args: argparse.Namespace) -> str:
    graph = _graph(args)
    edges = [(u + 1, v + 1) for u, v in graph.edges()]
    if args.format == 'json':
        return _json({'n': graph.n, 'kind': str(graph.kind), 'wick_length': graph.wick_length,
                      'edges': [list(edge) for edge in edges]})
    if args.format == 'csv':
        return _csv(('u', 'v'), edges)
    return format_edge_list(graph)


def cmd_sample(args: argparse.Namespace) -> str:
    seed = _require_seed(args, args.seed)
    policy = SeedPolicy(seed).derive(args.n, args.pebbles)
    configs = [sample(args.n, args.pebbles, policy.for_trial(i), Model(args.model))
               for i in range(args.count)]
    if args.format == 'json':
        return _json([{'trial': i, 'counts': config.as_tuple()} for i, config in enumerate(configs)])
    if args.format == 'csv':
        return _csv(('trial', 'vertex', 'count'),
                    [(i, v + 1, c) for i, config in enumerate(configs)
                     for v, c in enumerate(config.as_tuple()) if c])
    return ''.join(config.format() + '\n' for config in configs)


def cmd_solve(args: argparse.Namespace) -> str:
    graph = _graph(args)
    text = args.pebbles if args.pebbles is not None else _read_text(args.pebbles_file)
    config = Configuration.parse(text, graph.n)
    if graph.is_tree:
        values = [int(value) for value in tree_movable_all_roots(graph, config)]
        verdicts = [value >= 1 for value in values]
        movable: List[Optional[int]] = list(values)
    else:
        movable = [None] * graph.n
        verdicts = [oracle_r_solvable(graph, config, root, args.state_cap) for root in range(graph.n)]
    fuse = graph.fuse_spec
    certificate = fuse_certificate(fuse, config) if fuse is not None else None
    rows = [(f'v{root + 1}', 'yes' if verdict else 'no', '' if value is None else value)
            for root, (verdict, value) in enumerate(zip(verdicts, movable))]

    if args.format == 'json':
        return _json({
            'solvable': all(verdicts),
            'roots': [{'root': root + 1, 'solvable': verdict, 'movable': value}
                      for root, (verdict, value) in enumerate(zip(verdicts, movable))],
            'certificate': None if certificate is None else {
                'A': certificate.accumulation,
                'Y': f'{certificate.weight.numerator}/{certificate.weight.denominator}',
                'v1_solvable': certificate.v1_solvable,
            },
        })
    if args.format == 'csv':
        return _csv(('root', 'solvable', 'movable'), rows)
    lines = [_text_table(('root', 'solvable', 'movable'), rows).rstrip('\n'),
             f'solvable: {"yes" if all(verdicts) else "no"}']
    if certificate is not None:
        lines.append(f'certificate: {certificate.format()}')
    return '\n'.join(lines) + '\n'


def cmd_occupancy(args: argparse.Namespace) -> str:
    rows = occupancy_table(args.n, args.pebbles, args.max_i, args.exact)
    columns = ('i', 'pmf', 'lower_bound', 'upper_bound')
    values = [(row.i, row.pmf, row.lower_bound, row.upper_bound) for row in rows]
    document = [{'i': row.i, 'pmf': float(row.pmf),
                 'lower_bound': None if row.lower_bound is None else float(row.lower_bound),
                 'upper_bound': None if row.upper_bound is None else float(row.upper_bound)}
                for row in rows]
    return _render(args, columns, values, document)


def _estimates_output(args: argparse.Namespace, estimates: Sequence[Estimate]) -> str:
    if args.format == 'json':
        return _json([estimate.to_dict() for estimate in estimates])
    if args.format == 'text':
        return _text_table(CSV_COLUMNS, [estimate.csv_row() for estimate in estimates])
    stream = io.StringIO()
    write_estimates_csv(estimates, stream)
    return stream.getvalue()


def cmd_estimate(args: argparse.Namespace) -> str:
    seed = _require_seed(args, args.seed)
    graph = _graph(args)
    with _runner(args) as runner:
        estimate = estimate_solvable_probability(graph, args.pebbles, _trials(args), seed,
                                                 Model(args.model), runner)
    return _estimates_output(args, [estimate])


def _sweep_spec(args: argparse.Namespace) -> ExperimentSpec:
    family = args.family
    if family is None and getattr(args, 'epsilon', None) is not None:
        family = f'fuse:{args.epsilon:g}'
    config = _experiment_config(args, {
        'family': family,
        'n_grid': None if args.n is None else ','.join(str(n) for n in args.n),
        't_grid': None if getattr(args, 't_grid', None) is None else ','.join(str(t) for t in args.t_grid),
        'seed': args.seed,
        'model': args.model,
        'trials.min': args.trials,
        'trials.batch': args.batch,
        'trials.cap': args.cap,
        'bisection.p_star': args.p_star,
        'bisection.precision': args.precision,
        'bisection.max_iterations': args.max_iterations,
    })
    _require_seed(args, config.get('seed'))
    if config.get('family') is None or config.get('n_grid') is None:
        raise UsageError(f'{args.subcommand} needs a family and an n grid, from flags or --config')
    args.resolved = config
    return build_experiment_spec(config)


def cmd_grid(args: argparse.Namespace) -> str:
    spec = _sweep_spec(args)
    with _runner(args, args.resolved) as runner:
        estimates = spec.run_grid(runner)
    return _estimates_output(args, estimates)


def cmd_threshold(args: argparse.Namespace) -> str:
    spec = _sweep_spec(args)
    with _runner(args, args.resolved) as runner:
        results = spec.run_thresholds(runner)
    rows = [(result.family, result.n, result.m, result.t_half, result.bracket[0], result.bracket[1],
             result.trials) for result in results]
    return _render(args, THRESHOLD_COLUMNS, rows,
                   [dict(result.to_dict(), family=result.family) for result in results])


def cmd_exponent(args: argparse.Namespace) -> str:
    spec = _sweep_spec(args)
    with _runner(args, args.resolved) as runner:
        fit = spec.run_fit(runner)
    if args.format in (None, 'json'):
        return fit.to_json()
    rows = [(point.family, point.n, point.m, point.t_half, point.bracket[0], point.bracket[1],
             point.trials) for point in fit.points]
    if args.format == 'csv':
        return _csv(THRESHOLD_COLUMNS, rows)
    summary = f'slope {fit.slope:.4f}  intercept {fit.intercept:.4f}  r^2 {fit.r_squared:.4f}\n'
    return _text_table(THRESHOLD_COLUMNS, rows) + summary


def _contrast_pebbles(args: argparse.Namespace) -> Callable[[int], int]:
    if args.pebbles is not None:
        return lambda n: args.pebbles
    factor = args.pebbles_factor
    return lambda n: math.floor(factor * n * math.log2(n) + 0.5)


def cmd_contrast(args: argparse.Namespace) -> str:
    seed = _require_seed(args, args.seed)
    with _runner(args) as runner:
        contrasts = model_contrast(args.n, _contrast_pebbles(args), _trials(args), seed, runner)
    rows = [(c.n, c.t, c.dependent.trials, c.dependent.p_hat, c.dependent.ci_low, c.dependent.ci_high,
             c.independent.p_hat, c.independent.ci_low, c.independent.ci_high, seed)
            for c in contrasts]
    return _render(args, CONTRAST_COLUMNS, rows, [dict(zip(CONTRAST_COLUMNS, row)) for row in rows])


def cmd_bounds(args: argparse.Namespace) -> str:
    seed = _require_seed(args, args.seed)
    rows = []
    with _runner(args) as runner:
        for n in args.n:
            comparison = compare_bounds(n, args.epsilon, args.omega, _trials(args), seed, runner)
            rows.append((n, args.epsilon, args.omega, comparison.upper_solvable.m,
                         comparison.upper_solvable.t, comparison.upper_solvable.p_hat,
                         comparison.pair_shortfall.p_hat, comparison.chebyshev_bound,
                         comparison.lower_solvable.t, comparison.lower_solvable.p_hat,
                         comparison.certificate_exceedance.p_hat, comparison.markov_bound,
                         comparison.upper_solvable.trials, seed))
    return _render(args, BOUNDS_COLUMNS, rows, [dict(zip(BOUNDS_COLUMNS, row)) for row in rows])


def cmd_pebbling_number(args: argparse.Namespace) -> str:
    graph = _graph(args)
    number = pebbling_number_exact(graph, args.cap)
    witness = next(enumerate_unsolvable(graph, number - 1, args.cap), None) if number > 0 else None
    if args.format == 'json':
        return _json({'n': graph.n, 'pebbling_number': number,
                      'witness': None if witness is None else witness.format()})
    if args.format == 'csv':
        return _csv(('n', 'pebbling_number', 'witness'),
                    [(graph.n, number, '' if witness is None else witness.format())])
    lines = [f'pebbling number: {number}']
    if witness is not None:
        lines.append(f'unsolvable with {number - 1} pebbles: {witness.format()}')
    return '\n'.join(lines) + '\n'


def _add_sweep_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--family', help='fuse:<epsilon>, fuse-m:<m>, path or star.')
    parser.add_argument('--n', type=_grid, help='Vertex counts: "2^a..2^b" or a comma-separated list.')
    parser.add_argument('--model', choices=[str(model) for model in Model])
    parser.add_argument('--batch', type=_count, help='Trials added per adaptive batch (default 100).')
    parser.add_argument('--cap', type=_count, help='Trial cap per bisection point (default 10000).')
    parser.add_argument('--p-star', type=float, help='Target probability of the crossing (default 0.5).')
    parser.add_argument('--precision', type=float,
                        help='Relative bracket width at which bisection stops (default 0.05).')
    parser.add_argument('--max-iterations', type=_count,
                        help='Probes allowed per threshold search (default 64).')


def create_parser() -> ArgumentParser:
    """Build the argument parser with every subcommand."""
    parser = ArgumentParser(prog=PROG, description='Random graph pebbling threshold toolkit.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    common = ArgumentParser(add_help=False)
    _add_common_arguments(common)
    subparsers = parser.add_subparsers(dest='subcommand', metavar='SUBCOMMAND', parser_class=ArgumentParser)
    subparsers.required = True

    def add(name: str, func: Callable[[argparse.Namespace], str], help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
        sub.set_defaults(func=func, stochastic=False)
        return sub

    gen = add('gen', cmd_gen, 'Emit the edge list of a fuse, path or star.')
    _add_graph_arguments(gen, allow_file=False)

    sample_parser = add('sample', cmd_sample, 'Draw random configurations.')
    sample_parser.add_argument('--n', type=_count, required=True, help='Number of vertices.')
    sample_parser.add_argument('--t', dest='pebbles', type=_count, required=True, help='Number of pebbles.')
    sample_parser.add_argument('--model', choices=[str(model) for model in Model], default='dependent')
    sample_parser.add_argument('--count', type=_count, default=1, help='Configurations to draw.')

    solve = add('solve', cmd_solve, 'Decide solvability of a configuration from every root.')
    _add_graph_arguments(solve)
    pebbles = solve.add_mutually_exclusive_group(required=True)
    pebbles.add_argument('--pebbles', help='Configuration as "v:count" pairs, e.g. "2:1 3:2".')
    pebbles.add_argument('--pebbles-file', help='Read the configuration from a file.')
    solve.add_argument('--state-cap', type=_count, default=DEFAULT_STATE_CAP,
                       help='Visited-state cap of the exhaustive search on non-trees.')

    occupancy = add('occupancy', cmd_occupancy, 'Tabulate Pr[C(v) = i] and its bounds.')
    occupancy.add_argument('--n', type=_count, required=True, help='Number of vertices.')
    occupancy.add_argument('--t', dest='pebbles', type=_count, required=True, help='Number of pebbles.')
    occupancy.add_argument('--max-i', type=_count, help='Largest i tabulated; defaults to t.')
    exactness = occupancy.add_mutually_exclusive_group()
    exactness.add_argument('--exact', dest='exact', action='store_true', default=None,
                           help='Use exact rational arithmetic.')
    exactness.add_argument('--float', dest='exact', action='store_false', help='Use log-gamma evaluation.')

    estimate = add('estimate', cmd_estimate, 'Estimate Pr[solvable] at a single (graph, t).')
    _add_graph_arguments(estimate)
    estimate.add_argument('--t', dest='pebbles', type=_count, required=True, help='Number of pebbles.')
    estimate.add_argument('--model', choices=[str(model) for model in Model], default='dependent')

    grid = add('grid', cmd_grid, 'Estimate Pr[solvable] at every (n, t) of a grid.')
    _add_sweep_arguments(grid)
    grid.add_argument('--t', dest='t_grid', type=_grid, help='Pebble counts: "2^a..2^b" or a comma-separated list.')

    threshold = add('threshold', cmd_threshold, 'Locate t_half(n) by bisection for each n.')
    _add_sweep_arguments(threshold)

    exponent = add('exponent', cmd_exponent, 'Fit the exponent of t_half(n) over an n grid.')
    _add_sweep_arguments(exponent)
    exponent.add_argument('--epsilon', type=float, help='Shorthand for --family fuse:<epsilon>.')

    contrast = add('contrast', cmd_contrast, 'Compare the dependent and independent models on paths.')
    contrast.add_argument('--n', type=_grid, required=True, help='Path lengths.')
    contrast_t = contrast.add_mutually_exclusive_group(required=True)
    contrast_t.add_argument('--t', dest='pebbles', type=_count, help='Number of pebbles.')
    contrast_t.add_argument('--t-factor', dest='pebbles_factor', type=float,
                            help='Use t = FACTOR * n lg n pebbles.')

    bounds = add('bounds', cmd_bounds, 'Compare simulated fuse probabilities with the analytic bounds.')
    bounds.add_argument('--n', type=_grid, required=True, help='Vertex counts.')
    bounds.add_argument('--epsilon', type=float, required=True, help='Fuse exponent parameter.')
    bounds.add_argument('--omega', type=float, required=True, help='Growth factor omega.')

    number = add('pebbling-number', cmd_pebbling_number, 'Compute the pebbling number of a small graph.')
    _add_graph_arguments(number)
    number.add_argument('--cap', type=_count, default=10 ** 6,
                        help='Largest number of configurations enumerated per pebble count.')

    for name in ('sample', 'estimate', 'grid', 'threshold', 'exponent', 'contrast', 'bounds'):
        subparsers.choices[name].set_defaults(stochastic=True)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def _write(path: str, text: str, stdout: TextIO) -> None:
    if path == '-':
        stdout.write(text)
        return
    try:
        with open(path, 'w') as f:
            f.write(text)
    except OSError as err:
        raise InvalidParameterError(f'Unable to write {path}: {err}') from err


def _manifest_parameters(args: argparse.Namespace) -> Dict[str, Any]:
    skipped = {'func', 'stochastic', 'resolved', 'verbose', 'manifest'}
    parameters = {key: value for key, value in vars(args).items() if key not in skipped}
    if hasattr(args, 'resolved'):
        parameters['resolved'] = args.resolved
    return parameters


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run the command line and return its exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    if args.format is None and args.subcommand != 'exponent':
        args.format = 'text' if args.subcommand in ('gen', 'solve', 'sample', 'pebbling-number') else 'csv'

    start = time.monotonic()
    try:
        if args.stochastic and args.seed is None and not args.config:
            raise UsageError(f'{args.subcommand} is stochastic and requires --seed')
        output = args.func(args)
        _write(args.out, output, stdout)
        manifest_path = args.manifest or default_manifest_path(args.out)
        if manifest_path is not None:
            seed = args.seed if args.seed is not None else getattr(args, 'resolved', {}).get('seed')
            RunManifest(args.subcommand, _manifest_parameters(args), seed, [args.out],
                        round(time.monotonic() - start, 3)).write(manifest_path)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f'{PROG}: error: {err}', file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, SearchError) as err:
        print(f'{PROG}: error: {err}', file=sys.stderr)
        return EXIT_BUDGET
    except PebblingError as err:
        print(f'{PROG}: error: {err}', file=sys.stderr)
        return EXIT_INVALID
    return EXIT_SUCCESS


def main() -> None:
    sys.exit(run())
