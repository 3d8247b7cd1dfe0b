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
Monte Carlo estimation of Pr[solvable], threshold search and exponent fits.

The empirical threshold t_half(n) of a graph family is the pebble count where
the estimated probability of solvability crosses p* (1/2 by default).
Fitting lg t_half against lg n over a grid of n estimates the exponent of the
threshold; for fuses with m = (1 - 2 epsilon) lg n it should be 1 - epsilon.
"""
import csv
from dataclasses import dataclass, field
from enum import Enum
import json
import logging
import math
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    TextIO,
    Tuple,
    Union,
)

from scipy.stats import linregress, norm

from pebbling_thresholds.analytics import (
    ModelParams,
    chebyshev_failure_bound,
    expected_certificate_bound,
)
from pebbling_thresholds.errors import (
    InvalidParameterError,
    MonotonicityViolationError,
    NonConvergenceError,
    UndefinedBoundError,
    UnsupportedFamilyError,
    handle_errors,
)
from pebbling_thresholds.graph import (
    FuseSpec,
    Graph,
    build_fuse,
    build_path,
    build_star,
    wick_length_for_epsilon,
)
from pebbling_thresholds.runner import (
    SERIAL_RUNNER,
    TrialRunner,
    count_certificate_exceedances,
    count_pair_shortfalls,
    count_solvable,
)
from pebbling_thresholds.sampling import MASK64, Model, SeedPolicy

LOGGER = logging.getLogger(__name__)

CSV_COLUMNS = ('family', 'n', 'm', 't', 'trials', 'p_hat', 'ci_low', 'ci_high', 'seed')
MIN_SPEC_TRIALS = 30


class FamilyKind(Enum):
    """Graph families the harness can sweep over n."""
    FUSE_EPSILON = 'fuse'
    FUSE_FIXED = 'fuse-m'
    PATH = 'path'
    STAR = 'star'

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Family:
    """A graph family indexed by the vertex count n.

    `fuse:<epsilon>` uses m = max(1, round((1 - 2 epsilon) lg n));
    `fuse-m:<m>` keeps the wick length fixed.
    """
    kind: FamilyKind
    epsilon: Optional[float] = None
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is FamilyKind.FUSE_EPSILON:
            if self.epsilon is None or not 0 <= self.epsilon < 0.5:
                raise InvalidParameterError(f'fuse families need epsilon in [0, 1/2), got {self.epsilon}')
        if self.kind is FamilyKind.FUSE_FIXED and (self.m is None or self.m < 1):
            raise InvalidParameterError(f'fixed-wick fuse families need m >= 1, got {self.m}')

    @classmethod
    @handle_errors(InvalidParameterError)
    def parse(cls, text: str) -> 'Family':
        """Parse "fuse:<epsilon>", "fuse-m:<m>", "path" or "star"."""
        name, _, argument = text.strip().partition(':')
        kind = FamilyKind(name)
        if kind is FamilyKind.FUSE_EPSILON:
            return cls(kind, epsilon=float(argument))
        if kind is FamilyKind.FUSE_FIXED:
            return cls(kind, m=int(argument))
        if argument:
            raise ValueError(f'family {name} takes no argument, got {argument!r}')
        return cls(kind)

    def wick_length(self, n: int) -> int:
        """The wick length of the family's member on n vertices."""
        if self.kind is FamilyKind.FUSE_EPSILON:
            assert self.epsilon is not None
            return wick_length_for_epsilon(n, self.epsilon)
        if self.kind is FamilyKind.FUSE_FIXED:
            assert self.m is not None
            return self.m
        return n if self.kind is FamilyKind.PATH else 1

    def build(self, n: int) -> Graph:
        """The member of the family on n vertices."""
        if self.kind is FamilyKind.PATH:
            return build_path(n)
        if self.kind is FamilyKind.STAR:
            return build_star(n)
        return build_fuse(self.wick_length(n), n)

    def __str__(self) -> str:
        if self.kind is FamilyKind.FUSE_EPSILON:
            return f'{self.kind}:{self.epsilon:g}'
        if self.kind is FamilyKind.FUSE_FIXED:
            return f'{self.kind}:{self.m}'
        return str(self.kind)


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """The Wilson score interval for a binomial proportion.

    Returns:
        (lower, upper) within [0, 1]. With no trials the interval is (0, 1).
    """
    if trials == 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2))
    p_hat = successes / trials
    denominator = 1 + z ** 2 / trials
    center = (p_hat + z ** 2 / (2 * trials)) / denominator
    margin = z / denominator * math.sqrt(p_hat * (1 - p_hat) / trials + z ** 2 / (4 * trials ** 2))
    # rounding can push an endpoint past p_hat at 0 or 1
    return max(0.0, min(p_hat, center - margin)), min(1.0, max(p_hat, center + margin))


@dataclass(frozen=True)
class Estimate:
    """A point estimate of a probability with its 95% Wilson interval."""
    successes: int
    trials: int
    p_hat: float
    ci_low: float
    ci_high: float
    n: int
    t: int
    seed: int
    family: str = ''
    m: Optional[int] = None

    @classmethod
    def from_counts(cls, successes: int, trials: int, n: int, t: int, seed: int,
                    family: str = '', m: Optional[int] = None) -> 'Estimate':
        if trials < 1:
            raise InvalidParameterError(f'An estimate needs at least one trial, got {trials}')
        ci_low, ci_high = wilson_interval(successes, trials)
        return cls(successes, trials, successes / trials, ci_low, ci_high, n, t, seed, family, m)

    @property
    def width(self) -> float:
        return self.ci_high - self.ci_low

    def covers(self, p: float) -> bool:
        return self.ci_low <= p <= self.ci_high

    def csv_row(self) -> List[Any]:
        return [self.family, self.n, '' if self.m is None else self.m, self.t, self.trials,
                f'{self.p_hat:.6f}', f'{self.ci_low:.6f}', f'{self.ci_high:.6f}', self.seed]

    def to_dict(self) -> Dict[str, Any]:
        return dict(zip(CSV_COLUMNS, [self.family, self.n, self.m, self.t, self.trials,
                                      self.p_hat, self.ci_low, self.ci_high, self.seed]))


def write_estimates_csv(estimates: Iterable[Estimate], stream: TextIO) -> None:
    """Write one CSV row per estimate, with a header."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for estimate in estimates:
        writer.writerow(estimate.csv_row())


def point_seed(master_seed: int, n: int, t: int, model: Model = Model.DEPENDENT) -> SeedPolicy:
    """The seed policy of the experiment point (n, t, model)."""
    model_key = 0 if model is Model.DEPENDENT else 1
    return SeedPolicy(master_seed & MASK64).derive(n, t, model_key)


def _labels(graph: Graph, family: Optional[Family]) -> Tuple[str, Optional[int]]:
    label = str(family) if family is not None else str(graph.kind)
    return label, graph.wick_length


def estimate_solvable_probability(
    graph: Graph,
    t: int,
    trials: int,
    seed: int,
    model: Model = Model.DEPENDENT,
    runner: TrialRunner = SERIAL_RUNNER,
    family: Optional[Family] = None,
) -> Estimate:
    """Estimate Pr[solvable] for t random pebbles on a tree.

    Trial i of the point draws from SeedPolicy(point_seed, i), so the estimate
    depends only on (graph, t, trials, seed, model).

    Raises:
        UnsupportedFamilyError: if the graph is not a tree.
        InvalidParameterError: if trials < 1 or t < 0.
    """
    if not graph.is_tree:
        raise UnsupportedFamilyError('Monte Carlo estimates need a tree; use the oracle for other graphs')
    if trials < 1:
        raise InvalidParameterError(f'An estimate needs at least one trial, got {trials}')
    if t < 0:
        raise InvalidParameterError(f'The pebble count must be nonnegative, got t={t}')
    policy = point_seed(seed, graph.n, t, model)
    successes = runner.count(count_solvable, 0, trials, graph, t, model, policy)
    label, m = _labels(graph, family)
    return Estimate.from_counts(successes, trials, graph.n, t, policy.master_seed, label, m)


def estimate_adaptively(
    graph: Graph,
    t: int,
    seed: int,
    p_star: float,
    min_trials: int,
    batch_size: int,
    trial_cap: int,
    model: Model = Model.DEPENDENT,
    runner: TrialRunner = SERIAL_RUNNER,
    family: Optional[Family] = None,
) -> Estimate:
    """Estimate Pr[solvable], adding batches until the interval excludes p_star.

    Starts with `min_trials` trials and adds `batch_size` more at a time until
    the Wilson interval no longer contains p_star or `trial_cap` is reached.
    Trial indices are contiguous, so the result is the same as a single
    estimate with the final trial count.
    """
    if not graph.is_tree:
        raise UnsupportedFamilyError('Monte Carlo estimates need a tree; use the oracle for other graphs')
    policy = point_seed(seed, graph.n, t, model)
    label, m = _labels(graph, family)
    trials = min(min_trials, trial_cap)
    successes = runner.count(count_solvable, 0, trials, graph, t, model, policy)
    estimate = Estimate.from_counts(successes, trials, graph.n, t, policy.master_seed, label, m)
    while estimate.covers(p_star) and trials < trial_cap:
        extra = min(batch_size, trial_cap - trials)
        successes += runner.count(count_solvable, trials, trials + extra, graph, t, model, policy)
        trials += extra
        estimate = Estimate.from_counts(successes, trials, graph.n, t, policy.master_seed, label, m)
    if estimate.covers(p_star):
        LOGGER.warning('Trial cap %d reached at t=%d with p_hat=%.4f still within the interval',
                       trial_cap, t, estimate.p_hat)
    return estimate


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of a threshold search on one member of a family."""
    family: str
    n: int
    m: Optional[int]
    p_star: float
    t_half: int
    bracket: Tuple[int, int]
    estimates: Tuple[Estimate, ...]

    @property
    def trials(self) -> int:
        return sum(estimate.trials for estimate in self.estimates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'm': self.m,
            't_half': self.t_half,
            'bracket_low': self.bracket[0],
            'bracket_high': self.bracket[1],
            'trials': self.trials,
        }


def check_monotone(estimates: Dict[int, Estimate], new: Estimate) -> None:
    """Raise if `new` and an earlier estimate are decreasing in t beyond their intervals."""
    for t, other in estimates.items():
        if t == new.t:
            continue
        low, high = (other, new) if t < new.t else (new, other)
        if low.ci_low > high.ci_high:
            raise MonotonicityViolationError(
                f'Estimated Pr[solvable] drops from {low.p_hat:.4f} at t={low.t} '
                f'to {high.p_hat:.4f} at t={high.t} on n={new.n}, beyond interval noise',
                pair=(low, high),
            )


def find_threshold(
    family: Family,
    n: int,
    seed: int,
    p_star: float = 0.5,
    precision: float = 0.05,
    trials: int = 400,
    batch_size: int = 100,
    trial_cap: int = 10_000,
    max_iterations: int = 64,
    model: Model = Model.DEPENDENT,
    runner: TrialRunner = SERIAL_RUNNER,
) -> ThresholdResult:
    """Locate the smallest t whose estimated Pr[solvable] exceeds p_star.

    The upper end of the bracket doubles from t = 1 until the estimate exceeds
    p_star, then bisection shrinks [lo, hi] until hi - lo <= max(1, precision * hi).
    t_half is the final hi.

    Raises:
        InvalidParameterError: if p_star is not in (0, 1) or precision <= 0.
        NonConvergenceError: if more than `max_iterations` probes are needed.
        MonotonicityViolationError: if two estimates decrease in t beyond
            their confidence intervals.
    """
    if not 0 < p_star < 1:
        raise InvalidParameterError(f'p* must lie in (0, 1), got {p_star}')
    if precision <= 0:
        raise InvalidParameterError(f'precision must be positive, got {precision}')
    graph = family.build(n)
    probed: Dict[int, Estimate] = {}

    def probe(t: int) -> float:
        if len(probed) >= max_iterations:
            raise NonConvergenceError(
                f'Threshold search on {family} with n={n} did not converge in {max_iterations} probes'
            )
        estimate = estimate_adaptively(graph, t, seed, p_star, trials, batch_size, trial_cap,
                                       model, runner, family)
        check_monotone(probed, estimate)
        probed[t] = estimate
        LOGGER.debug('n=%d t=%d p_hat=%.4f [%.4f, %.4f] after %d trials',
                     n, t, estimate.p_hat, estimate.ci_low, estimate.ci_high, estimate.trials)
        return estimate.p_hat

    low, high = 0, 1
    while probe(high) <= p_star:
        low, high = high, 2 * high
    while high - low > max(1.0, precision * high):
        middle = (low + high) // 2
        if probe(middle) > p_star:
            high = middle
        else:
            low = middle

    LOGGER.info('%s n=%d: t_half=%d (bracket [%d, %d])', family, n, high, low, high)
    return ThresholdResult(str(family), n, graph.wick_length, p_star, high, (low, high),
                           tuple(probed[t] for t in sorted(probed)))


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares fit of lg t_half against lg n."""
    family: str
    epsilon: Optional[float]
    slope: float
    intercept: float
    r_squared: float
    points: Tuple[ThresholdResult, ...] = field(default_factory=tuple)

    def to_json(self) -> str:
        """The JSON document {epsilon, slope, intercept, r_squared, points[...]}."""
        document = {
            'family': self.family,
            'epsilon': self.epsilon,
            'slope': self.slope,
            'intercept': self.intercept,
            'r_squared': self.r_squared,
            'points': [point.to_dict() for point in self.points],
        }
        return json.dumps(document, indent=2) + '\n'


def fit_exponent(
    family: Family,
    n_grid: Sequence[int],
    seed: int,
    p_star: float = 0.5,
    precision: float = 0.05,
    trials: int = 400,
    batch_size: int = 100,
    trial_cap: int = 10_000,
    max_iterations: int = 64,
    model: Model = Model.DEPENDENT,
    runner: TrialRunner = SERIAL_RUNNER,
) -> ExponentFit:
    """Fit lg t_half = slope * lg n + intercept over `n_grid`.

    Raises:
        InvalidParameterError: if the grid has fewer than four points.
        SearchError: propagated from the threshold searches.
    """
    if len(n_grid) < 4:
        raise InvalidParameterError(f'An exponent fit needs at least 4 grid points, got {len(n_grid)}')
    points = tuple(
        find_threshold(family, n, seed, p_star, precision, trials, batch_size, trial_cap,
                       max_iterations, model, runner)
        for n in n_grid
    )
    fit = linregress([math.log2(point.n) for point in points],
                     [math.log2(point.t_half) for point in points])
    LOGGER.info('%s: slope %.4f, r^2 %.4f', family, fit.slope, fit.rvalue ** 2)
    return ExponentFit(str(family), family.epsilon, float(fit.slope), float(fit.intercept),
                       float(fit.rvalue ** 2), points)


@dataclass(frozen=True)
class ModelContrast:
    """Estimates under both placement models at the same (n, t)."""
    n: int
    t: int
    dependent: Estimate
    independent: Estimate


def model_contrast(
    n_grid: Sequence[int],
    t: Union[int, Callable[[int], int]],
    trials: int,
    seed: int,
    runner: TrialRunner = SERIAL_RUNNER,
) -> List[ModelContrast]:
    """Compare Pr[solvable] on paths under the dependent and independent models.

    Args:
        n_grid: path lengths.
        t: the pebble count, or a function of n giving it.
        trials: trials per model and point.
        seed: master seed.
    """
    family = Family(FamilyKind.PATH)
    contrasts = []
    for n in n_grid:
        graph = family.build(n)
        pebbles = t(n) if callable(t) else t
        contrasts.append(ModelContrast(
            n, pebbles,
            estimate_solvable_probability(graph, pebbles, trials, seed, Model.DEPENDENT, runner, family),
            estimate_solvable_probability(graph, pebbles, trials, seed, Model.INDEPENDENT, runner, family),
        ))
    return contrasts


def estimate_pair_shortfall(n: int, epsilon: float, t: int, trials: int, seed: int,
                            runner: TrialRunner = SERIAL_RUNNER) -> Estimate:
    """Estimate Pr[X < n^(1-2 epsilon)] on the fuse with m = (1 - 2 epsilon) lg n."""
    fuse = FuseSpec(n, wick_length_for_epsilon(n, epsilon))
    policy = point_seed(seed, n, t).derive(1)
    needed = n ** (1 - 2 * epsilon)
    short = runner.count(count_pair_shortfalls, 0, trials, fuse, t, needed, policy)
    return Estimate.from_counts(short, trials, n, t, policy.master_seed, f'fuse:{epsilon:g}', fuse.m)


def estimate_certificate_exceedance(n: int, epsilon: float, t: int, trials: int, seed: int,
                                    runner: TrialRunner = SERIAL_RUNNER) -> Estimate:
    """Estimate Pr[Y >= 1] on the fuse with m = (1 - 2 epsilon) lg n."""
    fuse = FuseSpec(n, wick_length_for_epsilon(n, epsilon))
    policy = point_seed(seed, n, t).derive(2)
    hits = runner.count(count_certificate_exceedances, 0, trials, fuse, t, policy)
    return Estimate.from_counts(hits, trials, n, t, policy.master_seed, f'fuse:{epsilon:g}', fuse.m)


@dataclass(frozen=True)
class BoundComparison:
    """Simulated probabilities next to the analytic bounds in both regimes.

    In the upper regime t = omega n^(1-epsilon): the configuration is unsolvable
    only if too few sparks hold a pair, whose probability is at most the
    Chebyshev bound. In the lower regime t = n^(1-epsilon)/omega: solvable
    implies Y >= 1, whose probability is at most the Markov bound.
    """
    n: int
    epsilon: float
    omega: float
    upper_solvable: Estimate
    pair_shortfall: Estimate
    chebyshev_bound: Optional[float]
    lower_solvable: Estimate
    certificate_exceedance: Estimate
    markov_bound: float

    def estimates(self) -> List[Estimate]:
        return [self.upper_solvable, self.pair_shortfall, self.lower_solvable, self.certificate_exceedance]


def compare_bounds(n: int, epsilon: float, omega: float, trials: int, seed: int,
                   runner: TrialRunner = SERIAL_RUNNER) -> BoundComparison:
    """Simulate both regimes of the fuse analysis at one (n, epsilon, omega)."""
    family = Family(FamilyKind.FUSE_EPSILON, epsilon=epsilon)
    graph = family.build(n)
    upper = ModelParams.for_upper_regime(n, epsilon, omega)
    lower = ModelParams.for_lower_regime(n, epsilon, omega)
    try:
        chebyshev: Optional[float] = chebyshev_failure_bound(upper)
    except UndefinedBoundError as err:
        LOGGER.warning('No Chebyshev bound at n=%d: %s', n, err)
        chebyshev = None
    return BoundComparison(
        n=n,
        epsilon=epsilon,
        omega=omega,
        upper_solvable=estimate_solvable_probability(graph, upper.t, trials, seed, runner=runner,
                                                     family=family),
        pair_shortfall=estimate_pair_shortfall(n, epsilon, upper.t, trials, seed, runner),
        chebyshev_bound=chebyshev,
        lower_solvable=estimate_solvable_probability(graph, lower.t, trials, seed, runner=runner,
                                                     family=family),
        certificate_exceedance=estimate_certificate_exceedance(n, epsilon, lower.t, trials, seed, runner),
        markov_bound=expected_certificate_bound(lower).markov,
    )


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce a sweep exactly."""
    family: Family
    n_grid: Tuple[int, ...]
    master_seed: int
    trials_per_point: int = 400
    model: Model = Model.DEPENDENT
    t_grid: Optional[Tuple[int, ...]] = None
    p_star: float = 0.5
    precision: float = 0.05
    batch_size: int = 100
    trial_cap: int = 10_000
    max_iterations: int = 64

    def __post_init__(self) -> None:
        if not self.n_grid:
            raise InvalidParameterError('The vertex-count grid is empty')
        if any(a >= b for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise InvalidParameterError(f'The vertex-count grid must be strictly increasing, got {self.n_grid}')
        if self.trials_per_point < MIN_SPEC_TRIALS:
            raise InvalidParameterError(
                f'At least {MIN_SPEC_TRIALS} trials per point are required, got {self.trials_per_point}'
            )
        if not 0 <= self.master_seed <= MASK64:
            raise InvalidParameterError(f'Seeds must be 64-bit unsigned values, got {self.master_seed}')
        if not 0 < self.p_star < 1:
            raise InvalidParameterError(f'p* must lie in (0, 1), got {self.p_star}')
        if self.precision <= 0:
            raise InvalidParameterError(f'precision must be positive, got {self.precision}')
        if self.batch_size < 1 or self.trial_cap < self.trials_per_point:
            raise InvalidParameterError(
                f'Need batch >= 1 and cap >= trials per point, got batch={self.batch_size}, cap={self.trial_cap}'
            )

    def run_grid(self, runner: TrialRunner = SERIAL_RUNNER) -> List[Estimate]:
        """Estimate every (n, t) of the explicit pebble grid."""
        if self.t_grid is None:
            raise InvalidParameterError('This experiment has no explicit pebble-count grid')
        return [
            estimate_solvable_probability(self.family.build(n), t, self.trials_per_point,
                                          self.master_seed, self.model, runner, self.family)
            for n in self.n_grid for t in self.t_grid
        ]

    def run_thresholds(self, runner: TrialRunner = SERIAL_RUNNER) -> List[ThresholdResult]:
        """Search for t_half at every n of the grid."""
        return [
            find_threshold(self.family, n, self.master_seed, self.p_star, self.precision,
                           self.trials_per_point, self.batch_size, self.trial_cap,
                           self.max_iterations, self.model, runner)
            for n in self.n_grid
        ]

    def run_fit(self, runner: TrialRunner = SERIAL_RUNNER) -> ExponentFit:
        return fit_exponent(self.family, self.n_grid, self.master_seed, self.p_star, self.precision,
                            self.trials_per_point, self.batch_size, self.trial_cap,
                            self.max_iterations, self.model, runner)
