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
Closed-form occupancy probabilities, expectations and tail bounds for random
configurations on fuses.

Two evaluation modes exist. Exact mode works in rationals (Fraction) and is
the default when n + t <= EXACT_LIMIT; float mode uses a ratio recurrence
and log-gamma values and is meant for experiment-scale parameters.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import (
    Iterator,
    List,
    Optional,
    Tuple,
    Union,
)

import numpy as np
from scipy.special import gammaln

from pebbling_thresholds.errors import (
    DivergentSeriesError,
    InvalidParameterError,
    UndefinedBoundError,
)
from pebbling_thresholds.graph import wick_length_for_epsilon

LOGGER = logging.getLogger(__name__)

EXACT_LIMIT = 200
# float sums stop once terms fall below this fraction of the running total
FLOAT_TAIL_CUTOFF = 1e-17
# up to this many factors the float pmf is a sum of log ratios; log-gamma
# differences lose about n + t ulps and are only used past it
PRODUCT_FORM_LIMIT = 1 << 20

Number = Union[Fraction, float]


@dataclass(frozen=True)
class ModelParams:
    """One parameter point (n, t, epsilon, omega, m) of the fuse analysis."""
    n: int
    t: int
    epsilon: float
    omega: float
    m: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidParameterError(f'n must be at least 2, got {self.n}')
        if self.t < 0:
            raise InvalidParameterError(f't must be nonnegative, got {self.t}')
        if not 0 <= self.epsilon < 0.5:
            raise InvalidParameterError(f'epsilon must lie in [0, 1/2), got {self.epsilon}')
        if self.omega <= 0:
            raise InvalidParameterError(f'omega must be positive, got {self.omega}')
        if not 1 <= self.m <= self.n:
            raise InvalidParameterError(f'm must lie in [1, n], got m={self.m}, n={self.n}')

    @classmethod
    def for_upper_regime(cls, n: int, epsilon: float, omega: float) -> 'ModelParams':
        """Parameters with t = omega * n^(1-epsilon), where solvability is likely."""
        t = math.floor(omega * n ** (1 - epsilon) + 0.5)
        return cls(n, t, epsilon, omega, wick_length_for_epsilon(n, epsilon))

    @classmethod
    def for_lower_regime(cls, n: int, epsilon: float, omega: float) -> 'ModelParams':
        """Parameters with t = n^(1-epsilon) / omega, where solvability is unlikely."""
        t = math.floor(n ** (1 - epsilon) / omega + 0.5)
        return cls(n, t, epsilon, omega, wick_length_for_epsilon(n, epsilon))

    @property
    def sparks(self) -> int:
        """|S| = n - m"""
        return self.n - self.m


def _use_exact(n: int, t: int, exact: Optional[bool]) -> bool:
    return exact if exact is not None else n + t <= EXACT_LIMIT


def _check_occupancy_arguments(n: int, t: int, i: int = 0) -> None:
    if n < 1:
        raise InvalidParameterError(f'n must be at least 1, got {n}')
    if t < 0 or i < 0:
        raise InvalidParameterError(f't and i must be nonnegative, got t={t}, i={i}')


def expected_occupancy(n: int, t: int) -> Fraction:
    """E[C(v)] = t/n for every vertex v."""
    _check_occupancy_arguments(n, t)
    return Fraction(t, n)


def occupancy_pmf(n: int, t: int, i: int, exact: Optional[bool] = None) -> Number:
    """Pr[C(v) = i] = C(n+t-i-2, t-i) / C(n+t-1, t) for a fixed vertex v.

    Args:
        n: number of vertices. For n = 1 the law is the point mass at t.
        t: number of pebbles.
        i: the count whose probability is wanted; i > t has probability 0.
        exact: force exact (True) or float (False) evaluation. By default
            exact mode is used when n + t <= EXACT_LIMIT.
    """
    _check_occupancy_arguments(n, t, i)
    use_exact = _use_exact(n, t, exact)
    zero: Number = Fraction(0) if use_exact else 0.0
    one: Number = Fraction(1) if use_exact else 1.0
    if i > t:
        return zero
    if n == 1:
        return one if i == t else zero
    if use_exact:
        return Fraction(math.comb(n + t - i - 2, t - i), math.comb(n + t - 1, t))
    if i <= PRODUCT_FORM_LIMIT:
        j = np.arange(i, dtype=np.float64)
        ratios = np.log((t - j) / (n + t - 2 - j))
        log_pmf = math.log((n - 1) / (n + t - 1)) + math.fsum(ratios.tolist())
        return math.exp(log_pmf)
    log_pmf = (gammaln(n + t - i - 1) - gammaln(t - i + 1) - gammaln(n - 1)
               - gammaln(n + t) + gammaln(t + 1) + gammaln(n))
    return float(math.exp(log_pmf))


def iter_occupancy_pmf(n: int, t: int, exact: Optional[bool] = None) -> Iterator[Tuple[int, Number]]:
    """Yield (i, Pr[C(v) = i]) for i = 0, 1, ..., t.

    Uses the ratio Pr[C(v) = i+1] / Pr[C(v) = i] = (t - i) / (n + t - i - 2).
    In float mode iteration stops early once the remaining mass is negligible.
    """
    _check_occupancy_arguments(n, t)
    use_exact = _use_exact(n, t, exact)
    if n == 1:
        for i in range(t + 1):
            yield i, occupancy_pmf(1, t, i, use_exact)
        return

    value: Number = Fraction(n - 1, n + t - 1) if use_exact else (n - 1) / (n + t - 1)
    total: Number = value
    for i in range(t + 1):
        yield i, value
        if i == t:
            return
        if use_exact:
            value = value * Fraction(t - i, n + t - i - 2)
        else:
            value = value * (t - i) / (n + t - i - 2)
            total += value
            if value < FLOAT_TAIL_CUTOFF * total:
                return


def occupancy_bounds(n: int, t: int, i: int, exact: Optional[bool] = None) -> Tuple[Number, Number]:
    """The sandwich ((n-1)/(n+t-1)) ((t-i)/(n+t-i))^i <= Pr[C(v)=i] <= (t/n)^i.

    Raises:
        InvalidParameterError: unless 1 <= i <= t.
    """
    _check_occupancy_arguments(n, t, i)
    if not 1 <= i <= t:
        raise InvalidParameterError(f'Occupancy bounds need 1 <= i <= t, got i={i}, t={t}')
    if _use_exact(n, t, exact):
        lower: Number = Fraction(n - 1, n + t - 1) * Fraction(t - i, n + t - i) ** i
        upper: Number = Fraction(t, n) ** i
        return lower, upper
    lower = (n - 1) / (n + t - 1) * ((t - i) / (n + t - i)) ** i
    upper = (t / n) ** i
    return lower, upper


@dataclass(frozen=True)
class OccupancyRow:
    i: int
    pmf: Number
    lower_bound: Optional[Number]
    upper_bound: Optional[Number]


def occupancy_table(n: int, t: int, max_i: Optional[int] = None,
                    exact: Optional[bool] = None) -> List[OccupancyRow]:
    """Rows (i, pmf, lower, upper) for i = 0..min(t, max_i); bounds exist for i >= 1."""
    last = t if max_i is None else min(t, max_i)
    rows = []
    for i in range(last + 1):
        pmf = occupancy_pmf(n, t, i, exact)
        lower, upper = occupancy_bounds(n, t, i, exact) if i >= 1 else (None, None)
        rows.append(OccupancyRow(i, pmf, lower, upper))
    return rows


@dataclass(frozen=True)
class SparkPairExpectation:
    """E[X] for X = |S ∩ L_2|, the sparks holding exactly two pebbles."""
    exact: Number
    lower: Number
    upper: Number
    asymptotic: float

    @property
    def variance_bound(self) -> Number:
        """The X_i are negatively correlated, so Var[X] <= E[X]."""
        return self.exact


def expected_spark_pairs(params: ModelParams, exact: Optional[bool] = None) -> SparkPairExpectation:
    """E[X] exactly, the sandwich bounds on it, and omega^2 n^(1-2 epsilon).

    X counts the sparks that hold exactly two pebbles; the exact value is
    |S| Pr[C(v) = 2] by exchangeability.
    """
    sparks = params.sparks
    asymptotic = params.omega ** 2 * params.n ** (1 - 2 * params.epsilon)
    exact_value = sparks * occupancy_pmf(params.n, params.t, 2, exact)
    if params.t < 2:
        return SparkPairExpectation(exact_value, exact_value, exact_value, asymptotic)
    lower, upper = occupancy_bounds(params.n, params.t, 2, exact)
    return SparkPairExpectation(exact_value, sparks * lower, sparks * upper, asymptotic)


def spark_pair_variance_bound(params: ModelParams) -> Number:
    """The bound Var[X] <= E[X]."""
    return expected_spark_pairs(params).variance_bound


def chebyshev_bound_from_mean(mean: float) -> float:
    """4 / E[X], the Chebyshev bound on Pr[|X - E[X]| > E[X]/2].

    Raises:
        UndefinedBoundError: if E[X] is not positive.
    """
    if mean <= 0:
        raise UndefinedBoundError(f'The Chebyshev bound needs E[X] > 0, got {mean}')
    return 4 / mean


def chebyshev_failure_bound(params: ModelParams, use_asymptotic: bool = False) -> float:
    """Bound on Pr[X < n^(1-2 epsilon)], the chance too few sparks hold a pair.

    Args:
        params: the parameter point.
        use_asymptotic: use omega^2 n^(1-2 epsilon) for E[X] instead of the
            exact |S| Pr[C(v)=2].

    Raises:
        UndefinedBoundError: if E[X] = 0.
    """
    expectation = expected_spark_pairs(params)
    mean = expectation.asymptotic if use_asymptotic else float(expectation.exact)
    bound = chebyshev_bound_from_mean(mean)
    needed = params.n ** (1 - 2 * params.epsilon)
    if needed > mean / 2:
        LOGGER.warning('n^(1-2 epsilon) = %.4g exceeds E[X]/2 = %.4g; the Chebyshev step '
                       'does not cover Pr[X < n^(1-2 epsilon)] at this point', needed, mean / 2)
    return bound


def exact_expected_accumulation(n: int, m: int, t: int, exact: Optional[bool] = None) -> Number:
    """E[A] = |S| sum_{i>=2} floor(i/2) Pr[C(v) = i] on F_{m,n}."""
    if not 1 <= m <= n:
        raise InvalidParameterError(f'm must lie in [1, n], got m={m}, n={n}')
    use_exact = _use_exact(n, t, exact)
    per_spark: Number = Fraction(0) if use_exact else 0.0
    for i, pmf in iter_occupancy_pmf(n, t, use_exact):
        per_spark += (i // 2) * pmf
    return (n - m) * per_spark


def exact_expected_certificate(n: int, m: int, t: int, exact: Optional[bool] = None) -> Number:
    """E[Y] = (t/n)(2 - 2^(1-m)) + E[A] / 2^(m-1) on F_{m,n}, by linearity."""
    use_exact = _use_exact(n, t, exact)
    accumulation = exact_expected_accumulation(n, m, t, use_exact)
    if use_exact:
        return Fraction(t, n) * (2 - Fraction(1, 2 ** (m - 1))) + accumulation / 2 ** (m - 1)
    return t / n * (2 - 2.0 ** (1 - m)) + accumulation / 2.0 ** (m - 1)


@dataclass(frozen=True)
class AccumulationBounds:
    """The exact E[A] and the chain of upper bounds that dominates it."""
    exact: Number
    series: float
    linear: float
    asymptotic: float


def expected_accumulation_bound(params: ModelParams) -> AccumulationBounds:
    """Upper bounds on E[A] with q = omega n^epsilon.

    series:     |S|/q^2 * sum_k (k+1)/q^k = |S| / (q - 1)^2
    linear:     2|S|/q^2
    asymptotic: 2 n^(1-2 epsilon) / omega^2

    series <= linear only once q >= 2 + sqrt(2); the series needs q > 1 to
    converge and q > 2 is required here.

    Raises:
        DivergentSeriesError: if omega n^epsilon <= 2.
    """
    q = params.omega * params.n ** params.epsilon
    if q <= 2:
        raise DivergentSeriesError(f'The accumulation bound needs omega n^epsilon > 2, got {q:.4g}')
    sparks = params.sparks
    return AccumulationBounds(
        exact=exact_expected_accumulation(params.n, params.m, params.t),
        series=sparks / (q - 1) ** 2,
        linear=2 * sparks / q ** 2,
        asymptotic=2 * params.n ** (1 - 2 * params.epsilon) / params.omega ** 2,
    )


@dataclass(frozen=True)
class CertificateBound:
    """The bound on E[Y], the resulting Markov bound on Pr[Y >= 1], and the exact E[Y]."""
    bound: float
    markov: float
    exact: Number


def expected_certificate_bound(params: ModelParams) -> CertificateBound:
    """E[Y] < 2/(n^epsilon omega) + 4/omega^2 and Pr[Y >= 1] <= E[Y]."""
    bound = 2 / (params.n ** params.epsilon * params.omega) + 4 / params.omega ** 2
    exact = exact_expected_certificate(params.n, params.m, params.t)
    return CertificateBound(bound, min(1.0, bound), exact)
