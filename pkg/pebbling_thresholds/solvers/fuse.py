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
The weight certificate for v_1-solvability on a fuse.

For a configuration C on F_{m,n}, let A = sum over sparks s of floor(C(s)/2),
the number of pebbles the sparks can push onto v_m, and

    Y = sum_{k=0}^{m-1} C(v_{k+1}) / 2^k  +  A / 2^{m-1}.

C is v_1-solvable exactly when Y >= 1. Y is a dyadic rational and is kept
exact, since the verdict boundary sits at exactly 1.
"""
from dataclasses import dataclass
from fractions import Fraction

from pebbling_thresholds.errors import InvalidParameterError
from pebbling_thresholds.graph import FuseSpec
from pebbling_thresholds.sampling import Configuration


@dataclass(frozen=True)
class FuseCertificate:
    """The pair (A, Y) for a configuration on a fuse, and the verdict Y >= 1."""
    accumulation: int
    weight: Fraction
    v1_solvable: bool

    def format(self) -> str:
        """Render e.g. "v1-solvable, A=1, Y=1/1"."""
        verdict = 'v1-solvable' if self.v1_solvable else 'not v1-solvable'
        return (f'{verdict}, A={self.accumulation}, '
                f'Y={self.weight.numerator}/{self.weight.denominator}')


def spark_accumulation(fuse: FuseSpec, config: Configuration) -> int:
    """A: the pebbles that the sparks can deliver to the center v_m."""
    return int((config.counts[fuse.m:] // 2).sum(dtype=object))


def fuse_certificate(fuse: FuseSpec, config: Configuration) -> FuseCertificate:
    """Compute the certificate (A, Y) of `config` on `fuse`.

    Raises:
        InvalidParameterError: if the configuration is not on the fuse's vertices.
    """
    if config.n != fuse.n:
        raise InvalidParameterError(
            f'Configuration has {config.n} vertices but {fuse} has {fuse.n}'
        )
    accumulation = spark_accumulation(fuse, config)
    wick_counts = config.counts[:fuse.m].tolist()
    # scale every term by 2^(m-1) so the numerator is an integer
    numerator = accumulation + sum(count << (fuse.m - 1 - k) for k, count in enumerate(wick_counts))
    weight = Fraction(numerator, 1 << (fuse.m - 1))
    return FuseCertificate(accumulation, weight, weight >= 1)
