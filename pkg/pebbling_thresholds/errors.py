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
Exceptions raised by the pebbling threshold toolkit.
"""
from functools import wraps
from typing import (
    Any,
    Callable,
    Optional,
    Tuple,
    Type,
)


class PebblingError(Exception):
    """Base class for errors raised by this package."""


class InvalidParameterError(PebblingError):
    """A precondition on the arguments of an operation was violated."""


class UnsupportedFamilyError(InvalidParameterError):
    """The requested graph family cannot be handled by the operation."""


class UndefinedBoundError(InvalidParameterError):
    """A probability bound is undefined at the given parameters."""


class DivergentSeriesError(InvalidParameterError):
    """A series used by a bound does not converge at the given parameters."""


class BudgetExceededError(PebblingError):
    """An exhaustive computation exceeded its configured budget."""


class SearchError(PebblingError):
    """The threshold search could not produce a trustworthy answer."""


class NonConvergenceError(SearchError):
    """The threshold search did not converge within its iteration cap."""


class MonotonicityViolationError(SearchError):
    """Estimates of Pr[solvable] decreased in t beyond confidence interval noise."""

    def __init__(self, message: str, pair: Optional[Tuple[Any, Any]] = None) -> None:
        super().__init__(message)
        self.pair = pair


def handle_errors(exc_type: Type[PebblingError]) -> Callable[[Callable], Callable]:
    """Decorator factory converting low-level parse errors into `exc_type`.

    ValueErrors and KeyErrors raised by the decorated function are re-raised
    as `exc_type` with a prefix derived from the name of the function, e.g.
    a function named `parse_edge_list` produces messages that start with
    "Failed to parse edge list".

    Args:
        exc_type: the PebblingError subclass to raise.

    Returns:
        The decorator.
    """
    def decorator(fn: Callable) -> Callable:
        err_prefix = f'Failed to {fn.__name__.replace("_", " ")}'

        @wraps(fn)
        def inner(*args: Any, **kwargs: Any) -> Any:
            try:
                return fn(*args, **kwargs)
            except PebblingError:
                raise
            except ValueError as err:
                raise exc_type(f'{err_prefix}: {err}') from err
            except KeyError as err:
                raise exc_type(f'{err_prefix} due to missing key {err}') from err
        return inner
    return decorator
