import math
import sys
from typing import Callable, Tuple, Type, TypeVar

from hhutil.io import time_now

T = TypeVar("T")


def log(msg):
    print(f"{time_now()} {msg}", file=sys.stderr)


def format_value(x):
    r"""
    Examples::
        >>> format_value(math.inf)
        '+inf'
        >>> format_value(float('nan'))
        >>> format_value(0.5)
        0.5
    """
    if x is None:
        return None
    if isinstance(x, float):
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "+inf" if x > 0 else "-inf"
    return x


def retry_fn(fn: Callable[[int], T], max_retry, catch: Tuple[Type[Exception], ...]) -> Tuple[T, int]:
    r"""
    Call ``fn(attempt)`` until it returns without raising one of ``catch``.
    Returns the result and the attempt number that produced it.
    """
    i = 0
    while True:
        try:
            return fn(i), i
        except Exception as e:
            if not isinstance(e, catch):
                raise e
            i += 1
            if i > max_retry:
                raise e
