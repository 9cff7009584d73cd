import re

import numpy as np
from toolz.curried import concat, curry, map

_RANGE = re.compile(r"""^\s*([-+]?[\d.eE+-]+)\s*:\s*([-+]?[\d.eE+-]+)\s*:\s*(\d+)\s*$""")


@curry
def parse_item(s, cast=float):
    r"""
    Examples::
        >>> parse_item("0.5")
        [0.5]
        >>> parse_item("0:1:3")
        [0.0, 0.5, 1.0]
    """
    m = _RANGE.match(s)
    if m is not None:
        start, stop, count = float(m.group(1)), float(m.group(2)), int(m.group(3))
        if count < 1:
            raise ValueError(f"Range needs at least one point: {s}")
        return [cast(x) for x in np.linspace(start, stop, count).tolist()]
    try:
        return [cast(s)]
    except ValueError:
        raise ValueError(f"Invalid grid value: {s!r}")


def parse_values(s, cast=float):
    r"""
    Parse a grid specification: comma-separated values and ``start:stop:count``
    ranges, in order.

    Examples::
        >>> parse_values("-0.9,-0.5,0:0.5:2")
        [-0.9, -0.5, 0.0, 0.5]
    """
    items = [x for x in s.split(",") if x.strip()]
    if not items:
        raise ValueError(f"Empty grid specification: {s!r}")
    return list(concat(map(parse_item(cast=cast), items)))
