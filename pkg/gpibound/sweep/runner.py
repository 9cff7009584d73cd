import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import psutil

from gpibound.errors import DomainError
from gpibound.sweep.callbacks import validate_callbacks
from gpibound.utils import log

INITIAL_CONTEXT_KEYS = ['index', 'spec', 'flags']


def evaluate_point(callbacks, item):
    index, spec = item
    context = {
        'index': index,
        'spec': spec,
        'flags': [],
    }
    for c in callbacks:
        c.transform(context)
    return context['row']


class Runner:

    def __init__(self, jobs=None):
        if jobs is None:
            jobs = psutil.cpu_count() or 1
        if jobs < 1:
            raise DomainError(f"jobs must be positive, got {jobs}")
        self.jobs = jobs

    def run(self, grid, callbacks):
        r"""
        Evaluate every (index, spec) item of ``grid`` through ``callbacks`` and
        return the rows in grid order, whatever order the workers finish in.
        """
        validate_callbacks(callbacks, INITIAL_CONTEXT_KEYS)
        assert 'row' in {k for c in callbacks for k in c.produces()}, "no callback produces 'row'"
        grid = list(grid)
        log(f"Sweep start: {len(grid)} points, {self.jobs} jobs")
        start = time.perf_counter()
        fn = partial(evaluate_point, callbacks)
        if self.jobs == 1 or len(grid) <= 1:
            rows = list(map(fn, grid))
        else:
            chunksize = max(1, len(grid) // (4 * self.jobs))
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                rows = list(executor.map(fn, grid, chunksize=chunksize))
        log(f"Sweep finished in {time.perf_counter() - start:.2f}s")
        return rows
