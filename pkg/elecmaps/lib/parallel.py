#! /usr/bin/env python

"""Worker pool helper.

FUNCTIONS
map_tasks()  Map a function over tasks, optionally across processes.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence


def map_tasks(function: Callable, tasks: Sequence, workers: int) -> List:
    """Return [function(task) for task in +tasks+].

    +function+  Module level function (picklable).
    +workers+  Number of worker processes. 1 or less evaluates in this
        process. Results are in task order whatever the number of
        workers.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [function(task) for task in tasks]
    chunksize = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, tasks, chunksize=chunksize))
