"""
Sharded sweeps over S_m.

The group is split by first window value into m shards. Each shard runs as a
task(m, first) in its own worker process and returns a private result;
results are merged in shard order, so the merge never depends on scheduling.
"""

import logging
import time
from collections import Counter
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, TypeVar

from permstat.config import settings
from permstat.core.permutation import Window
from permstat.exceptions import BudgetExceededError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def check_budget(m: int, budget: Optional[int] = None) -> None:
    """Refuse sweeps over S_m beyond the enumeration budget."""
    limit = settings.effective_budget(budget)
    if m > limit:
        logger.error(f"refusing to enumerate S_{m}: budget is {limit}")
        raise BudgetExceededError(f"S_{m} exceeds the enumeration budget (max degree {limit})")


def map_shards(task: Callable[[int, int], T], m: int, threads: Optional[int] = None) -> List[T]:
    """
    Run task(m, first) for first = 1..m and return the results in shard order.

    task must be picklable (a module-level function or a functools.partial of one).
    """
    workers = min(settings.effective_threads(threads), m)
    started = time.perf_counter()
    arguments = [(m, first) for first in range(1, m + 1)]
    if workers <= 1:
        results = [task(*args) for args in arguments]
    else:
        with Pool(workers) as pool:
            results = pool.starmap(task, arguments)
    logger.info(
        f"swept S_{m} in {m} shards on {max(workers, 1)} worker(s) "
        f"in {time.perf_counter() - started:.3f}s"
    )
    return results


def merge_counters(parts: Iterable[Counter]) -> Counter:
    """Sum shard tallies; addition is associative and commutative."""
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total


def merge_buckets(parts: Iterable[dict]) -> dict:
    """Merge {key: Counter} shard results bucket by bucket."""
    merged: dict = {}
    for part in parts:
        for key, counter in part.items():
            merged.setdefault(key, Counter()).update(counter)
    return merged


def run_sharded(task: Callable[[int, int], Counter], m: int, threads: Optional[int] = None) -> Counter:
    return merge_counters(map_shards(task, m, threads))


def first_failure(
    task: Callable[[int, int], Optional[Window]], m: int, threads: Optional[int] = None
) -> Optional[Window]:
    """
    The lexicographically smallest window for which a shard reports a failure.

    Each shard returns its own first failing window (or None); shards are in
    increasing order of first value, so the first non-None result wins.
    """
    for window in map_shards(task, m, threads):
        if window is not None:
            return window
    return None

