#!/usr/bin/env python3
"""
Ordered evaluation of independent grid points
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

Task = TypeVar("Task")
Result = TypeVar("Result")


def run_ordered(func: Callable[[Task], Result], tasks: Iterable[Task], max_workers: int = 1) -> List[Result]:
    """
    Evaluate func on every task, returning results in task order

    Args:
        func: Picklable top-level function of one task
        tasks: Grid points
        max_workers: Worker processes; 1 runs in the calling process

    Returns:
        Results in the order of `tasks`
    """
    tasks = list(tasks)
    if max_workers <= 1 or len(tasks) < 2:
        return [func(task) for task in tasks]

    logger.info(f"🔄 Evaluating {len(tasks)} points on {max_workers} workers...")
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        # map() yields in submission order whatever order the workers finish in
        results = list(pool.map(func, tasks))
    logger.debug(f"Collected {len(results)} results")
    return results
