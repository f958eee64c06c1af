"""Tests for ordered grid evaluation"""

import math

from sweep_runner import run_ordered


def test_serial_order():
    assert run_ordered(math.sqrt, [16.0, 1.0, 9.0]) == [4.0, 1.0, 3.0]


def test_worker_pool_keeps_grid_order():
    tasks = [float(k * k) for k in range(12, 0, -1)]
    assert run_ordered(math.sqrt, tasks, max_workers=3) == [float(k) for k in range(12, 0, -1)]


def test_empty_grid():
    assert run_ordered(math.sqrt, [], max_workers=4) == []
