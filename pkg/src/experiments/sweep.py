"""Thread pool for parameter sweeps with deterministic result order."""

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

import structlog

from src.config import get_settings

from .models import SweepStatus, SweepSummary, SweepTask

logger = structlog.get_logger(__name__)

P = TypeVar("P")
R = TypeVar("R")


class SweepPool:
    """
    Runs sweep points concurrently and merges results in submission order.

    Responsibilities:
    - Track each point as a SweepTask guarded by a lock
    - Size the pool from Settings.threads
    - Re-raise the first failure (by submission order) after all points finish
    """

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads or get_settings().threads
        self._tasks: Dict[int, SweepTask] = {}
        self._lock = threading.Lock()

    def _create_task(self, index: int, label: str) -> SweepTask:
        with self._lock:
            task = SweepTask(index=index, label=label)
            self._tasks[index] = task
            return task

    def _run_one(self, task: SweepTask, fn: Callable[[P], R], point: P) -> R:
        with self._lock:
            task.start()
        try:
            result = fn(point)
        except Exception as e:
            with self._lock:
                task.fail(str(e))
            logger.warning("sweep_point_failed", label=task.label, error=str(e))
            raise
        with self._lock:
            task.complete()
        logger.info("sweep_point_complete", label=task.label, seconds=task.duration_seconds)
        return result

    def map(self, name: str, fn: Callable[[P], R], points: Sequence[P]) -> List[R]:
        """fn over points; results in the order of points."""
        self._tasks = {}
        tasks = [self._create_task(i, f"{name}[{i}]") for i in range(len(points))]
        logger.info("sweep_start", sweep=name, points=len(points), threads=self.threads)

        if self.threads == 1:
            outcomes = []
            for task, point in zip(tasks, points):
                try:
                    outcomes.append((self._run_one(task, fn, point), None))
                except Exception as e:
                    outcomes.append((None, e))
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                futures = [pool.submit(self._run_one, t, fn, p) for t, p in zip(tasks, points)]
            outcomes = [(None, f.exception()) if f.exception() else (f.result(), None) for f in futures]

        for _, error in outcomes:
            if error is not None:
                raise error
        logger.info("sweep_complete", sweep=name, points=len(points))
        return [result for result, _ in outcomes]

    def get_summary(self) -> SweepSummary:
        tasks = self.tasks()
        return SweepSummary(
            total=len(tasks),
            pending=sum(1 for t in tasks if t.status == SweepStatus.PENDING),
            in_progress=sum(1 for t in tasks if t.status == SweepStatus.IN_PROGRESS),
            completed=sum(1 for t in tasks if t.status == SweepStatus.COMPLETED),
            failed=sum(1 for t in tasks if t.status == SweepStatus.FAILED),
        )

    def tasks(self) -> List[SweepTask]:
        with self._lock:
            return [self._tasks[i] for i in sorted(self._tasks)]
