"""
Grid Sweep
Parallel execution of every (d, replicate) trial with a deterministic result order
"""

import concurrent.futures
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from common.errors import TrialError, WielandtViolation
from common.settings import DEFAULT_THREADS
from sampler import SEED_GRID_PERIOD
from .aggregate import AggregateRow, aggregate
from .experiment import ExperimentConfig
from .trial import TrialRecord, run_trial

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 20


@dataclass
class SweepResult:
    """Successful records in (d, replicate) order plus one entry per failed trial"""

    records: List[TrialRecord] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    aggregates: List[AggregateRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_tasks(tasks: Sequence[Tuple[Any, Callable[[], TrialRecord]]],
              threads: Optional[int] = None) -> Tuple[Dict[Any, TrialRecord], List[Dict[str, Any]]]:
    """
    Run keyed trial thunks on a thread pool

    Trial failures are collected, never raised. A record whose Wielandt spot
    check failed is kept and also reported as a failure.

    Returns:
        (records by key, failure descriptions)
    """
    threads = max(1, threads or DEFAULT_THREADS)
    done: Dict[Any, TrialRecord] = {}
    failures: List[Dict[str, Any]] = []

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        futures = {executor.submit(fn): key for key, fn in tasks}
        completed = 0
        total = len(futures)
        for future in concurrent.futures.as_completed(futures):
            completed += 1
            if completed % PROGRESS_EVERY == 0:
                logger.info(f"Progress: {completed}/{total} trials")

            key = futures[future]
            try:
                record = future.result()
            except TrialError as e:
                logger.error(f"[ERROR] {e}")
                failures.append({**e.coords, 'error': str(e.cause), 'type': type(e.cause).__name__})
                continue

            done[key] = record
            if record.wielandt_ok is False:
                failures.append({**record.coords, 'error': 'spot check outside Wielandt bounds',
                                 'type': WielandtViolation.__name__})

    failures.sort(key=lambda f: tuple(f.get(k, 0) for k in ('d', 'replicate')))
    return done, failures


def sweep(config: ExperimentConfig, threads: Optional[int] = None) -> SweepResult:
    """
    Execute all trials of the grid

    Args:
        config: Experiment configuration
        threads: Worker count; defaults to SPIKE_PCA_THREADS

    Returns:
        SweepResult with records sorted by (d, replicate), failures and aggregates
    """
    tasks = []
    for grid_index, d in enumerate(config.d_grid):
        for replicate in range(config.replicates):
            tasks.append(((d, replicate),
                          lambda d=d, r=replicate, g=grid_index: run_trial(config, d, r, grid_index=g)))

    if len(config.d_grid) > SEED_GRID_PERIOD:
        logger.warning(f"[WARNING] d_grid has {len(config.d_grid)} entries; grid indices {SEED_GRID_PERIOD} apart "
                       f"share score seeds")
    logger.info(f"Sweeping {len(config.d_grid)} dimensions x {config.replicates} replicates "
                f"on {max(1, threads or DEFAULT_THREADS)} threads")
    done, failures = run_tasks(tasks, threads)

    records = [done[key] for key in sorted(done)]
    if failures:
        logger.warning(f"[WARNING] {len(failures)} of {len(tasks)} trials failed")
    return SweepResult(records=records, failures=failures, aggregates=aggregate(records))
