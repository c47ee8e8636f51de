import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from dataclasses import field

logger = logging.getLogger(__name__)


@dataclass
class RunRecord:
    name: str
    status: str = "STARTED"
    message: str = ""
    started: float = field(default_factory=time.perf_counter)
    elapsed: float = 0.0


@contextmanager
def track_run(run_name):
    """
    Context manager for tracking a long computation.

    Usage:
    with track_run("xxz_groundstate") as run:
        run.message = "DMRG converged"
    """
    run = RunRecord(name=run_name)
    logger.info("Run '%s' started.", run.name)

    try:
        yield run
        run.status = "SUCCESS"
        run.elapsed = time.perf_counter() - run.started
        logger.info(
            "Run '%s' completed in %.2fs. %s",
            run.name,
            run.elapsed,
            run.message,
        )
    except Exception as e:
        run.status = "FAILURE"
        run.elapsed = time.perf_counter() - run.started
        run.message = f"Error: {e!s}"
        logger.error("Run '%s' failed after %.2fs: %s", run.name, run.elapsed, e)  # noqa: TRY400
        raise
