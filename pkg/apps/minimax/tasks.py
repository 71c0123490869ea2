from celery import group, shared_task
import logging

from apps.intervals.conf import potentia_setting
from apps.intervals.parser import parse_set_spec

logger = logging.getLogger(__name__)


@shared_task(name="minimax.remez_degree")
def remez_degree_task(spec, x0, alpha, degree, grid_points_per_band=None, tol=None):
    """
    Один степінь драбини Ремеза. Аргументи і результат - JSON,
    щоб задачу можна було віддати воркеру Celery.
    """
    from .services import MinimaxProblem, remez

    problem = MinimaxProblem(parse_set_spec(spec), float(x0), float(alpha), int(degree))
    return remez(problem, grid_points_per_band, tol).to_row()


def run_sweep(task, jobs):
    """
    Запускає task(**job) для кожного job.
    local - по черзі в цьому процесі; celery - group, результати в порядку jobs.
    """
    backend = potentia_setting("SWEEP_BACKEND")
    if backend == "celery":
        logger.info(f"sweep {task.name}: {len(jobs)} jobs via celery")
        return group(task.s(**job) for job in jobs).apply_async().get()
    if backend != "local":
        logger.warning(f"unknown SWEEP_BACKEND={backend!r}, running locally")
    return [task(**job) for job in jobs]
