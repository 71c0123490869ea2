"""
Випадкові множини з 2-4 смуг у [-1, 1] і прогін усіх доведених оцінок на них.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from Potentia.exceptions import NumericalError, ProvedBoundViolation
from apps.comb.services import comb_geometry
from apps.equilibrium.services import solve_equilibrium
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import IntervalSet, normalize
from .checks import farfield_check, lemma22_check, lemma23_check, tooth_bounds
from .ledger import build_constants, unit_frame

logger = logging.getLogger(__name__)

MIN_PIECE = 0.05
FARFIELD_MULTIPLES = (1.0, 2.0, 50.0)


def random_band_set(rng: np.random.Generator, m: int) -> IntervalSet:
    """m смуг на носії [-1, 1]; кожна смуга і кожна лакуна не коротші за 0.05."""
    pieces = 2 * m - 1
    free = 2.0 - MIN_PIECE * pieces
    lengths = MIN_PIECE + free * rng.dirichlet(np.ones(pieces))
    edges = -1.0 + np.concatenate([[0.0], np.cumsum(lengths)])
    edges[-1] = 1.0
    return normalize([(edges[2 * k], edges[2 * k + 1]) for k in range(m)])


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Той самий потік, що й SeedSequence(seed).spawn(...)[index]."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def draw_trial(seed: int, index: int) -> Tuple[IntervalSet, float]:
    rng = trial_rng(seed, index)
    E = random_band_set(rng, int(rng.integers(2, 5)))
    a, b = E.bands[int(rng.integers(0, E.m))]
    return E, 0.5 * (a + b)


def verify_point(E: IntervalSet, x0: float, lemma_samples: Optional[int] = None) -> dict:
    """Усі перевірки для одного (E, x0); порушення не кидаються, а потрапляють у звіт."""
    report = {"set": E.to_spec(), "x0": x0, "ok": False}
    try:
        if E.carrier == (-1.0, 1.0):
            eq = solve_equilibrium(E)
            geom = comb_geometry(eq, x0)
        else:
            eq, geom, x0 = unit_frame(E, x0)
        ledger = build_constants(eq, geom, x0)
        report["ledger"] = ledger.to_dict()
        tooth = tooth_bounds(eq, geom, ledger)
        lemma22 = lemma22_check(geom, ledger)
        lemma23 = lemma23_check(eq, geom, ledger, lemma_samples)
        c = float(ledger.c)
        farfield = farfield_check(eq, ledger, x0, [2.0 * c * k for k in FARFIELD_MULTIPLES])
    except ProvedBoundViolation as exc:
        report["error"] = str(exc)
        if exc.report is not None:
            report["ledger"] = exc.report
        return report
    except NumericalError as exc:
        logger.warning(f"verification of E={E} x0={x0} failed numerically: {exc}")
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report

    report.update({
        "tooth": tooth.to_dict(),
        "lemma22": lemma22.to_dict(),
        "lemma23": lemma23.to_dict(),
        "farfield": farfield.to_dict(),
        "ok": ledger.ok and tooth.ok and lemma22.ok and lemma23.ok and farfield.ok,
    })
    return report


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    trials: Tuple[dict, ...]

    @property
    def failed(self) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.trials) if not t["ok"])

    @property
    def ok(self) -> bool:
        return not self.failed

    def margins(self) -> dict:
        passed = [t for t in self.trials if t["ok"]]
        if not passed:
            return {}
        return {
            "tooth": min(t["tooth"]["margin"] for t in passed),
            "lemma22_log10": min(t["lemma22"]["margin_log10"] for t in passed),
            "lemma23_log10": min(t["lemma23"]["margin_log10"] for t in passed),
            "farfield": min(t["farfield"]["margin"] for t in passed),
        }

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trial_count": len(self.trials),
            "failed": list(self.failed),
            "ok": self.ok,
            "worst_margins": self.margins(),
            "trials": list(self.trials),
        }


def proved_bound_suite(trials: Optional[int] = None, seed: Optional[int] = None,
                       lemma_samples: Optional[int] = None) -> SuiteReport:
    from apps.minimax.tasks import run_sweep
    from .tasks import verify_trial_task

    trials = potentia_setting("TRIALS") if trials is None else int(trials)
    seed = potentia_setting("SEED") if seed is None else int(seed)
    jobs = [{"seed": seed, "index": i, "lemma_samples": lemma_samples} for i in range(trials)]
    report = SuiteReport(seed, tuple(run_sweep(verify_trial_task, jobs)))
    logger.info(f"proved-bound suite seed={seed}: {trials - len(report.failed)}/{trials} passed")
    return report
