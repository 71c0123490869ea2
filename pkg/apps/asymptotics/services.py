"""
Асимптотика n^alpha E_n: екстраполяція, стала Бернштейна sigma_alpha
та перевірка lim n^alpha E_n(E) = h(x0)^{-alpha} sigma_alpha.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from Potentia.exceptions import DomainError, ExtrapolationError
from apps.comb.services import h_at
from apps.equilibrium.services import solve_equilibrium
from apps.intervals.conf import potentia_setting
from apps.intervals.parser import parse_degrees
from apps.intervals.sets import IntervalSet, normalize
from apps.minimax.services import en_sequence, is_even_integer

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 4
UNIT_SEGMENT = normalize([(-1.0, 1.0)])


def default_ladder():
    return parse_degrees(potentia_setting("DEGREE_LADDER"))


@dataclass(frozen=True)
class RateReport:
    alpha: float
    x0: float
    samples: Tuple[Tuple[int, float], ...]
    extrapolated_limit: float
    limsup_estimate: float
    fit_residual: float
    extrapolated: bool = True

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "x0": self.x0,
            "samples": [[n, v] for n, v in self.samples],
            "extrapolated_limit": self.extrapolated_limit,
            "limsup_estimate": self.limsup_estimate,
            "fit_residual": self.fit_residual,
            "extrapolated": self.extrapolated,
        }


def extrapolate_rate(samples: Sequence[Tuple[int, float]]) -> Tuple[float, float]:
    """Найменші квадрати value(n) = L + a/n + b/n^2; повертає (L, RMS нев'язки)."""
    n = np.array([float(s[0]) for s in samples])
    v = np.array([float(s[1]) for s in samples])
    if len(np.unique(n)) < MIN_FIT_SAMPLES:
        raise ExtrapolationError(
            f"extrapolation needs >= {MIN_FIT_SAMPLES} distinct degrees, got {sorted(set(n.astype(int).tolist()))}"
        )
    if np.any(n <= 0):
        raise ExtrapolationError("extrapolation degrees must be positive")
    inv = 1.0 / n
    A = np.column_stack([np.ones_like(inv), inv, inv * inv])
    coef, _res, rank, _sv = np.linalg.lstsq(A, v, rcond=None)
    if rank < 3:
        raise ExtrapolationError(f"degenerate extrapolation fit (rank {rank})")
    residual = float(np.sqrt(np.mean((A @ coef - v) ** 2)))
    return float(coef[0]), residual


def rate_report(E: IntervalSet, x0: float, alpha: float, degrees: Sequence[int]) -> RateReport:
    """n^alpha E_n для драбини степенів, екстраполяція та оцінка limsup."""
    seq = en_sequence(E, x0, alpha, degrees)
    samples = tuple((n, n ** alpha * err) for n, err in seq)
    values = [v for _, v in samples]
    tail = values[len(values) // 2:]
    if len({n for n, _ in samples}) >= MIN_FIT_SAMPLES:
        limit, residual = extrapolate_rate(samples)
        extrapolated = True
    else:
        logger.warning(f"only {len(samples)} degrees for alpha={alpha}: reporting the last sample as the limit")
        limit, residual, extrapolated = values[-1], 0.0, False
    report = RateReport(
        alpha=float(alpha),
        x0=float(x0),
        samples=samples,
        extrapolated_limit=max(0.0, limit),
        limsup_estimate=max([max(0.0, limit)] + tail),
        fit_residual=residual,
        extrapolated=extrapolated,
    )
    logger.info(f"rate for E={E} x0={x0} alpha={alpha}: limit={report.extrapolated_limit:.12g} "
                f"residual={residual:.3e}")
    return report


def check_alpha(alpha: float):
    if not alpha > 0:
        raise DomainError(f"alpha={alpha!r} must be positive")
    if is_even_integer(alpha):
        raise DomainError(f"alpha={alpha!r} is an even integer: E_n vanishes for n >= alpha")


def sigma_alpha(alpha: float, degrees: Optional[Sequence[int]] = None) -> RateReport:
    """sigma_alpha = lim n^alpha E_n(|x|^alpha, [-1, 1]) по парних n."""
    check_alpha(alpha)
    degrees = list(degrees) if degrees is not None else default_ladder()
    odd = [n for n in degrees if n % 2]
    if odd:
        raise DomainError(f"sigma_alpha uses even degrees only (odd ones double the previous E_n): {odd}")
    return rate_report(UNIT_SEGMENT, 0.0, alpha, degrees)


@dataclass(frozen=True)
class VTReport:
    lhs_limit: float
    rhs: float
    relative_gap: float
    h: float
    sigma: float
    lhs: RateReport
    sigma_report: RateReport

    def to_dict(self) -> dict:
        return {
            "lhs_limit": self.lhs_limit,
            "rhs": self.rhs,
            "relative_gap": self.relative_gap,
            "h": self.h,
            "sigma": self.sigma,
            "lhs": self.lhs.to_dict(),
            "sigma_report": self.sigma_report.to_dict(),
        }


def vt_check(E: IntervalSet, x0: float, alpha: float, degrees: Optional[Sequence[int]] = None,
             sigma: Optional[RateReport] = None) -> VTReport:
    """lim n^alpha E_n(E) проти h(x0)^{-alpha} sigma_alpha."""
    check_alpha(alpha)
    if not E.interior_contains(x0):
        raise DomainError(f"x0={x0!r} must be an interior point of E={E.to_spec()}")
    degrees = list(degrees) if degrees is not None else default_ladder()

    lhs = rate_report(E, x0, alpha, degrees)
    if sigma is None:
        sigma = sigma_alpha(alpha, [n for n in degrees if n % 2 == 0] or None)
    h = h_at(solve_equilibrium(E), x0)
    rhs = h ** (-alpha) * sigma.extrapolated_limit
    gap = abs(lhs.extrapolated_limit - rhs) / rhs if rhs > 0 else math.inf
    logger.info(f"vt check E={E} x0={x0} alpha={alpha}: lhs={lhs.extrapolated_limit:.8g} rhs={rhs:.8g} gap={gap:.3e}")
    return VTReport(lhs.extrapolated_limit, rhs, gap, h, sigma.extrapolated_limit, lhs, sigma)
