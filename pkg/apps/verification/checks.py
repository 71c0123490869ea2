"""
Емпіричні перевірки доведених оцінок: зубці гребінки, c3, c4, далеке поле,
оцінка Ліпшиця для g та вичерпання E_j -> E.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from Potentia.exceptions import DomainError, MonotonicityError, NumericalError
from apps.asymptotics.services import RateReport, check_alpha, default_ladder, rate_report, sigma_alpha
from apps.comb.services import CombGeometry, F_at, h_at
from apps.equilibrium.services import EquilibriumData, green_at, solve_equilibrium
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import ExhaustionSequence
from .ledger import ConstantsLedger, log10_float, tooth_bound_values, unit_frame, within_c4

logger = logging.getLogger(__name__)

ANGLES = 8
MIN_RADIUS = 1e-6
GREEN_MONOTONE_TOL = 1e-9
PROFILE_TOL = 1e-9
FARFIELD_ANGLES = 16


@dataclass(frozen=True)
class ToothReport:
    heights: Tuple[float, ...]
    by_capacity: float
    by_c: float
    log_2c: float
    c1_minus_4pi: float
    ok: bool
    margin: float

    def to_dict(self) -> dict:
        return asdict(self)


def tooth_bounds(eq: EquilibriumData, geom: CombGeometry, ledger: ConstantsLedger) -> ToothReport:
    """v_j <= log((1+s)/(1-s)) <= log((sqrt c + sqrt(c-2))/(sqrt c - sqrt(c-2))) < log 2c, v_j + 4pi < c1."""
    bounds = tooth_bound_values(ledger)
    heights = tuple(float(v) for v in geom.v)
    top = max(heights, default=0.0)
    slack = 1e-9
    ok = (
        top <= bounds["by_capacity"] + slack
        and bounds["by_capacity"] <= bounds["by_c"] + slack
        and bounds["by_c"] < bounds["log_2c"]
        and top < bounds["c1_minus_4pi"]
    )
    return ToothReport(heights=heights, ok=bool(ok), margin=bounds["log_2c"] - top, **bounds)


@dataclass(frozen=True)
class Lemma22Report:
    ratios: Tuple[float, ...]
    slopes: Tuple[float, ...]
    c3_log10: float
    ok: bool
    margin_log10: float
    # номери зубців з eta0 = u_j або v_j = 0
    degenerate: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return asdict(self)


def lemma22_check(geom: CombGeometry, ledger: ConstantsLedger) -> Lemma22Report:
    """
    v_j/r_j < R_j/r_j <= c3, r_j = |eta0 - u_j|, R_j = sqrt(r_j^2 + v_j^2).

    Ліва нерівність строга лише для невиродженого зубця (r_j > 0, v_j > 0),
    права перевіряється в логарифмах: log(R_j/r_j) <= 3*pi*c2 + 2*log 2 = log c3.
    m = 1 - порожньо істинно.
    """
    ratios, slopes, degenerate = [], [], []
    ok = True
    with mpmath.workdps(ledger.dps):
        log_c3 = mpmath.log(ledger.c3)
        for j, (u_j, v_j) in enumerate(zip(geom.u[1:-1], geom.v), start=1):
            r = abs(geom.eta0 - u_j)
            if not (r > 0.0 and v_j > 0.0):
                logger.warning(f"tooth {j} is degenerate: |eta0 - u_j|={r!r}, v_j={v_j!r}")
                degenerate.append(j)
                continue
            ratios.append(math.hypot(r, v_j) / r)
            slopes.append(v_j / r)
            log_ratio = mpmath.log(mpmath.hypot(r, v_j)) - mpmath.log(r)
            ok = ok and log_ratio <= log_c3
    c3_log10 = log10_float(ledger.c3)
    worst = max(ratios, default=1.0)
    return Lemma22Report(tuple(ratios), tuple(slopes), c3_log10, bool(ok and not degenerate),
                         c3_log10 - math.log10(worst), tuple(degenerate))


@dataclass(frozen=True)
class SampleFailure:
    z: Tuple[float, float]
    error: str


@dataclass(frozen=True)
class Lemma23Report:
    sample_count: int
    max_slope: float
    max_distance_ratio: float
    max_green_slope: float
    c4_log10: float
    comb_ok: bool
    radius_ok: bool
    green_ok: bool
    failures: Tuple[SampleFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return self.comb_ok and self.radius_ok and self.green_ok and not self.failures

    @property
    def margin_log10(self) -> float:
        return self.c4_log10 - math.log10(max(self.max_slope, self.max_green_slope, 1e-300))

    def to_dict(self) -> dict:
        data = asdict(self)
        data["failures"] = [asdict(f) for f in self.failures]
        data["ok"] = self.ok
        data["margin_log10"] = self.margin_log10
        return data


def circle_samples(x0: float, r_min: float, r_max: float, sample_count: int) -> np.ndarray:
    """Точки на лог-рівномірних колах |z - x0| in [r_min, r_max) у верхній півплощині."""
    angles = min(ANGLES, sample_count)
    rings = max(1, math.ceil(sample_count / angles))
    radii = np.geomspace(r_min, r_max, rings + 1)[:-1]
    theta = math.pi * (np.arange(angles) + 0.5) / angles
    return (x0 + radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def lemma23_check(eq: EquilibriumData, geom: CombGeometry, ledger: ConstantsLedger,
                  sample_count: Optional[int] = None) -> Lemma23Report:
    """|F(z) - eta0| <= c4|z - x0|, |F(z) - eta0| <= R0 та g(z) <= c4|z - x0| при |z - x0| < 2c."""
    sample_count = sample_count or potentia_setting("LEMMA_SAMPLES")
    if sample_count < 1:
        raise DomainError(f"sample_count={sample_count!r} must be positive")
    x0 = geom.x0
    zs = circle_samples(x0, MIN_RADIUS, 2.0 * float(ledger.c), sample_count)

    comb_ok = radius_ok = green_ok = True
    max_slope = max_ratio = max_green = 0.0
    failures: List[SampleFailure] = []
    for z in zs:
        distance = abs(z - x0)
        try:
            w = F_at(eq, geom, z)
        except NumericalError as exc:
            logger.warning(f"lemma23 sample z={z}: {exc}")
            failures.append(SampleFailure((z.real, z.imag), str(exc)))
            continue
        shift = abs(w - geom.eta0)
        g = green_at(eq, z)
        max_slope = max(max_slope, shift / distance)
        max_ratio = max(max_ratio, shift / ledger.R0)
        max_green = max(max_green, g / distance)
        comb_ok = comb_ok and within_c4(ledger, shift, distance)
        radius_ok = radius_ok and shift <= ledger.R0
        green_ok = green_ok and within_c4(ledger, g, distance)

    report = Lemma23Report(
        sample_count=len(zs),
        max_slope=max_slope,
        max_distance_ratio=max_ratio,
        max_green_slope=max_green,
        c4_log10=log10_float(ledger.c4),
        comb_ok=comb_ok,
        radius_ok=radius_ok,
        green_ok=green_ok,
        failures=tuple(failures),
    )
    logger.info(f"lemma23 x0={x0}: max |F-eta0|/|z-x0|={max_slope:.6g}, max |F-eta0|/R0={max_ratio:.6g}, "
                f"failures={len(failures)}")
    return report


def decade_grid(y_min: float, y_max: float, per_decade: int) -> np.ndarray:
    """Точки 10^(j/per_decade) з [y_min, y_max] та самі кінці; зменшення y_min лише додає точки."""
    lo = math.ceil(math.log10(y_min) * per_decade - 1e-9)
    hi = math.floor(math.log10(y_max) * per_decade + 1e-9)
    inner = 10.0 ** (np.arange(lo, hi + 1) / per_decade)
    return np.unique(np.concatenate([[y_min], inner[(inner > y_min) & (inner < y_max)], [y_max]]))


def lipschitz_sup(eq: EquilibriumData, x0: float, y_min: float, y_max: float, samples: int = 20) -> float:
    """
    Нижня оцінка sup g(z)/|z - x0|: вертикаль над x0, промені під 45 і 135 градусами
    та середини лакун. samples - точок на декаду.
    """
    if not 0.0 < y_min < y_max:
        raise DomainError(f"need 0 < y_min < y_max, got y_min={y_min!r}, y_max={y_max!r}")
    if samples < 1:
        raise DomainError(f"samples={samples!r} must be >= 1")
    rs = decade_grid(y_min, y_max, samples)
    points = [x0 + 1j * r for r in rs]
    for direction in (np.exp(0.25j * math.pi), np.exp(0.75j * math.pi)):
        points.extend(x0 + r * direction for r in rs)
    points.extend(complex(0.5 * (a + b)) for a, b in eq.set.gaps)

    best = 0.0
    for z in points:
        distance = abs(z - x0)
        if distance > 0.0:
            best = max(best, green_at(eq, z) / distance)
    logger.debug(f"lipschitz sup x0={x0} y in [{y_min:g}, {y_max:g}]: {best:.12g}")
    return best


@dataclass(frozen=True)
class FarfieldReport:
    radii: Tuple[float, ...]
    ok: bool
    margin: float

    def to_dict(self) -> dict:
        return asdict(self)


def farfield_check(eq: EquilibriumData, ledger: ConstantsLedger, x0: float,
                   radii: Sequence[float]) -> FarfieldReport:
    """g(z) <= log(2c|z - x0|) на колах |z - x0| = r >= 2c (одинична нормалізація)."""
    if eq.set.carrier != (-1.0, 1.0):
        eq, _geom, x0 = unit_frame(eq.set, x0)
    c = float(ledger.c)
    radii = tuple(float(r) for r in radii)
    short = [r for r in radii if r < 2.0 * c]
    if not radii or short:
        raise DomainError(f"radii must be >= 2c = {2.0 * c!r}, got {list(radii)}")

    theta = np.linspace(0.0, math.pi, FARFIELD_ANGLES)
    margin = math.inf
    for r in radii:
        bound = math.log(2.0 * c * r)
        for z in x0 + r * np.exp(1j * theta):
            margin = min(margin, bound - green_at(eq, z))
    report = FarfieldReport(radii, bool(margin >= 0.0), margin)
    logger.info(f"farfield x0={x0} radii={list(radii)}: margin={margin:.6g}")
    return report


@dataclass(frozen=True)
class ExhaustionGreenReport:
    z: Tuple[Tuple[float, float], ...]
    values: Tuple[Tuple[float, ...], ...]
    differences: Tuple[Tuple[float, ...], ...]
    shrink_factors: Tuple[Tuple[float, ...], ...]
    strictly_increasing: bool

    def to_dict(self) -> dict:
        return asdict(self)


def exhaustion_green_check(exh: ExhaustionSequence, z_samples: Sequence[complex]) -> ExhaustionGreenReport:
    """g_{E_j}(z) не спадає по j; різниці та їх відношення для кожного z."""
    if len(exh) < 2:
        raise DomainError(f"exhaustion needs >= 2 levels, got {len(exh)}")
    eqs = [solve_equilibrium(level) for level in exh]
    zs = [complex(z) for z in z_samples]

    values, diffs, factors = [], [], []
    strict = True
    for z in zs:
        row = [green_at(eq, z) for eq in eqs]
        d = [b - a for a, b in zip(row, row[1:])]
        for j, step in enumerate(d):
            if step < -GREEN_MONOTONE_TOL:
                raise MonotonicityError(
                    f"g decreased from level {j} to {j + 1} at z={z}: {row[j]!r} -> {row[j + 1]!r}"
                )
        strict = strict and all(step > 0.0 for step in d)
        values.append(tuple(row))
        diffs.append(tuple(d))
        factors.append(tuple(a / b if b > 0.0 else math.inf for a, b in zip(d, d[1:])))
    return ExhaustionGreenReport(
        tuple((z.real, z.imag) for z in zs), tuple(values), tuple(diffs), tuple(factors), strict,
    )


@dataclass(frozen=True)
class ProfileRow:
    level: int
    m: int
    h: float
    capacity: float


@dataclass(frozen=True)
class ExhaustionProfile:
    rows: Tuple[ProfileRow, ...]
    h_nondecreasing: bool
    capacity_nonincreasing: bool

    def to_dict(self) -> dict:
        return asdict(self)


def exhaustion_profile(exh: ExhaustionSequence, x0: float) -> ExhaustionProfile:
    rows = []
    for j, level in enumerate(exh):
        if not level.interior_contains(x0):
            raise DomainError(f"x0={x0!r} is not interior to exhaustion level {j} ({level.to_spec()})")
        eq = solve_equilibrium(level)
        rows.append(ProfileRow(j, level.m, h_at(eq, x0), eq.capacity))
    h_up = all(b.h >= a.h * (1 - PROFILE_TOL) for a, b in zip(rows, rows[1:]))
    cap_down = all(b.capacity <= a.capacity * (1 + PROFILE_TOL) for a, b in zip(rows, rows[1:]))
    if not (h_up and cap_down):
        logger.warning(f"exhaustion profile at x0={x0} is not monotone: h {h_up}, capacity {cap_down}")
    return ExhaustionProfile(tuple(rows), h_up, cap_down)


@dataclass(frozen=True)
class DichotomyLevel:
    level: int
    m: int
    h: float
    capacity: float
    rates: RateReport
    sups: Tuple[Tuple[float, float], ...]
    h_over_bound: Optional[float]

    @property
    def sup_growth(self) -> bool:
        """sup не спадає при зменшенні y_min."""
        values = [s for _, s in self.sups]
        return all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "m": self.m,
            "h": self.h,
            "capacity": self.capacity,
            "rates": self.rates.to_dict(),
            "sups": [[y, s] for y, s in self.sups],
            "sup_growth": self.sup_growth,
            "h_over_bound": self.h_over_bound,
        }


@dataclass(frozen=True)
class DichotomyReport:
    x0: float
    alpha: float
    sigma: float
    beta: float
    h_bound: Optional[float]
    profile: ExhaustionProfile
    levels: Tuple[DichotomyLevel, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "beta": self.beta,
            "h_bound": self.h_bound,
            "profile": self.profile.to_dict(),
            "levels": [level.to_dict() for level in self.levels],
        }


def default_floors() -> Tuple[float, ...]:
    floor = float(potentia_setting("Y_FLOOR"))
    return tuple(y for y in (1e-4, 1e-6) if y > floor) + (floor,)


def dichotomy_report(exh: ExhaustionSequence, x0: float, alpha: float,
                     degrees: Optional[Sequence[int]] = None,
                     y_floors: Optional[Sequence[float]] = None,
                     sigma: Optional[RateReport] = None) -> DichotomyReport:
    """
    Таблиця по рівнях: n^alpha E_n та sup g/|z - x0| для спадних y_min.
    Висновку "Ліпшиць / не Ліпшиць" не робить, лише показує тенденції.
    """
    check_alpha(alpha)
    degrees = list(degrees) if degrees is not None else default_ladder()
    floors = tuple(sorted((float(y) for y in (y_floors or default_floors())), reverse=True))
    profile = exhaustion_profile(exh, x0)
    if sigma is None:
        sigma = sigma_alpha(alpha, [n for n in degrees if n % 2 == 0] or None)

    levels = []
    for row, level in zip(profile.rows, exh):
        eq = solve_equilibrium(level)
        rates = rate_report(level, x0, alpha, degrees)
        y_max = level.diameter
        sups = tuple((y, lipschitz_sup(eq, x0, y, y_max)) for y in floors)
        levels.append(DichotomyLevel(row.level, row.m, row.h, row.capacity, rates, sups, None))
        logger.info(f"dichotomy level {row.level}: limit={rates.extrapolated_limit:.8g} sups={sups}")

    beta = levels[-1].rates.limsup_estimate
    h_bound = (sigma.extrapolated_limit / beta) ** (1.0 / alpha) if beta > 0 else None
    if h_bound is not None:
        levels = [DichotomyLevel(lv.level, lv.m, lv.h, lv.capacity, lv.rates, lv.sups, lv.h / h_bound)
                  for lv in levels]
    return DichotomyReport(float(x0), float(alpha), sigma.extrapolated_limit, beta, h_bound, profile, tuple(levels))
