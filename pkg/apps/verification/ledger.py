"""
Ланцюжок сталих c, c1..c5 для (E, x0) в одиничній нормалізації (носій [-1, 1]).

c3, c4, c5 не вміщаються у float, тому всі сталі - mpmath.mpf.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import mpmath

from Potentia.exceptions import DomainError, ProvedBoundViolation
from apps.comb.services import CombGeometry, F_at, comb_geometry, h_at
from apps.equilibrium.services import EquilibriumData, green_at, solve_equilibrium
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import IntervalSet, to_unit

logger = logging.getLogger(__name__)

SLACK = "1e-4"


def derive_constants(c) -> dict:
    """c1..c5 з c; чиста арифметика в поточній точності mpmath."""
    c = mpmath.mpf(c)
    pi = mpmath.pi
    c1 = 4 * pi + mpmath.log(2 * c)
    c2 = mpmath.log(c ** 2 / c1) / pi + 7
    c3 = 4 * mpmath.exp(3 * pi * c2)
    c5 = c2 + 4 + 2 * pi * c3 ** 2
    c4 = ((c1 + 1) / c) * mpmath.exp(pi * c5)
    return {"c1": c1, "c2": c2, "c3": c3, "c4": c4, "c5": c5}


def mp_to_json(x) -> dict:
    """Велика стала як десятковий рядок + log10 у float."""
    x = mpmath.mpf(x)
    return {"value": mpmath.nstr(x, 17), "log10": float(mpmath.log10(x))}


@dataclass(frozen=True)
class ConstantsLedger:
    x0: float
    h: float
    capacity: float
    c: mpmath.mpf
    c1: mpmath.mpf
    c2: mpmath.mpf
    c3: mpmath.mpf
    c4: mpmath.mpf
    c5: mpmath.mpf
    z0: complex
    w0_im: float
    R0: float
    dps: int

    @property
    def sandwich(self) -> Tuple[bool, bool]:
        """(c1 < Im w0, Im w0 < 2 c1)."""
        return bool(self.c1 < self.w0_im), bool(self.w0_im < 2 * self.c1)

    @property
    def upper_intermediate(self) -> bool:
        """Im w0 <= log(|z0 - x0| + 2) + log c."""
        return bool(self.w0_im <= mpmath.log(abs(self.z0 - self.x0) + 2) + mpmath.log(self.c))

    @property
    def modulus_offset(self):
        """(1/pi)(log h + log(|z0-x0|/R0)) + 2; не більше c2."""
        with mpmath.workdps(self.dps):
            return (mpmath.log(self.h) + mpmath.log(abs(self.z0 - self.x0) / mpmath.mpf(self.R0))) / mpmath.pi + 2

    @property
    def far_ratio(self) -> float:
        """R0 / |z0 - x0|; має бути < (c1 + 1)/c."""
        return self.R0 / abs(self.z0 - self.x0)

    def checks(self) -> dict:
        lower, upper = self.sandwich
        with mpmath.workdps(self.dps):
            return {
                "c_gt_2": bool(self.c > 2),
                "h_le_c": bool(self.h <= self.c),
                "cap_gt_inv_c": bool(self.capacity > 1 / self.c),
                "c1_lt_w0_im": lower,
                "w0_im_lt_2c1": upper,
                "w0_im_upper_intermediate": self.upper_intermediate,
                "modulus_offset_le_c2": bool(self.modulus_offset <= self.c2),
                "far_ratio_lt": bool(self.far_ratio < (self.c1 + 1) / self.c),
            }

    @property
    def ok(self) -> bool:
        return all(self.checks().values())

    def to_dict(self) -> dict:
        with mpmath.workdps(self.dps):
            return {
                "x0": self.x0,
                "h": self.h,
                "capacity": self.capacity,
                "c": float(self.c),
                "c1": float(self.c1),
                "c2": float(self.c2),
                "c3": mp_to_json(self.c3),
                "c4": mp_to_json(self.c4),
                "c5": mp_to_json(self.c5),
                "z0": [self.z0.real, self.z0.imag],
                "w0_im": self.w0_im,
                "R0": self.R0,
                "checks": self.checks(),
            }


def unit_frame(E: IntervalSet, x0: float):
    """(eq, geom, x0) для образу E з носієм [-1, 1]."""
    unit, s, t = to_unit(E)
    x0_unit = s * x0 + t
    if not unit.interior_contains(x0_unit):
        # x0 на самому краю після округлення
        raise DomainError(f"x0={x0!r} is not an interior point of E={E.to_spec()}")
    eq = solve_equilibrium(unit)
    return eq, comb_geometry(eq, x0_unit), x0_unit


def build_constants(eq: EquilibriumData, geom: CombGeometry, x0: float) -> ConstantsLedger:
    E = eq.set
    if not E.interior_contains(x0):
        raise DomainError(f"x0={x0!r} is not an interior point of E={E.to_spec()}")
    if E.carrier != (-1.0, 1.0):
        logger.info(f"build_constants: mapping E={E} to the unit carrier")
        eq, geom, x0 = unit_frame(E, x0)

    dps = int(potentia_setting("LEDGER_DPS"))
    h = h_at(eq, x0)
    cap = eq.capacity
    with mpmath.workdps(dps):
        slack = mpmath.mpf(SLACK)
        c = max(2 + slack, mpmath.mpf(h), (1 + slack) / mpmath.mpf(cap))
        derived = derive_constants(c)
        height = float(2 * c * mpmath.exp(4 * mpmath.pi))

    z0 = complex(x0, height)
    w0_im = green_at(eq, z0)
    R0 = abs(F_at(eq, geom, z0) - geom.eta0)
    ledger = ConstantsLedger(x0=x0, h=h, capacity=cap, c=c, z0=z0, w0_im=w0_im, R0=R0, dps=dps, **derived)
    logger.info(f"ledger for {E}, x0={x0}: c={float(c):.6g} c1={float(derived['c1']):.6g} "
                f"Im w0={w0_im:.12g} R0={R0:.12g}")
    if not ledger.ok:
        failed = [k for k, v in ledger.checks().items() if not v]
        raise ProvedBoundViolation(f"constant ledger checks failed for E={E}, x0={x0}: {failed}",
                                   report=ledger.to_dict())
    return ledger


def log_c4(ledger: ConstantsLedger):
    with mpmath.workdps(ledger.dps):
        return mpmath.log(ledger.c4)


def within_c4(ledger: ConstantsLedger, value: float, distance: float) -> bool:
    """value <= c4 * distance, порівняння в логарифмах (c4 поза межами float)."""
    if value <= 0:
        return True
    if distance <= 0:
        return False
    with mpmath.workdps(ledger.dps):
        return bool(mpmath.log(value) <= log_c4(ledger) + mpmath.log(distance))


def tooth_bound_values(ledger: ConstantsLedger) -> dict:
    """Верхні оцінки висоти зубця через cap(E) і через c."""
    with mpmath.workdps(ledger.dps):
        s_cap = mpmath.sqrt(max(mpmath.mpf(0), 1 - 2 * mpmath.mpf(ledger.capacity)))
        by_cap = mpmath.log((1 + s_cap) / (1 - s_cap)) if s_cap < 1 else mpmath.inf
        rc, rc2 = mpmath.sqrt(ledger.c), mpmath.sqrt(ledger.c - 2)
        by_c = mpmath.log((rc + rc2) / (rc - rc2))
        return {
            "by_capacity": float(by_cap),
            "by_c": float(by_c),
            "log_2c": float(mpmath.log(2 * ledger.c)),
            "c1_minus_4pi": float(ledger.c1 - 4 * mpmath.pi),
        }


def log10_float(x) -> float:
    return float(mpmath.log10(x)) if x > 0 else -math.inf
