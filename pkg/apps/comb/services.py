"""
Гребінкове відображення F: C+ -> G, F(z) = eta0 + int_{x0}^{z} i q(t)/sqrt(R(t)) dt.

Смуги E йдуть на основу [u_{j-1}, u_j], лакуни - на зубці [u_j, u_j + i v_j],
Im F = g_{C\\E}, F'(x0) = pi * omega_E(x0).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import accumulate
from typing import List, Tuple

import numpy as np
from scipy.integrate import quad_vec

from Potentia.exceptions import BranchError, DomainError, PathError
from apps.equilibrium.services import EquilibriumData, density_at, green_at, mass_of
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import chebyshev_grid

logger = logging.getLogger(__name__)

ENDPOINT_CLEARANCE = 1e-12
# прямий відрізок x0 -> z, якщо |z - x0| < STRAIGHT_FRACTION * відстань від x0 до кінця смуги
STRAIGHT_FRACTION = 0.5
BRANCH_SAMPLES = 257


@dataclass(frozen=True)
class CombGeometry:
    u: Tuple[float, ...]
    v: Tuple[float, ...]
    eta0: float
    x0: float

    @property
    def m(self) -> int:
        return len(self.u) - 1

    def to_dict(self) -> dict:
        return {"u": list(self.u), "v": list(self.v), "eta0": self.eta0, "x0": self.x0}


@dataclass(frozen=True)
class Leg:
    """Відрізок шляху p0 -> p1; squeeze=True - заміна s^2 біля кінця p1."""
    p0: complex
    p1: complex
    squeeze: bool = False

    @property
    def length(self) -> float:
        return abs(self.p1 - self.p0)

    def point(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        if self.squeeze:
            tau = 1.0 - sigma
            return self.p1 + (self.p0 - self.p1) * tau * tau
        return self.p0 + (self.p1 - self.p0) * sigma

    def velocity(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        if self.squeeze:
            return 2.0 * (self.p1 - self.p0) * (1.0 - sigma)
        return (self.p1 - self.p0) * np.ones_like(sigma)


def comb_geometry(eq: EquilibriumData, x0: float) -> CombGeometry:
    E = eq.set
    if not E.interior_contains(x0):
        raise DomainError(f"x0={x0!r} is not an interior point of E={E.to_spec()}")

    masses = [math.fsum(w) for w in eq.band_weights]
    u = [0.0] + [math.pi * s for s in accumulate(masses)]
    v = [green_at(eq, zero) for zero in eq.gap_zeros]
    eta0 = math.pi * mass_of(eq, E.left, x0)

    k = E.band_of(x0)
    if not u[k] <= eta0 <= u[k + 1]:
        logger.warning(f"eta0={eta0!r} lies outside the base [{u[k]!r}, {u[k + 1]!r}] of band {k + 1}")
    if any(not vj > 0 for vj in v):
        logger.warning(f"non-positive tooth heights {v} for E={E}")

    geom = CombGeometry(tuple(u), tuple(v), eta0, float(x0))
    logger.debug(f"comb geometry: u={geom.u} v={geom.v} eta0={eta0!r}")
    return geom


def h_at(eq: EquilibriumData, x0: float) -> float:
    """h_E(x0) = F'(x0) = pi * omega_E(x0)."""
    return math.pi * density_at(eq, x0)


def _nearest_endpoint(eq: EquilibriumData, z: complex) -> float:
    return float(np.min(np.abs(z - eq.set.endpoints)))


def build_path(eq: EquilibriumData, x0: float, z: complex) -> List[Leg]:
    """Ламана x0 -> x0+iH -> Re z+iH -> z у замкненій верхній півплощині."""
    if abs(z - x0) < STRAIGHT_FRACTION * _nearest_endpoint(eq, complex(x0)):
        return [Leg(complex(x0), z)]

    H = max(z.imag, potentia_setting("PATH_HEIGHT") * eq.set.diameter)
    corners = [complex(x0), complex(x0, H), complex(z.real, H)]
    legs = [Leg(p, q) for p, q in zip(corners, corners[1:]) if q != p]
    if z != corners[-1]:
        legs.append(Leg(corners[-1], z, squeeze=True))
    return legs


def _breakpoints(leg: Leg, scale: float):
    """Геометричні точки розбиття для довгих відрізків, що стартують біля E."""
    if leg.squeeze or leg.length <= 20.0 * scale:
        return None
    count = int(4 * math.log10(leg.length / scale)) + 2
    return list(np.geomspace(scale / leg.length, 1.0, count)[:-1])


def _check_branch(eq: EquilibriumData, leg: Leg, last: bool, endpoint_ok: bool):
    ends = np.geomspace(1e-14, 1.0, 300)
    sigma = np.unique(np.concatenate([np.linspace(0.0, 1.0, BRANCH_SAMPLES), ends, 1.0 - ends]))
    t = leg.point(sigma)
    endpoints = eq.set.endpoints
    if last and endpoint_ok:
        # кінцева точка сама є кінцем смуги; її не рахуємо
        t = t[:-1]
        endpoints = endpoints[endpoints != leg.p1.real]
    if endpoints.size:
        distance = float(np.min(np.abs(t[:, None] - endpoints)))
        if distance < ENDPOINT_CLEARANCE:
            raise PathError(f"integration path {leg.p0} -> {leg.p1} passes within {ENDPOINT_CLEARANCE:g} of an endpoint")
    root = eq.sqrt_R(t)
    jumps = np.abs(np.angle(root[1:] / root[:-1]))
    if float(np.max(jumps, initial=0.0)) >= 0.5 * math.pi:
        raise BranchError(f"sqrt(R) jumps by {float(np.max(jumps)):.3f} rad along {leg.p0} -> {leg.p1}")


def F_at(eq: EquilibriumData, geom: CombGeometry, z: complex) -> complex:
    z = complex(z)
    if z.imag < 0:
        raise DomainError(f"F_at needs Im z >= 0, got z={z!r}")
    z = complex(z.real, abs(z.imag))
    x0 = geom.x0
    if z == complex(x0):
        return complex(geom.eta0)

    endpoint_ok = z.imag == 0.0 and bool(np.any(eq.set.endpoints == z.real))
    legs = build_path(eq, x0, z)
    rtol = potentia_setting("PATH_RTOL")
    scale = eq.set.diameter
    total = complex(geom.eta0)
    for i, leg in enumerate(legs):
        _check_branch(eq, leg, last=i == len(legs) - 1, endpoint_ok=endpoint_ok)

        def integrand(sigma, leg=leg):
            value = eq.dF(leg.point(sigma)) * leg.velocity(sigma)
            return np.array([value.real, value.imag])

        value, err = quad_vec(integrand, 0.0, 1.0, epsabs=1e-15, epsrel=rtol, norm="max",
                              limit=2000, points=_breakpoints(leg, scale))
        total += complex(value[0], value[1])
    return total


def numeric_derivative(eq: EquilibriumData, geom: CombGeometry, step: float = None) -> float:
    """Центральна різниця (F(x0+h) - F(x0-h)) / 2h, h = 1e-6 * ширина смуги."""
    a, b = eq.set.bands[eq.set.band_of(geom.x0)]
    h = step or 1e-6 * (b - a)
    x0 = geom.x0
    return ((F_at(eq, geom, x0 + h) - F_at(eq, geom, x0 - h)) / (2.0 * h)).real


@dataclass(frozen=True)
class CombReport:
    green_deviation: float
    imag_on_set: float
    tooth_base_deviation: float
    derivative_deviation: float
    sample_count: int

    def to_dict(self) -> dict:
        return {
            "green_deviation": self.green_deviation,
            "imag_on_set": self.imag_on_set,
            "tooth_base_deviation": self.tooth_base_deviation,
            "derivative_deviation": self.derivative_deviation,
            "sample_count": self.sample_count,
        }


def check_comb_identities(eq: EquilibriumData, geom: CombGeometry, sample_count: int = 100,
                          seed: int = 0) -> CombReport:
    """Максимальні відхилення тотожностей Im F = g, F(E) real, F(b_j) = u_j, F'(x0) = h."""
    if sample_count < 1:
        raise DomainError(f"sample_count={sample_count!r} must be positive")
    E = eq.set
    rng = np.random.default_rng(seed)
    xs = rng.uniform(E.left - 0.5 * E.diameter, E.right + 0.5 * E.diameter, sample_count)
    ys = E.diameter * 10.0 ** rng.uniform(-3.0, 0.0, sample_count)
    green_dev = max(abs(F_at(eq, geom, complex(x, y)).imag - green_at(eq, complex(x, y))) for x, y in zip(xs, ys))

    per_band = max(2, sample_count // E.m)
    on_set = chebyshev_grid(E, per_band)
    imag_dev = max(abs(F_at(eq, geom, x).imag) for x in on_set)

    base_dev = max(abs(F_at(eq, geom, b) - geom.u[j + 1]) for j, (_a, b) in enumerate(E.bands))

    h = h_at(eq, geom.x0)
    deriv_dev = abs(numeric_derivative(eq, geom) - h) / h

    report = CombReport(green_dev, imag_dev, base_dev, deriv_dev, sample_count)
    logger.info(f"comb identities for {E}, x0={geom.x0!r}: {report.to_dict()}")
    return report
