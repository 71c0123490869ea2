"""
Рівноважна міра, ємність і функція Гріна для E = U [a_j, b_j].

Густина рівноважної міри
    omega_E(t) = |q(t)| / (pi * sqrt|R(t)|),   R(t) = prod (t - a_i)(t - b_i),
де q - монічний многочлен степеня m-1, однозначно заданий умовами
    int_{b_j}^{a_{j+1}} q(t) / sqrt|R(t)| dt = 0,   j = 1..m-1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial import chebyshev as C
from scipy import integrate
from scipy.optimize import brentq

from Potentia.exceptions import (
    CapacityCrossCheckError, DomainError, QuadratureError, SingularSystemError,
)
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import IntervalSet
from .quadrature import arcsine_nodes, gauss_on, segment_distance

logger = logging.getLogger(__name__)

# смуга вважається "близькою" до z, якщо dist < NEAR_BAND * half-width
NEAR_BAND = 0.1
# вертикальний відрізок для g біля внутрішньої точки E
VERTICAL_SHORTCUT = 0.25
# біля кінця e: шлях e -> z, якщо |z - e| < ENDPOINT_NEAR * (відстань до найближчого іншого кінця)
ENDPOINT_NEAR = 0.1
ENDPOINT_NODES = 40
ENDPOINT_MIN_DISTANCE = 1e-13
MAX_CONDITION = 1e13


@dataclass(frozen=True, eq=False)
class EquilibriumData:
    set: IntervalSet
    gap_poly: Chebyshev
    capacity: float
    log_capacity: float
    gap_zeros: Tuple[float, ...]
    quad_points: int
    # вузли квадратури по смугах та "масові" ваги: int_E phi dmu ~ sum W * phi(t)
    band_nodes: Tuple[np.ndarray, ...] = field(repr=False)
    band_weights: Tuple[np.ndarray, ...] = field(repr=False)

    @property
    def q_coeffs(self) -> np.ndarray:
        """Коефіцієнти q у мономіальному базисі t (за зростанням степеня)."""
        return self.gap_poly.convert(kind=np.polynomial.Polynomial).coef

    @property
    def nodes(self) -> np.ndarray:
        return np.concatenate(self.band_nodes)

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate(self.band_weights)

    def q(self, t):
        return self.gap_poly(t)

    def R(self, t):
        t = np.asarray(t)
        return np.prod(t[..., None] - self.set.endpoints, axis=-1)

    def R_without(self, t, skip):
        """R(t) без множників (t - e) для кінців з номерами skip."""
        e = np.delete(self.set.endpoints, list(skip))
        t = np.asarray(t)
        if e.size == 0:
            return np.ones_like(t, dtype=float if not np.iscomplexobj(t) else complex)
        return np.prod(t[..., None] - e, axis=-1)

    def sqrt_R(self, t):
        """Гілка sqrt(R): добуток головних коренів sqrt(t - e), аналітична у верхній півплощині."""
        t = np.asarray(t, dtype=complex)
        return np.prod(np.sqrt(t[..., None] - self.set.endpoints), axis=-1)

    def dF(self, t):
        """F'(t) = i q(t) / sqrt(R(t)); на E дорівнює pi*omega_E > 0."""
        t = np.asarray(t, dtype=complex)
        return 1j * self.q(t) / self.sqrt_R(t)

    def band_density(self, k: int, theta):
        """omega_E(t) * sqrt((t-a_k)(b_k-t)) при t = mid + half*cos(theta)."""
        a, b = self.set.bands[k]
        t = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(theta)
        other = self.R_without(t, (2 * k, 2 * k + 1))
        return np.abs(self.q(t)) / (np.pi * np.sqrt(np.abs(other)))


def _gap_matrix(E: IntervalSet, n: int):
    """G[j, k] = int_gap_j T_k(s(t)) / sqrt|R(t)| dt, s - нормована змінна носія."""
    m = E.m
    endpoints = E.endpoints
    half_diam = 0.5 * E.diameter
    G = np.empty((m - 1, m))
    for j, (b, a_next) in enumerate(E.gaps):
        t, w = arcsine_nodes(b, a_next, n)
        other = np.delete(endpoints, [2 * j + 1, 2 * j + 2])
        base = w / np.sqrt(np.abs(np.prod(t[:, None] - other, axis=1)))
        s = (t - E.center) / half_diam
        G[j] = base @ C.chebvander(s, m - 1)
    return G


def _solve_gap_poly(E: IntervalSet, n: int) -> Chebyshev:
    m = E.m
    domain = [E.left, E.right]
    if m == 1:
        return Chebyshev([1.0], domain=domain)

    G = _gap_matrix(E, n)
    A, rhs = G[:, :-1], -G[:, -1]
    cond = float(np.linalg.cond(A))
    logger.debug(f"gap system m={m}: cond={cond:.3e}")
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularSystemError(f"gap-condition system is singular (cond={cond:.3e})", condition=cond)
    try:
        d = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"gap-condition system is singular: {exc}", condition=cond) from exc

    # T_{m-1}(s) має старший коефіцієнт 2^{m-2} по s, s = (t - c)/h
    half_diam = 0.5 * E.diameter
    lead = 2.0 ** (m - 2) / half_diam ** (m - 1)
    return Chebyshev(np.append(d, 1.0) / lead, domain=domain)


def _check_gap_residuals(E: IntervalSet, poly: Chebyshev, n: int) -> float:
    worst = 0.0
    endpoints = E.endpoints
    for j, (b, a_next) in enumerate(E.gaps):
        t, w = arcsine_nodes(b, a_next, n)
        other = np.delete(endpoints, [2 * j + 1, 2 * j + 2])
        base = w / np.sqrt(np.abs(np.prod(t[:, None] - other, axis=1)))
        qt = poly(t)
        scale = float(base @ np.abs(qt))
        worst = max(worst, abs(float(base @ qt)) / scale)
    return worst


def _gap_zeros(E: IntervalSet, poly: Chebyshev) -> Tuple[float, ...]:
    zeros = []
    for j, (b, a_next) in enumerate(E.gaps):
        qb, qa = float(poly(b)), float(poly(a_next))
        if qb * qa > 0:
            raise SingularSystemError(f"q has no sign change in gap {j + 1} ({b}, {a_next})")
        zeros.append(brentq(poly, b, a_next, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200))
    return tuple(zeros)


def _band_quadrature(E: IntervalSet, poly: Chebyshev, n: int):
    nodes, weights = [], []
    endpoints = E.endpoints
    for k, (a, b) in enumerate(E.bands):
        t, w = arcsine_nodes(a, b, n)
        other = np.delete(endpoints, [2 * k, 2 * k + 1])
        if other.size:
            root = np.sqrt(np.abs(np.prod(t[:, None] - other, axis=1)))
        else:
            root = np.ones_like(t)
        nodes.append(t)
        weights.append(w * np.abs(poly(t)) / (np.pi * root))
    return tuple(nodes), tuple(weights)


def _band_log_integral(eq: EquilibriumData, k: int, z: complex) -> float:
    """Адаптивно: int_{band k} log|z - t| dmu(t), особливість біля theta0 = arccos(Re z)."""
    a, b = eq.set.bands[k]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)

    def integrand(theta):
        t = mid + half * math.cos(theta)
        return float(eq.band_density(k, theta)) * math.log(abs(z - t))

    c = (z.real - mid) / half
    points = []
    if -1.0 < c < 1.0:
        points.append(math.acos(c))
    # біля кінця log|z - t| змінюється на масштабі theta ~ sqrt(2|z - e|/half)
    for end, to_theta in ((b, lambda s: s), (a, lambda s: math.pi - s)):
        d = abs(z - end) / half
        if 0.0 < d < 1.0:
            points.append(to_theta(math.sqrt(2.0 * d)))
    points = sorted(p for p in set(points) if 0.0 < p < math.pi) or None
    result = integrate.quad(integrand, 0.0, math.pi, points=points, limit=400,
                            epsabs=1e-15, epsrel=1e-13, full_output=1)
    if len(result) > 3:
        raise QuadratureError(f"log-potential of band {k + 1} at z={z!r} did not converge: {result[3]}")
    return result[0]


def _frostman_log_capacity(eq: EquilibriumData) -> float:
    """log cap(E) = U(x*), x* - середина найширшої смуги (потенціал сталий на E)."""
    E = eq.set
    k_star = max(range(E.m), key=lambda k: E.bands[k][1] - E.bands[k][0])
    a, b = E.bands[k_star]
    x_star = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0.0
    for k in range(E.m):
        if k == k_star:
            continue
        total += float(eq.band_weights[k] @ np.log(np.abs(x_star - eq.band_nodes[k])))

    # log|x* - t| = log(half) + log|cos(theta)| на своїй смузі
    mass_k = float(np.sum(eq.band_weights[k_star]))

    def integrand(theta):
        return float(eq.band_density(k_star, theta)) * math.log(abs(math.cos(theta)))

    left, _ = integrate.quad(integrand, 0.0, 0.5 * math.pi, limit=200, epsabs=1e-15, epsrel=1e-13)
    right, _ = integrate.quad(integrand, 0.5 * math.pi, math.pi, limit=200, epsabs=1e-15, epsrel=1e-13)
    return total + mass_k * math.log(half) + left + right


def solve_equilibrium(E: IntervalSet, quad_points: int = None) -> EquilibriumData:
    n = int(quad_points or potentia_setting("QUAD_POINTS"))
    if n < 32:
        raise DomainError(f"quad_points={n} must be >= 32")

    poly = _solve_gap_poly(E, n)
    if E.m > 1:
        residual = _check_gap_residuals(E, poly, n)
        if residual > potentia_setting("GAP_RESIDUAL_TOL"):
            raise QuadratureError(f"gap conditions not met after solve (relative residual {residual:.3e})")
        zeros = _gap_zeros(E, poly)
    else:
        zeros = ()

    nodes, weights = _band_quadrature(E, poly, n)
    mass = math.fsum(float(np.sum(w)) for w in weights)
    if abs(mass - 1.0) > potentia_setting("MASS_TOL"):
        raise QuadratureError(f"equilibrium mass {mass!r} differs from 1; increase quad_points (now {n})")

    draft = EquilibriumData(E, poly, float("nan"), float("nan"), zeros, n, nodes, weights)
    log_cap = _frostman_log_capacity(draft)
    eq = EquilibriumData(E, poly, math.exp(log_cap), log_cap, zeros, n, nodes, weights)
    logger.info(f"equilibrium for {E}: m={E.m} cap={eq.capacity:.15g} gap_zeros={list(zeros)}")
    return eq


def density_at(eq: EquilibriumData, x: float) -> float:
    if not eq.set.interior_contains(x):
        raise DomainError(f"x={x!r} is not an interior point of E; the density is defined on Int(E) only")
    return float(abs(eq.q(x)) / (np.pi * math.sqrt(abs(float(eq.R(x))))))


def mass_of(eq: EquilibriumData, a: float, b: float) -> float:
    """mu_E([a, b] & E)."""
    if a > b:
        raise DomainError(f"mass_of: a={a!r} > b={b!r}")
    total = 0.0
    for k, (ak, bk) in enumerate(eq.set.bands):
        lo, hi = max(a, ak), min(b, bk)
        if lo >= hi:
            continue
        if lo == ak and hi == bk:
            total += float(np.sum(eq.band_weights[k]))
            continue
        mid, half = 0.5 * (ak + bk), 0.5 * (bk - ak)
        theta_hi = math.acos(min(1.0, max(-1.0, (hi - mid) / half)))
        theta_lo = math.acos(min(1.0, max(-1.0, (lo - mid) / half)))
        theta, w = gauss_on(theta_hi, theta_lo, eq.quad_points)
        total += float(w @ eq.band_density(k, theta))
    return min(1.0, max(0.0, total))


def potential_at(eq: EquilibriumData, z: complex) -> float:
    """U(z) = int log|z - t| dmu_E(t)."""
    z = complex(z)
    total = 0.0
    for k, (a, b) in enumerate(eq.set.bands):
        if segment_distance(z, a, b) < NEAR_BAND * 0.5 * (b - a):
            total += _band_log_integral(eq, k, z)
        else:
            total += float(eq.band_weights[k] @ np.log(np.abs(z - eq.band_nodes[k])))
    return total


def _vertical_green(eq: EquilibriumData, x: float, y: float) -> float:
    """g(x + iy) = Re int_x^{x+iy} q/sqrt(R) dt для внутрішньої x і малого y."""
    s, w = gauss_on(0.0, y, 32)
    # g = Im int F'(x+is) i ds = Re int F'(x+is) ds
    return float(np.real(w @ eq.dF(x + 1j * s)))


def _endpoint_green(eq: EquilibriumData, i: int, z: complex) -> float:
    """
    g(z) = Im int_e^z F'(t) dt по відрізку від кінця e = endpoints[i].

    t = e + (z - e) s^2 знімає особливість 1/sqrt(t - e):
    F'(t) dt = 2i q(t) sqrt(z - e) / prod_{j != i} sqrt(t - e_j) ds, s in [0, 1].
    """
    endpoints = eq.set.endpoints
    e = endpoints[i]
    s, w = gauss_on(0.0, 1.0, ENDPOINT_NODES)
    t = e + (z - e) * s ** 2
    others = np.prod(np.sqrt(t[:, None] - np.delete(endpoints, i).astype(complex)), axis=-1)
    integral = 2j * np.sqrt(complex(z - e)) * (w @ (eq.q(t) / others))
    return float(integral.imag)


def _nearest_endpoint(E: IntervalSet, z: complex):
    """(номер кінця, |z - e|, відстань від e до найближчого іншого кінця)."""
    endpoints = E.endpoints
    i = int(np.argmin(np.abs(z - endpoints)))
    spacing = float(np.min(np.abs(np.delete(endpoints, i) - endpoints[i])))
    return i, abs(z - endpoints[i]), spacing


def green_at(eq: EquilibriumData, z: complex) -> float:
    z = complex(z)
    E = eq.set
    if z.imag == 0.0 and E.contains(z.real):
        return 0.0
    x, y = z.real, abs(z.imag)
    i, distance, spacing = _nearest_endpoint(E, complex(x, y))
    if distance < ENDPOINT_MIN_DISTANCE:
        raise QuadratureError(
            f"z={z!r} is {distance:.3e} from the endpoint {E.endpoints[i]!r}; "
            f"green_at needs at least {ENDPOINT_MIN_DISTANCE:g}"
        )
    if distance < ENDPOINT_NEAR * spacing:
        return max(0.0, _endpoint_green(eq, i, complex(x, y)))
    for a, b in E.bands:
        if a < x < b and 0.0 < y <= VERTICAL_SHORTCUT * min(x - a, b - x):
            return max(0.0, _vertical_green(eq, x, y))
    value = potential_at(eq, z) - eq.log_capacity
    return max(0.0, value)


def green_on_ray(eq: EquilibriumData, x: float) -> float:
    """g(x) для дійсного x > b_m як int_{b_m}^x q(t)/sqrt(R(t)) dt (незалежно від потенціалу)."""
    E = eq.set
    b_m = E.right
    if not x > b_m:
        raise DomainError(f"green_on_ray needs x > {b_m!r}, got {x!r}")
    last = 2 * E.m - 1

    def smooth(t):
        return float(eq.q(t)) / math.sqrt(float(eq.R_without(t, (last,))))

    result = integrate.quad(smooth, b_m, x, weight="alg", wvar=(-0.5, 0.0),
                            limit=400, epsabs=1e-14, epsrel=1e-13, full_output=1)
    if len(result) > 3:
        raise QuadratureError(f"green_on_ray at x={x!r} did not converge: {result[3]}")
    return result[0]


def capacity_of(eq: EquilibriumData) -> float:
    """cap(E) з перевіркою: exp(U(x) - g(x)) у двох далеких точках променя x > b_m."""
    E = eq.set
    tol = potentia_setting("CAPACITY_XCHECK_TOL")
    estimates = []
    for factor in (1e3, 1e4):
        x = E.center + factor * E.diameter
        estimates.append(potential_at(eq, complex(x)) - green_on_ray(eq, x))
    for log_cap in estimates:
        if abs(math.expm1(log_cap - eq.log_capacity)) > tol:
            raise CapacityCrossCheckError(
                f"capacity cross-check failed: Frostman {eq.capacity!r} vs far field {math.exp(log_cap)!r}"
            )
    logger.debug(f"capacity cross-check ok: {[math.exp(v) for v in estimates]}")
    return eq.capacity
