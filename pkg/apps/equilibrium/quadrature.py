"""
Квадратури для густин з кореневими особливостями на кінцях відрізків.

Заміна t = mid + half*cos(theta) знімає особливість 1/sqrt((t-a)(b-t)):
    int_a^b f(t) / sqrt((t-a)(b-t)) dt = int_0^pi f(t(theta)) dtheta.
"""
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre


@lru_cache(maxsize=32)
def gauss_theta(n: int):
    """Вузли і ваги Гаусса-Лежандра на (0, pi)."""
    xi, w = roots_legendre(int(n))
    theta = 0.5 * np.pi * (xi + 1.0)
    weights = 0.5 * np.pi * w
    theta.setflags(write=False)
    weights.setflags(write=False)
    return theta, weights


def gauss_on(lo: float, hi: float, n: int):
    """Вузли і ваги Гаусса-Лежандра на [lo, hi]."""
    xi, w = roots_legendre(int(n))
    half = 0.5 * (hi - lo)
    return lo + half * (xi + 1.0), half * w


def arcsine_nodes(a: float, b: float, n: int):
    """Вузли t на (a, b) і ваги для int_a^b f(t)/sqrt((t-a)(b-t)) dt."""
    theta, w = gauss_theta(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * np.cos(theta), w


def segment_distance(z: complex, a: float, b: float) -> float:
    """Відстань від точки z до відрізка [a, b] дійсної осі."""
    x, y = z.real, abs(z.imag)
    if x < a:
        return float(np.hypot(a - x, y))
    if x > b:
        return float(np.hypot(x - b, y))
    return float(y)
