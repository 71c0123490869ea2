"""
Дискретний алгоритм Ремеза з багатоточковою заміною.

Многочлен зберігається в базисі Чебишова носія [a_1, b_m], s = (x - c)/h.
Після збіжності на сітці екстремуми уточнюються (r'(x) = 0) і додаються до
сітки, доки max|r| на континуумі не зрівняється з рівневою похибкою.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.optimize import brentq

from Potentia.exceptions import ExchangeCyclingError, SingularSystemError

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e14
POLISH_ROUNDS = 8
TIE_TOL = 1e-15


@dataclass
class Reference:
    """Поточна опорна множина та розв'язок рівневої системи."""
    x: np.ndarray
    coefficients: np.ndarray
    levelled: float


class PowerTarget:
    """f(x) = |x - x0|^alpha та її похідна."""

    def __init__(self, x0: float, alpha: float):
        self.x0 = float(x0)
        self.alpha = float(alpha)

    def __call__(self, x):
        return np.abs(np.asarray(x, dtype=float) - self.x0) ** self.alpha

    def derivative(self, x):
        d = np.asarray(x, dtype=float) - self.x0
        return self.alpha * np.sign(d) * np.abs(d) ** (self.alpha - 1.0)


class RemezEngine:

    def __init__(self, target: PowerTarget, degree: int, carrier: Tuple[float, float],
                 tol: float, max_iter: int, extended_from: int):
        self.f = target
        self.n = int(degree)
        self.center = 0.5 * (carrier[0] + carrier[1])
        self.half = 0.5 * (carrier[1] - carrier[0])
        self.tol = tol
        self.max_iter = max_iter
        self.extended = self.n > extended_from
        self.iterations = 0
        self.floor = 0.0

    def _s(self, x):
        return (np.asarray(x, dtype=float) - self.center) / self.half

    def p(self, coefficients, x):
        return C.chebval(self._s(x), coefficients)

    def residual(self, coefficients, x):
        return self.f(x) - self.p(coefficients, x)

    def residual_derivative(self, coefficients, x):
        dp = C.chebval(self._s(x), C.chebder(coefficients)) / self.half
        return self.f.derivative(x) - dp

    # -- рівнева система -------------------------------------------------

    def level(self, x: np.ndarray) -> Reference:
        """Розв'язує sum c_k T_k(s_i) + (-1)^i h = f(x_i), i = 0..n+1."""
        n = self.n
        A = np.empty((n + 2, n + 2))
        A[:, :n + 1] = C.chebvander(self._s(x), n)
        A[:, n + 1] = (-1.0) ** np.arange(n + 2)
        b = self.f(x)
        cond = float(np.linalg.cond(A))
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise SingularSystemError(f"levelling system for n={n} is ill-conditioned (cond={cond:.3e})", condition=cond)
        try:
            sol = np.linalg.solve(A, b)
            if self.extended:
                sol = self._refine(A, b, sol)
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError(f"levelling system for n={n} is singular: {exc}", condition=cond) from exc
        return Reference(np.array(x, dtype=float), sol[:n + 1], float(sol[n + 1]))

    @staticmethod
    def _refine(A, b, sol, steps: int = 2):
        """Ітеративне уточнення з нев'язкою в np.longdouble."""
        A_ext = A.astype(np.longdouble)
        b_ext = b.astype(np.longdouble)
        for _ in range(steps):
            r = b_ext - A_ext @ sol.astype(np.longdouble)
            sol = sol + np.linalg.solve(A, r.astype(float))
        return sol

    # -- заміна ------------------------------------------------------------

    def exchange(self, grid: np.ndarray, r: np.ndarray, ref: Reference) -> np.ndarray:
        """Нова опорна множина: максимуми серій одного знаку, n+2 точки з чергуванням."""
        # точки з r = 0 не належать жодній серії
        nz = np.flatnonzero(r != 0.0)
        signs = np.sign(r[nz])
        starts = np.flatnonzero(np.concatenate(([True], signs[1:] != signs[:-1])))
        ends = np.append(starts[1:], len(nz))
        picks = [int(nz[s + int(np.argmax(np.abs(r[nz[s:e]])))]) for s, e in zip(starts, ends)]

        threshold = abs(ref.levelled) * (1.0 - 1e-9)
        kept = self._merge([i for i in picks if abs(r[i]) >= threshold], r)
        if len(kept) < self.n + 2:
            kept = self._merge(picks, r)

        while len(kept) > self.n + 2:
            # відкидаємо менший кінець; при рівності - правий
            if abs(r[kept[0]]) > abs(r[kept[-1]]):
                kept.pop()
            elif abs(r[kept[0]]) < abs(r[kept[-1]]):
                kept.pop(0)
            else:
                kept.pop()
        if len(kept) < self.n + 2:
            logger.debug(f"remez n={self.n}: {len(kept)} alternating runs, single-point exchange")
            return self.single_exchange(grid, r, ref)
        return grid[kept]

    @staticmethod
    def single_exchange(grid: np.ndarray, r: np.ndarray, ref: Reference) -> np.ndarray:
        """Класична заміна однієї точки: глобальний максимум |r| входить, чергування зберігається."""
        x = np.array(ref.x, dtype=float)
        # знак r в опорних точках: (-1)^i sign(h); при h = 0 беремо (-1)^i
        sigma = (-1.0) ** np.arange(len(x)) * (-1.0 if ref.levelled < 0 else 1.0)
        m = int(np.argmax(np.abs(r)))
        xm, sm = grid[m], np.sign(r[m])
        if np.any(x == xm):
            raise ExchangeCyclingError(f"maximum of |r| at x={xm!r} is already a reference point")
        j = int(np.searchsorted(x, xm))
        if j == 0:
            if sm == sigma[0]:
                x[0] = xm
            else:
                x = np.concatenate(([xm], x[:-1]))
        elif j == len(x):
            if sm == sigma[-1]:
                x[-1] = xm
            else:
                x = np.concatenate((x[1:], [xm]))
        elif sm == sigma[j - 1]:
            x[j - 1] = xm
        else:
            x[j] = xm
        return x

    @staticmethod
    def _merge(indices, r):
        out = []
        for i in indices:
            if out and np.sign(r[out[-1]]) == np.sign(r[i]):
                # сусіди одного знаку: лишаємо більший, при рівності (1e-15) лівий
                if abs(r[i]) > abs(r[out[-1]]) + TIE_TOL:
                    out[-1] = i
                continue
            out.append(i)
        return out

    # -- уточнення екстремумів --------------------------------------------

    def polish(self, coefficients, grid: np.ndarray, points: np.ndarray, band_ids: np.ndarray):
        """Шукає нулі r' у сусідніх з опорними точками клітинках сітки."""
        out = []
        idx = np.searchsorted(grid, points)
        for i in idx:
            x = grid[i]
            if x == self.f.x0:
                out.append(x)
                continue
            best, best_val = x, abs(float(self.residual(coefficients, x)))
            for j in (i - 1, i + 1):
                if j < 0 or j >= len(grid) or band_ids[j] != band_ids[i]:
                    continue
                lo, hi = min(x, grid[j]), max(x, grid[j])
                if lo < self.f.x0 < hi:
                    continue
                d_lo = float(self.residual_derivative(coefficients, lo))
                d_hi = float(self.residual_derivative(coefficients, hi))
                if not d_lo * d_hi < 0:
                    continue
                root = brentq(lambda t: float(self.residual_derivative(coefficients, t)), lo, hi,
                              xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
                val = abs(float(self.residual(coefficients, root)))
                if val > best_val:
                    best, best_val = root, val
            out.append(best)
        return np.array(out)

    # -- головний цикл -----------------------------------------------------

    def _discrete(self, grid: np.ndarray, reference: np.ndarray) -> Reference:
        while True:
            if self.iterations >= self.max_iter:
                raise ExchangeCyclingError(f"Remez exchange for n={self.n} did not converge in {self.max_iter} iterations")
            self.iterations += 1
            ref = self.level(reference)
            r = self.residual(ref.coefficients, grid)
            worst = float(np.max(np.abs(r)))
            h = abs(ref.levelled)
            logger.debug(f"remez n={self.n} it={self.iterations}: |h|={h:.17g} max|r|={worst:.17g}")
            if worst <= max(h * (1.0 + self.tol), self.floor):
                return ref
            reference = self.exchange(grid, r, ref)

    def start_reference(self, grid: np.ndarray) -> np.ndarray:
        """
        Екстремуми T_{n+2} носія без правого кінця, притягнуті до сітки.

        Симетрична опора з n+2 точок для парної f на симетричній E дає h = 0,
        тому беремо n+2 з n+3 вузлів.
        """
        n, N = self.n, len(grid)
        nodes = self.center - self.half * np.cos(np.pi * np.arange(n + 2) / (n + 2))
        idx = np.unique(np.clip(np.searchsorted(grid, nodes), 0, N - 1))
        if len(idx) < n + 2:
            # вузли в лакунах злипаються на кінцях смуг
            idx = np.unique(np.round(np.linspace(0, N - 1, n + 3)).astype(int))[:n + 2]
        return grid[idx]

    def run(self, grid: np.ndarray, band_ids: np.ndarray):
        """Повертає (Reference, похибка на континуумі, точки чергування)."""
        n = self.n
        reference = self.start_reference(grid)
        # f може бути многочленом на E (напр. alpha=1, x0 = a_1): абсолютний поріг
        self.floor = 1e-14 * max(1.0, float(np.max(self.f(grid))))

        for _round in range(POLISH_ROUNDS):
            ref = self._discrete(grid, reference)
            polished = self.polish(ref.coefficients, grid, ref.x, band_ids)
            r_grid = self.residual(ref.coefficients, grid)
            r_pol = self.residual(ref.coefficients, polished)
            error = max(float(np.max(np.abs(r_grid))), float(np.max(np.abs(r_pol))))
            h = abs(ref.levelled)
            if error <= max(h * (1.0 + self.tol), self.floor):
                return ref, error, polished
            new = np.setdiff1d(polished, grid)
            if new.size == 0:
                return ref, error, polished
            grid, band_ids = _insert(grid, band_ids, new)
            reference = np.unique(polished)
            if reference.size < n + 2:
                reference = ref.x
        logger.warning(f"remez n={n}: continuum error {error:.17g} vs levelled {h:.17g} after {POLISH_ROUNDS} rounds")
        return ref, error, polished


def _insert(grid, band_ids, points):
    x = np.concatenate([grid, points])
    ids = np.concatenate([band_ids, np.full(len(points), -1)])
    order = np.argsort(x, kind="stable")
    x, ids = x[order], ids[order]
    # номер смуги нової точки - як у лівого сусіда (він завжди з тієї ж смуги)
    for i in np.flatnonzero(ids < 0):
        ids[i] = ids[i - 1] if i > 0 else ids[i + 1]
    return x, ids

