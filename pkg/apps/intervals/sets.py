"""
Множини E = [a_1, b_1] U ... U [a_m, b_m] на дійсній прямій.

IntervalSet незмінний; усі операції - чисті функції, тому значення можна
спокійно ділити між потоками і воркерами.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from Potentia.exceptions import DomainError, InputError

Band = Tuple[float, float]


@dataclass(frozen=True)
class IntervalSet:
    bands: Tuple[Band, ...]

    def __post_init__(self):
        if not self.bands:
            raise InputError("IntervalSet: bands must be nonempty")
        prev_b = -math.inf
        for a, b in self.bands:
            if not a < b:
                raise InputError(f"IntervalSet: band ({a}, {b}) has a >= b")
            if not prev_b < a:
                raise InputError(f"IntervalSet: band ({a}, {b}) overlaps or touches its left neighbour")
            prev_b = b

    @property
    def m(self) -> int:
        return len(self.bands)

    @property
    def left(self) -> float:
        return self.bands[0][0]

    @property
    def right(self) -> float:
        return self.bands[-1][1]

    @property
    def carrier(self) -> Band:
        return (self.left, self.right)

    @property
    def diameter(self) -> float:
        return self.right - self.left

    @property
    def center(self) -> float:
        return 0.5 * (self.left + self.right)

    @property
    def total_length(self) -> float:
        return math.fsum(b - a for a, b in self.bands)

    @property
    def gaps(self) -> Tuple[Band, ...]:
        return tuple((self.bands[j][1], self.bands[j + 1][0]) for j in range(self.m - 1))

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([e for band in self.bands for e in band], dtype=float)

    def contains(self, x: float) -> bool:
        return any(a <= x <= b for a, b in self.bands)

    def interior_contains(self, x: float) -> bool:
        return any(a < x < b for a, b in self.bands)

    def band_of(self, x: float) -> int:
        """Номер (з нуля) смуги, що містить x; DomainError, якщо x не в E."""
        for k, (a, b) in enumerate(self.bands):
            if a <= x <= b:
                return k
        raise DomainError(f"x0={x!r} is not in E={self.to_spec()}")

    def is_subset_of(self, other: "IntervalSet") -> bool:
        return all(
            any(oa <= a and b <= ob for oa, ob in other.bands)
            for a, b in self.bands
        )

    def affine(self, s: float, t: float) -> "IntervalSet":
        """Образ s*E + t, s > 0."""
        if not s > 0:
            raise DomainError(f"scale s={s!r} must be positive")
        return IntervalSet(tuple((s * a + t, s * b + t) for a, b in self.bands))

    def to_spec(self) -> str:
        return ";".join(f"{a!r},{b!r}" for a, b in self.bands)

    def __str__(self):
        return " U ".join(f"[{a:g}, {b:g}]" for a, b in self.bands)


def normalize(raw_bands: Iterable[Sequence[float]]) -> IntervalSet:
    """Сортує смуги і зливає ті, що перетинаються або торкаються."""
    pairs = []
    for pair in raw_bands:
        a, b = float(pair[0]), float(pair[1])
        if not (math.isfinite(a) and math.isfinite(b)):
            raise InputError(f"band ({a}, {b}) is not finite")
        if not a < b:
            raise InputError(f"band ({a}, {b}) has a >= b")
        pairs.append((a, b))
    if not pairs:
        raise InputError("empty list of bands")

    pairs.sort()
    merged: List[List[float]] = [list(pairs[0])]
    for a, b in pairs[1:]:
        last = merged[-1]
        if a <= last[1]:
            last[1] = max(last[1], b)
        else:
            merged.append([a, b])
    return IntervalSet(tuple((a, b) for a, b in merged))


def contains(E: IntervalSet, x: float) -> bool:
    return E.contains(x)


def interior_contains(E: IntervalSet, x: float) -> bool:
    return E.interior_contains(x)


def to_unit(E: IntervalSet) -> Tuple[IntervalSet, float, float]:
    """Афінно переводить носій [a_1, b_m] у [-1, 1].

    Повертає (E', s, t) з E' = s*E + t.
    """
    s = 2.0 / E.diameter
    t = -E.center * s
    if E.carrier == (-1.0, 1.0):
        return E, 1.0, 0.0
    unit = E.affine(s, t)
    # кінці носія рівно -1 і 1, щоб не тягнути похибку округлення
    bands = list(unit.bands)
    bands[0] = (-1.0, bands[0][1])
    bands[-1] = (bands[-1][0], 1.0)
    return IntervalSet(tuple(bands)), s, t


def chebyshev_grid(E: IntervalSet, points_per_band: int) -> np.ndarray:
    """Косинусна сітка на кожній смузі, кінці смуг включно, зростаюча."""
    p = int(points_per_band)
    if p < 2:
        raise DomainError(f"points_per_band={points_per_band!r} must be >= 2")
    # sin(pi*j / (2(p-1))), j = -(p-1), -(p-1)+2, ..., p-1: симетрично і точний 0 при непарному p
    j = np.arange(-(p - 1), p, 2, dtype=float)
    unit = np.sin(np.pi * j / (2.0 * (p - 1)))
    chunks = []
    for a, b in E.bands:
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        x = mid + half * unit
        x[0], x[-1] = a, b
        chunks.append(x)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class ExhaustionSequence:
    levels: Tuple[IntervalSet, ...]
    description: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.levels:
            raise InputError("ExhaustionSequence needs at least one level")
        for j in range(len(self.levels) - 1):
            if not self.levels[j + 1].is_subset_of(self.levels[j]):
                raise InputError(f"level {j + 1} is not nested in level {j}")

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, j):
        return self.levels[j]

    def __iter__(self):
        return iter(self.levels)


def cantor_exhaustion(ratio: float, levels: int, carrier: Band = (0.0, 1.0)) -> ExhaustionSequence:
    """Рівні 0..levels: з кожної смуги вирізаємо центральну частку ratio."""
    if not 0.0 < ratio < 1.0:
        raise DomainError(f"ratio={ratio!r} must lie in (0, 1)")
    if levels < 0:
        raise DomainError(f"levels={levels!r} must be >= 0")
    a0, b0 = float(carrier[0]), float(carrier[1])
    current = IntervalSet(((a0, b0),))
    out = [current]
    keep = 0.5 * (1.0 - ratio)
    for _ in range(levels):
        bands = []
        for a, b in current.bands:
            width = b - a
            bands.append((a, a + keep * width))
            bands.append((b - keep * width, b))
        current = IntervalSet(tuple(bands))
        out.append(current)
    return ExhaustionSequence(
        tuple(out),
        {"kind": "cantor", "ratio": ratio, "levels": levels, "carrier": [a0, b0]},
    )


def constant_exhaustion(E: IntervalSet, levels: int) -> ExhaustionSequence:
    """Тривіальна послідовність E, E, ..., E (levels + 1 рівнів)."""
    return ExhaustionSequence(
        tuple(E for _ in range(levels + 1)),
        {"kind": "constant", "levels": levels, "set": E.to_spec()},
    )
