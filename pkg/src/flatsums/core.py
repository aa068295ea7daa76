"""Frequency sets and pointwise/grid evaluation of their sine/cosine sums."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.fft

from .errors import DomainError, ResourceError
from .reduction import (MAX_EXACT_PRODUCT, cos_sum_scalar, sin_sum_scalar,
                        trig_sums_at)

TWO_PI = 2.0 * math.pi

MAX_FREQ = 1 << 46          # keeps lambda*x exactly splittable pre-reduction
MAX_GRID_POINTS = 1 << 28
MAX_LIPSCHITZ = 1 << 63


class SumKind(enum.Enum):
    SINE = "sine"
    COSINE = "cosine"


@dataclass(frozen=True)
class FrequencySet:
    """Strictly increasing distinct positive integer frequencies."""

    freqs: tuple[int, ...]

    def __init__(self, freqs: Iterable[int]):
        fr = tuple(int(v) for v in freqs)
        if len(fr) < 1:
            raise DomainError("frequency set must contain at least one entry")
        prev = 0
        for v in fr:
            if v <= prev:
                raise DomainError(
                    "frequencies must be strictly increasing positive integers"
                )
            if v > MAX_FREQ:
                raise DomainError(f"frequency {v} exceeds the 2^46 cap")
            prev = v
        object.__setattr__(self, "freqs", fr)

    @property
    def n(self) -> int:
        return len(self.freqs)

    @property
    def lambda_max(self) -> int:
        return self.freqs[-1]

    @cached_property
    def _values(self) -> np.ndarray:
        return np.asarray(self.freqs, dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.ones(len(self.freqs), dtype=np.float64)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, multiplicities) as int64/float64 arrays."""
        return self._values, self._weights


@dataclass(frozen=True)
class PerturbedSet:
    """Integer multiset with per-value multiplicity at most 2."""

    entries: tuple[tuple[int, int], ...]  # (value, multiplicity)

    def __init__(self, entries: Iterable[tuple[int, int]]):
        ent = tuple((int(v), int(m)) for v, m in entries)
        if not ent:
            raise DomainError("perturbed set must be non-empty")
        prev = 0
        for v, m in ent:
            if v <= prev:
                raise DomainError("perturbed values must be strictly increasing")
            if v > MAX_FREQ:
                raise DomainError(f"value {v} exceeds the 2^46 cap")
            if m not in (1, 2):
                raise DomainError("multiplicity must be 1 or 2")
            prev = v
        object.__setattr__(self, "entries", ent)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def lambda_max(self) -> int:
        return self.entries[-1][0]

    @cached_property
    def _values(self) -> np.ndarray:
        return np.asarray([v for v, _ in self.entries], dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.asarray([m for _, m in self.entries], dtype=np.float64)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._values, self._weights

    def collisions(self) -> list[tuple[int, int]]:
        """Values hit by two perturbed frequencies."""
        return [(v, m) for v, m in self.entries if m == 2]


AnySet = Union[FrequencySet, PerturbedSet]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid a, a+h, ..., b with h = (b-a)/(n_points-1)."""

    a: float
    b: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("grid endpoints must be finite")
        if not (0.0 <= self.a < self.b <= TWO_PI):
            raise DomainError("grid must satisfy 0 <= a < b <= 2*pi")
        if self.n_points < 2:
            raise DomainError("grid needs at least 2 points")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n_points, dtype=np.float64)


def lipschitz_bound(s: AnySet) -> int:
    """Exact integer sum of frequencies with multiplicity (= sup |f'|)."""
    if isinstance(s, PerturbedSet):
        total = sum(v * m for v, m in s.entries)
    else:
        total = sum(s.freqs)
    if total >= MAX_LIPSCHITZ:
        raise ResourceError("frequency sum exceeds 2^63")
    return total


def second_moment(s: AnySet) -> int:
    """Exact sum of squared frequencies with multiplicity (= sup |f''|)."""
    if isinstance(s, PerturbedSet):
        return sum(v * v * m for v, m in s.entries)
    return sum(v * v for v in s.freqs)


def _check_point(s: AnySet, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("evaluation point must be finite")
    if abs(x) * s.lambda_max >= MAX_EXACT_PRODUCT:
        raise DomainError("lambda*x too large for exact argument reduction")
    return x


def eval_point(s: AnySet, kind: SumKind, x: float) -> float:
    """sum_j m_j sin(lambda_j x) (or cos), compensated to ~1e-15*N."""
    x = _check_point(s, x)
    values, weights = s.arrays()
    if kind is SumKind.SINE:
        return sin_sum_scalar(values, weights, x)
    return cos_sum_scalar(values, weights, x)


def circle_values(s: AnySet, kind: SumKind, g: int,
                  derivative: bool = False) -> np.ndarray:
    """Trig sum sampled on the uniform circle grid x_k = 2*pi*k/g, k=0..g-1.

    One sparse-coefficient inverse FFT instead of g*N sin calls: the bin
    lambda mod g aliases exp(2*pi*i*lambda*k/g) exactly.  With
    ``derivative`` the weights become m*lambda, yielding f' samples.
    """
    if g < 1 or g > MAX_GRID_POINTS:
        raise ResourceError(f"circle grid of {g} points out of range")
    values, weights = s.arrays()
    coeff = np.zeros(g, dtype=np.complex128)
    wts = weights * values.astype(np.float64) if derivative else weights
    np.add.at(coeff, values % g, wts)
    z = scipy.fft.ifft(coeff, overwrite_x=True)
    z *= g
    if kind is SumKind.SINE:
        # f = Im F ; f' = Re of the lambda-weighted transform
        return np.ascontiguousarray(z.real if derivative else z.imag)
    # cosine: f = Re F ; f' = -Im of the lambda-weighted transform
    return np.ascontiguousarray(-z.imag if derivative else z.real)


def _fft_grid_ok(s: AnySet, grid: GridSpec) -> bool:
    if grid.a != 0.0 or grid.b != float(TWO_PI) or grid.n_points < (1 << 14):
        return False
    # FFT samples exact rationals 2*pi*k/g; eval_point samples fl(a+i*h).
    # The mismatch is below L * 4e-15; keep the transform only when that
    # fits well inside the 1e-8*N agreement contract.
    return lipschitz_bound(s) * 4e-15 <= 1e-9 * s.n


def eval_grid(s: AnySet, kind: SumKind, grid: GridSpec) -> np.ndarray:
    """Per-point sums on the grid, agreeing with eval_point to 1e-8*N."""
    if grid.n_points > MAX_GRID_POINTS:
        raise ResourceError(f"grid of {grid.n_points} points exceeds 2^28")
    if _fft_grid_ok(s, grid):
        vals = circle_values(s, kind, grid.n_points - 1)
        out = np.empty(grid.n_points, dtype=np.float64)
        out[:-1] = vals
        out[-1] = eval_point(s, kind, grid.b)
        return out
    values, weights = s.arrays()
    _check_point(s, grid.b)
    return trig_sums_at(values, weights, grid.points(),
                        want_sine=(kind is SumKind.SINE))


def parseval_floor(n: int) -> float:
    """sqrt(n/2): every n-frequency sine sum has sup at least this.

    The mean square of the sum over the circle is n/2 by orthogonality,
    so the sup cannot be smaller than its square root.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.sqrt(n / 2.0)
