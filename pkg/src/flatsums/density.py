"""Conjugate Dirichlet kernel and frequency-density bounds for flat sums.

D*_m(x) = sum_{j=1}^m sin(jx) acts as a counting probe: pairing a sine sum
f with D*_m over the circle returns exactly #{lambda_j <= m} (orthogonality
of the sine frequencies), while Hoelder bounds the pairing by
sup|f| * ||D*_m||_L1.  The L1 norm grows only like log m, so a sum with a
small sup cannot keep many frequencies below any cutoff -- and inverting
the bound gives a certified lower bound on how far out the Nth frequency
must sit (exponentially far in the flat regime).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AnySet, SumKind, TWO_PI, circle_values
from .errors import CutoffRangeError, DomainError, ResourceError

__all__ = ["MAX_KERNEL_ORDER", "DensityReport", "conj_dirichlet_eval",
           "conj_dirichlet_l1", "conj_dirichlet_l1_upper",
           "sine_inner_count", "density_upper_bound", "min_cutoff_for_count",
           "make_density_report"]

MAX_KERNEL_ORDER = 1 << 31
_CLOSED_FORM_FLOOR = 1e-6    # |sin(x/2)| below this: closed form cancels badly
_QUAD_HYBRID_CAP = 8192      # largest order the cutoff search integrates exactly
_DEFAULT_QUAD_BUDGET = 1 << 26


def _check_order(m: int) -> int:
    m = int(m)
    if not (1 <= m <= MAX_KERNEL_ORDER):
        raise DomainError("kernel order must lie in [1, 2^31]")
    return m


def _direct_sum(m: int, x: float) -> float:
    if x == 0.0:
        return 0.0
    total = 0.0
    step = 1 << 22
    for lo in range(1, m + 1, step):
        j = np.arange(lo, min(m + 1, lo + step), dtype=np.float64)
        total += float(np.sum(np.sin(j * x)))
    return total


def conj_dirichlet_eval(m: int, x: float) -> float:
    """sum_{j=1}^m sin(jx) via sin(mx/2)sin((m+1)x/2)/sin(x/2).

    Near the zeros of sin(x/2) the quotient cancels, so term-by-term
    summation takes over there (O(m), but the region is ~1e-6 wide).
    """
    m = _check_order(m)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("evaluation point must be finite")
    s2 = math.sin(0.5 * x)
    if abs(s2) < _CLOSED_FORM_FLOOR:
        return _direct_sum(m, x)
    return math.sin(0.5 * m * x) * math.sin(0.5 * (m + 1) * x) / s2


def _dstar_grid(m: int, xs: np.ndarray) -> np.ndarray:
    s2 = np.sin(0.5 * xs)
    small = np.abs(s2) < _CLOSED_FORM_FLOOR
    out = np.empty_like(xs)
    big = ~small
    out[big] = np.sin(0.5 * m * xs[big]) * np.sin(0.5 * (m + 1) * xs[big]) / s2[big]
    for i in np.nonzero(small)[0]:
        out[i] = _direct_sum(m, float(xs[i]))
    return out


def conj_dirichlet_l1(m: int, quad_tol: float = 1e-8,
                      budget: int = _DEFAULT_QUAD_BUDGET) -> float:
    """(1/pi) * integral over [0, 2pi] of |D*_m|, to ``quad_tol`` absolute.

    |D*_m(2pi - x)| = |D*_m(x)|, so the integral runs over [0, pi] and
    doubles.  Composite adaptive Simpson normalizes panel resolution to the
    oscillation: at least 4m base panels, each refined until its 3-vs-5
    point discrepancy fits its width-proportional share of the tolerance.
    """
    m = _check_order(m)
    if not quad_tol > 0.0:
        raise DomainError("quad_tol must be positive")
    n0 = max(4 * m, 16)
    edges = np.linspace(0.0, math.pi, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    total = 0.0
    evals = 0
    for _ in range(64):
        evals += 5 * lo.size
        if evals > budget:
            raise ResourceError("quadrature budget exhausted")
        mid = 0.5 * (lo + hi)
        x14 = 0.5 * (lo + mid)
        x34 = 0.5 * (mid + hi)
        f0 = np.abs(_dstar_grid(m, lo))
        f1 = np.abs(_dstar_grid(m, x14))
        f2 = np.abs(_dstar_grid(m, mid))
        f3 = np.abs(_dstar_grid(m, x34))
        f4 = np.abs(_dstar_grid(m, hi))
        h = hi - lo
        s1 = h / 6.0 * (f0 + 4.0 * f2 + f4)
        s2 = h / 12.0 * (f0 + 4.0 * f1 + 2.0 * f2 + 4.0 * f3 + f4)
        err = np.abs(s2 - s1) / 15.0
        ok = err <= 0.5 * quad_tol * h / math.pi
        total += float((s2[ok] + (s2[ok] - s1[ok]) / 15.0).sum())
        lo, hi = lo[~ok], hi[~ok]
        if lo.size == 0:
            break
        mid = 0.5 * (lo + hi)
        lo = np.concatenate((lo, mid))
        hi = np.concatenate((mid, hi))
    else:
        raise ResourceError("quadrature failed to settle within 64 rounds")
    return 2.0 * total / math.pi


def conj_dirichlet_l1_upper(m: int) -> float:
    """Closed-form upper bound on conj_dirichlet_l1, any order, O(1) cost.

    |D*_m| <= min(m, 1/sin(x/2)); integrating the envelope gives
    (2/pi) * (m*x0 - 2 ln tan(x0/4)) with x0 = 2 asin(1/m).  Same log-m
    growth as the true norm, roughly twice the slope.
    """
    m = _check_order(m)
    if m == 1:
        return 2.0
    x0 = 2.0 * math.asin(1.0 / m)
    return (2.0 / math.pi) * (m * x0 - 2.0 * math.log(math.tan(0.25 * x0)))


def sine_inner_count(s: AnySet, m: int,
                     max_grid: int = 1 << 26) -> tuple[int, float]:
    """(exact #{lambda_j <= m}, numerical (1/pi) <f, D*_m> over the circle).

    The integrand is a trig polynomial of degree lambda_max + m, so the
    rectangle rule on lambda_max + m + 1 uniform points integrates it
    exactly; orthogonality makes both outputs agree to roundoff.
    """
    m = _check_order(m)
    values, weights = s.arrays()
    count = int(weights[values <= m].sum())
    g = int(s.lambda_max) + m + 1
    if g > max_grid:
        raise ResourceError(f"inner-product grid of {g} points exceeds the cap")
    f = circle_values(s, SumKind.SINE, g)
    xs = (TWO_PI / g) * np.arange(g, dtype=np.float64)
    d = _dstar_grid(m, xs)
    numeric = 2.0 * float(np.mean(f * d))
    return count, numeric


def density_upper_bound(m1_value: float, m: int,
                        quad_tol: float = 1e-8) -> float:
    """m1_value * l1_norm(m): caps #{lambda_j <= m} for any set whose
    sine-sum sup is at most m1_value (Hoelder pairing against D*_m)."""
    if m1_value < 0:
        raise DomainError("m1_value must be >= 0")
    if m1_value == 0.0:
        _check_order(m)
        return 0.0
    return m1_value * conj_dirichlet_l1(m, quad_tol)


@dataclass(frozen=True)
class DensityReport:
    m: int
    l1_norm: float
    count_exact: int
    count_bound: float
    m1_used: float

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "l1_norm": self.l1_norm,
            "count_exact": self.count_exact,
            "count_bound": self.count_bound,
            "m1_used": self.m1_used,
        }


def make_density_report(s: AnySet, m: int, m1_value: float,
                        quad_tol: float = 1e-8) -> DensityReport:
    l1 = conj_dirichlet_l1(m, quad_tol)
    values, weights = s.arrays()
    count = int(weights[values <= m].sum())
    return DensityReport(m=m, l1_norm=l1, count_exact=count,
                         count_bound=m1_value * l1, m1_used=m1_value)


def _l1_for_cutoff(m: int, quad_tol: float, cache: dict) -> float:
    """Upper-bound evaluator for the cutoff search: exact quadrature while
    affordable, the closed-form envelope beyond (still an upper bound, so
    the resulting cutoff stays a certified lower bound on lambda_N)."""
    if m not in cache:
        if m <= _QUAD_HYBRID_CAP:
            cache[m] = conj_dirichlet_l1(m, quad_tol) + quad_tol
        else:
            cache[m] = conj_dirichlet_l1_upper(m)
    return cache[m]


def min_cutoff_for_count(n: int, m1_value: float,
                         quad_tol: float = 1e-8) -> int:
    """Smallest M with m1_value * l1(M) >= n: no sup-m1_value sine sum can
    fit n frequencies below it, so lambda_N >= this for every such set.

    Doubling then bisection on the monotone bound; walking past 2^31
    raises CutoffRangeError carrying the last (still meaningful) bound.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not m1_value > 0:
        raise DomainError("m1_value must be positive")
    cache: dict[int, float] = {}

    def bound(m: int) -> float:
        return m1_value * _l1_for_cutoff(m, quad_tol, cache)

    lo = 0  # invariant: lo == 0 or bound(lo) < n
    hi = 1
    while bound(hi) < n:
        if hi >= MAX_KERNEL_ORDER:
            raise CutoffRangeError(
                "cutoff exceeds representable kernel orders",
                last_m=hi, last_bound=bound(hi))
        lo = hi
        hi = min(2 * hi, MAX_KERNEL_ORDER)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) >= n:
            hi = mid
        else:
            lo = mid
    return hi
