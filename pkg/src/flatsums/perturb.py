"""The +/-1 frequency perturbation pipeline.

For a flat sine sum, shifting every frequency by a well-chosen unit makes
the sum large again: split the perturbed sum by the angle-addition rule,

    sum sin((l_j + e_j) x) = cos x * sum sin(l_j x) + sin x * sum e_j cos(l_j x),

pick x0 in [pi/4, pi/2] where the rectified sum sum |cos(l_j x)| is large
(its window mean is ~0.63*N once every l_j > 10), and set e_j to the sign
of cos(l_j x0).  The second term is then sin(x0) * rectified >= N/(2*sqrt2)
minus the original (flat) first term.  The cosine variant runs the same
play on [4pi/6, 5pi/6] with e_j = sgn(sin(l_j x0)).

Everything here is finite-N arithmetic: the pipeline emits the chosen x0
and signs plus certified extrema so each inequality in the chain can be
checked two-sided, and reports the measured constant value/N.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import FrequencySet, PerturbedSet, SumKind, eval_point
from .errors import DomainError
from .extrema import DEFAULT_BUDGET, ExtremumCertificate, m1, m2
from .reduction import reduce_mod_two_pi

__all__ = ["PerturbationCase", "SignVector", "PerturbationReport",
           "select_x0", "rectified_average", "choose_signs",
           "apply_perturbation", "run_theorem", "DEFAULT_X0_BUDGET"]

DEFAULT_X0_BUDGET = 1 << 16


class PerturbationCase(enum.Enum):
    SINE = "sine"
    COSINE = "cosine"

    @property
    def window(self) -> tuple[float, float]:
        if self is PerturbationCase.SINE:
            return (math.pi / 4.0, math.pi / 2.0)
        return (4.0 * math.pi / 6.0, 5.0 * math.pi / 6.0)

    @property
    def rectified_uses_cos(self) -> bool:
        """The rectified sum aggregates |cos| for the sine case, |sin| else."""
        return self is PerturbationCase.SINE


@dataclass(frozen=True)
class SignVector:
    eps: tuple[int, ...]

    def __post_init__(self):
        if any(e not in (-1, 1) for e in self.eps):
            raise DomainError("signs must be +1 or -1")
        if not self.eps:
            raise DomainError("sign vector must be non-empty")

    def __len__(self) -> int:
        return len(self.eps)


@dataclass(frozen=True)
class PerturbationReport:
    case: PerturbationCase
    x0: float
    eps: SignVector
    rectified_sum: float
    term_i: float
    term_ii: float
    perturbed_value_at_x0: float
    original_extremum: ExtremumCertificate
    perturbed_extremum: ExtremumCertificate
    c_empirical: float
    collisions: list[tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "x0": self.x0,
            "eps": list(self.eps.eps),
            "rectified_sum": self.rectified_sum,
            "term_i": self.term_i,
            "term_ii": self.term_ii,
            "perturbed_value_at_x0": self.perturbed_value_at_x0,
            "original_extremum": self.original_extremum.to_dict(),
            "perturbed_extremum": self.perturbed_extremum.to_dict(),
            "c_empirical": self.c_empirical,
            "collisions": [list(c) for c in self.collisions],
        }


def _window_grid(case: PerturbationCase, n: int) -> np.ndarray:
    a, b = case.window
    return np.linspace(a, b, n)


def _rectified_on_grid(s: FrequencySet, case: PerturbationCase,
                       xs: np.ndarray) -> np.ndarray:
    """sum_j |cos or sin(l_j x)| on the grid (selection-quality accuracy)."""
    values, weights = s.arrays()
    vals = values.astype(np.float64)
    accurate = s.lambda_max > (1 << 26)
    out = np.empty(xs.size, dtype=np.float64)
    step = max(1, 4_000_000 // vals.size)
    for lo in range(0, xs.size, step):
        if accurate:
            ang = reduce_mod_two_pi(vals[None, :], xs[lo:lo + step, None])
        else:
            ang = xs[lo:lo + step, None] * vals[None, :]
        r = np.abs(np.cos(ang)) if case.rectified_uses_cos else np.abs(np.sin(ang))
        out[lo:lo + step] = (r * weights).sum(axis=1)
    return out


def select_x0(s: FrequencySet, case: PerturbationCase,
              budget: int = DEFAULT_X0_BUDGET) -> float:
    """Best grid point for the rectified sum over the case window.

    min(budget, 16*lambda_max) uniform samples, endpoints included; ties go
    to the smallest x.  Only goodness is guaranteed (max >= grid mean), not
    global optimality.
    """
    if budget < 1024:
        raise DomainError("x0 search budget must be >= 1024")
    n = int(min(budget, 16 * s.lambda_max))
    n = max(n, 2)
    xs = _window_grid(case, n)
    rect = _rectified_on_grid(s, case, xs)
    return float(xs[int(np.argmax(rect))])


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(8)


def _panel_integrals(f, lo, hi, nodes, wts):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    xs = mid[:, None] + half[:, None] * nodes[None, :]
    return half * (f(xs) * wts).sum(axis=1)


def rectified_average(lam: int, case: PerturbationCase,
                      tol: float = 1e-9) -> float:
    """Window mean of |cos(lam x)| (sine case) or |sin(lam x)| (cosine case).

    Composite Gauss panels split at every kink of the rectified integrand
    (x = (pi/2 + k pi)/lam resp. k pi/lam), with an 8-vs-16 point check per
    panel and bisection of any panel that misses its share of ``tol``.
    Approaches 2/pi from the fast-oscillation side as lam grows.
    """
    if lam < 1:
        raise DomainError("lambda must be >= 1")
    a, b = case.window
    lam_f = float(lam)
    if case.rectified_uses_cos:
        f = lambda x: np.abs(np.cos(lam_f * x))  # noqa: E731
        k_lo = math.ceil((a * lam - math.pi / 2) / math.pi)
        k_hi = math.floor((b * lam - math.pi / 2) / math.pi)
        kinks = [(math.pi / 2 + k * math.pi) / lam for k in range(k_lo, k_hi + 1)]
    else:
        f = lambda x: np.abs(np.sin(lam_f * x))  # noqa: E731
        k_lo = math.ceil(a * lam / math.pi)
        k_hi = math.floor(b * lam / math.pi)
        kinks = [k * math.pi / lam for k in range(k_lo, k_hi + 1)]
    pts = np.unique(np.clip(np.asarray([a, *kinks, b]), a, b))
    lo = pts[:-1]
    hi = pts[1:]
    total = 0.0
    width = b - a
    for _ in range(40):
        coarse = _panel_integrals(f, lo, hi, _GL_NODES_LO, _GL_WEIGHTS_LO)
        fine = _panel_integrals(f, lo, hi, _GL_NODES, _GL_WEIGHTS)
        err = np.abs(fine - coarse)
        ok = err <= tol * (hi - lo) / width
        total += float(fine[ok].sum())
        lo, hi = lo[~ok], hi[~ok]
        if lo.size == 0:
            break
        mid = 0.5 * (lo + hi)
        lo = np.concatenate((lo, mid))
        hi = np.concatenate((mid, hi))
        order = np.argsort(lo)
        lo, hi = lo[order], hi[order]
    else:
        total += float(_panel_integrals(f, lo, hi, _GL_NODES, _GL_WEIGHTS).sum())
    return total / width


def _accurate_trig_terms(s: FrequencySet, x0: float):
    """(cos(l x0), sin(l x0)) per frequency through the exact reduction."""
    values, _ = s.arrays()
    ang = reduce_mod_two_pi(values.astype(np.float64), x0)
    return np.cos(ang), np.sin(ang)


def choose_signs(s: FrequencySet, x0: float, case: PerturbationCase) -> SignVector:
    """e_j = sign of cos(l_j x0) (sine case) or sin(l_j x0); sign(0) := +1."""
    a, b = case.window
    if not (a <= x0 <= b):
        raise DomainError("x0 outside the case window")
    c, sn = _accurate_trig_terms(s, x0)
    ref = c if case.rectified_uses_cos else sn
    return SignVector(tuple(1 if v >= 0.0 else -1 for v in ref))


def apply_perturbation(s: FrequencySet, eps: SignVector) -> PerturbedSet:
    """The multiset {l_j + e_j}; collisions keep multiplicity (at most 2)."""
    if len(eps) != s.n:
        raise DomainError("sign vector length does not match the set")
    moved = [v + e for v, e in zip(s.freqs, eps.eps)]
    if min(moved) < 1:
        raise DomainError("a perturbed frequency fell below 1")
    counts: dict[int, int] = {}
    for v in moved:
        counts[v] = counts.get(v, 0) + 1
    return PerturbedSet(sorted(counts.items()))


def run_theorem(s: FrequencySet, case: PerturbationCase, tol: float = 1e-6,
                budget: int = DEFAULT_BUDGET,
                signs: SignVector | None = None,
                x0_budget: int = DEFAULT_X0_BUDGET) -> PerturbationReport:
    """Full pipeline: pick x0, choose signs, perturb, certify the extremum.

    The report is self-certifying through the exact angle-addition identity
    perturbed(x0) = term_i + sin(x0)*term_ii (sine case; minus for cosine),
    and the perturbed extremum force-includes x0, so its value is never
    below |perturbed(x0)|.  ``signs`` overrides the sign rule when given.
    """
    if s.freqs[0] <= 10:
        warnings.warn("frequencies <= 10 present: the explicit window "
                      "constant is only certified for lambda > 10",
                      stacklevel=2)
    x0 = select_x0(s, case, budget=x0_budget)
    eps = signs if signs is not None else choose_signs(s, x0, case)
    perturbed = apply_perturbation(s, eps)

    cvals, svals = _accurate_trig_terms(s, x0)
    eps_arr = np.asarray(eps.eps, dtype=np.float64)
    if case is PerturbationCase.SINE:
        base = math.fsum(svals)                      # original sine sum at x0
        rectified = math.fsum(np.abs(cvals))
        term_ii = math.fsum(eps_arr * cvals)
        kind = SumKind.SINE
        original = m1(s, tol, budget)
        perturbed_cert = m1(perturbed, tol, budget, hint_points=[x0])
    else:
        base = math.fsum(cvals)                      # original cosine sum at x0
        rectified = math.fsum(np.abs(svals))
        term_ii = math.fsum(eps_arr * svals)
        kind = SumKind.COSINE
        original = m2(s, tol, budget)
        perturbed_cert = m2(perturbed, tol, budget, hint_points=[x0])
    term_i = math.cos(x0) * base
    value_at_x0 = eval_point(perturbed, kind, x0)

    return PerturbationReport(
        case=case,
        x0=x0,
        eps=eps,
        rectified_sum=rectified,
        term_i=term_i,
        term_ii=term_ii,
        perturbed_value_at_x0=value_at_x0,
        original_extremum=original,
        perturbed_extremum=perturbed_cert,
        c_empirical=perturbed_cert.value / s.n,
        collisions=perturbed.collisions(),
    )
