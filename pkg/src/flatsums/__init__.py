"""Certified extrema of integer-frequency sine/cosine sums, unit-shift
perturbations that un-flatten them, and Dirichlet-kernel density bounds."""

from .core import (FrequencySet, GridSpec, PerturbedSet, SumKind, eval_grid,
                   eval_point, lipschitz_bound, parseval_floor)
from .constructions import (SidonSet, consecutive, difference_set,
                            erdos_turan_sidon, is_prime, is_sidon, random_set,
                            rounded_exponential)
from .density import (DensityReport, conj_dirichlet_eval, conj_dirichlet_l1,
                      conj_dirichlet_l1_upper, density_upper_bound,
                      make_density_report, min_cutoff_for_count,
                      sine_inner_count)
from .errors import (CutoffRangeError, DomainError, FlatsumsError,
                     ResourceError)
from .extrema import (DEFAULT_BUDGET, ExtremumCertificate, certified_max_abs,
                      m1, m2)
from .perturb import (PerturbationCase, PerturbationReport, SignVector,
                      apply_perturbation, choose_signs, rectified_average,
                      run_theorem, select_x0)

__version__ = "0.1.0"

__all__ = [
    "FrequencySet", "PerturbedSet", "SumKind", "GridSpec",
    "eval_point", "eval_grid", "lipschitz_bound", "parseval_floor",
    "ExtremumCertificate", "certified_max_abs", "m1", "m2", "DEFAULT_BUDGET",
    "SidonSet", "consecutive", "random_set", "erdos_turan_sidon", "is_sidon",
    "difference_set", "rounded_exponential", "is_prime",
    "PerturbationCase", "SignVector", "PerturbationReport", "select_x0",
    "rectified_average", "choose_signs", "apply_perturbation", "run_theorem",
    "DensityReport", "conj_dirichlet_eval", "conj_dirichlet_l1",
    "conj_dirichlet_l1_upper", "sine_inner_count", "density_upper_bound",
    "min_cutoff_for_count", "make_density_report",
    "FlatsumsError", "DomainError", "ResourceError", "CutoffRangeError",
]
