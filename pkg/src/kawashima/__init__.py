"""Kawashima functions, harmonic-sum algebra and numerical multiple zeta values."""

from .config import DEFAULT_CONFIG, EvalConfig, EvalResult
from .errors import DivergenceError, DomainError
from .harmonic import S, S_linear, S_star, S_star_linear, SumTable, s, s_linear, s_star, s_star_linear, sum_table
from .indices import (
    EMPTY,
    Index,
    IndexVector,
    IndexWord,
    a_set,
    abscissa_rho,
    as_index,
    circled_star_product,
    harmonic_bar_product,
    harmonic_product,
    hoffman_dual,
    is_admissible,
    reverse,
    rho_closed_form,
    star_expand,
)
from .kfunction import (
    GSeriesSpec,
    KawashimaEvaluator,
    eval_at_integer,
    eval_fraction_inductive,
    eval_g_series,
    eval_newton,
    kawashima,
    polygamma_reference,
    taylor_coeffs_m1,
    taylor_coeffs_m3,
)
from .mzv import c_m, mzsv, mzv, zeta_k_constrained
from .relations import CheckReport, run_profile

__version__ = "0.1.0"
