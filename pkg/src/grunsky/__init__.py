"""Grunsky coefficients, Grunsky norms and abelian-differential bounds."""

__version__ = "0.1.0"

from .series import BivariateSeries, UnivariateSeries, bivar_log, bivar_mul, series_binomial
from .takagi import SymmetricNormResult, symmetric_bilinear_norm
from .core import (
    ConvergenceReport,
    GrunskyMatrix,
    GrunskyTable,
    LaurentMap,
    TaylorMap,
    grunsky_coefficients,
    grunsky_matrix,
    grunsky_norm,
    inversion_map,
    qc_bound_check,
    taylor_grunsky_coefficients,
)
from .abelian import (
    BeltramiSpec,
    PolarTerm,
    abelian_matrix,
    alpha_norm,
    beltrami_moments,
    extremal_omega,
    pairing,
    quadrature_moments,
)
from .families import (
    FamilySpec,
    beltrami_oracle,
    bnorm,
    family_beltrami,
    family_map,
    parse_family,
    schwarzian,
)
from .verify import (
    fredholm_eigenvalue,
    golusin_bound_check,
    h_eval,
    lemma4_check,
    metric_lambda_kappa,
    theorem1_discrimination,
    verify_theorem1,
)
