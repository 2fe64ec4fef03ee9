"""Numerical laboratory for beta-Cesaro operators on alpha-Bloch spaces."""

from .bloch import (
    BlochParams,
    ProbeVerdict,
    SampleGrid,
    SeminormEstimate,
    bloch_norm,
    default_grid,
    growth_bound,
    growth_check,
    seminorm_estimate,
)
from .bounds import (
    Classification,
    ProbeReport,
    bound_constant,
    classify,
    counterexample_probe,
    default_probe_ts,
    one_minus_power_bound,
)
from .compactness import (
    NullFamily,
    compactness_probe,
    default_test_family,
    essential_norm_probe,
    null_family,
    truncated_log_witness,
)
from .errors import DomainError, SpectrumEmptyError
from .operators import (
    OperatorMatrix,
    SpectrumReport,
    SymbolGBeta,
    apply_beta_cesaro,
    apply_generalized,
    approximate_eigen_probe,
    compact_approximant,
    eigenfunction_psi,
    operator_matrix,
    point_spectrum,
    preimage_under_cesaro,
    symbol_series,
    truncated_spectrum,
)
from .series import (
    DEFAULT_ORDER,
    PowerSeries,
    binomial_series,
    pochhammer,
    ps_derivative,
    ps_div_by_z,
    ps_eval,
    ps_exp,
    ps_integrate,
    ps_mul,
)

__all__ = [
    "BlochParams",
    "Classification",
    "DEFAULT_ORDER",
    "DomainError",
    "NullFamily",
    "OperatorMatrix",
    "PowerSeries",
    "ProbeReport",
    "ProbeVerdict",
    "SampleGrid",
    "SeminormEstimate",
    "SpectrumEmptyError",
    "SpectrumReport",
    "SymbolGBeta",
    "apply_beta_cesaro",
    "apply_generalized",
    "approximate_eigen_probe",
    "binomial_series",
    "bloch_norm",
    "bound_constant",
    "classify",
    "compact_approximant",
    "compactness_probe",
    "counterexample_probe",
    "default_grid",
    "default_probe_ts",
    "default_test_family",
    "eigenfunction_psi",
    "essential_norm_probe",
    "growth_bound",
    "growth_check",
    "null_family",
    "one_minus_power_bound",
    "operator_matrix",
    "pochhammer",
    "point_spectrum",
    "preimage_under_cesaro",
    "ps_derivative",
    "ps_div_by_z",
    "ps_eval",
    "ps_exp",
    "ps_integrate",
    "ps_mul",
    "seminorm_estimate",
    "symbol_series",
    "truncated_log_witness",
    "truncated_spectrum",
]
