"""Exact p-adic Eisenstein-measure machinery on the Tate curve, with a
float64 elliptic-function oracle for the transcendental identities."""

from .kl import (
    bernoulli_number,
    gamma_p,
    kl_coset_moment,
    kl_measure,
    kl_moment_target,
    kl_period,
    leopoldt_value,
    mazur_measure,
    mazur_period,
    verify_KL_interpolation,
    zeta_neg,
)
from .measures import (
    AmiceSeries,
    FiniteLevelMeasure,
    amice_of_measure,
    moment_riemann,
    periods_from_series,
    restrict_to_units,
    weighted_integral,
)
from .oracle import (
    CMSetup,
    Lattice,
    TruncationPolicy,
    verify_cm_addition,
    verify_cm_period,
    verify_gk_poisson,
    verify_lambda_ratio,
    verify_qexp_identity,
    verify_z_interpolation,
)
from .padic import (
    CyclotomicRing,
    DomainError,
    PAdicApprox,
    PrecisionError,
    PrimeContext,
)
from .qexp import (
    FamilyParams,
    QSeries,
    check_level_zero_gk,
    check_sigma_distribution,
    check_weight_congruence,
    delta_p_series,
    eisenstein_g,
    g0n_series,
    p_stabilize,
    phi_series,
    psi_series,
    qseries_congruent,
    sigma_coeff,
)
from .report import CheckReport
from .zeta import (
    TateBHMeasure,
    ZetaValue,
    check_exceptional,
    check_interpolation,
    check_limit,
    check_pole_laurent,
    check_regularity,
    check_residue,
    check_zeta_interpolates,
    zeta_eval,
)

__version__ = "0.1.0"

__all__ = [
    "AmiceSeries",
    "CMSetup",
    "CheckReport",
    "CyclotomicRing",
    "DomainError",
    "FamilyParams",
    "FiniteLevelMeasure",
    "Lattice",
    "PAdicApprox",
    "PrecisionError",
    "PrimeContext",
    "QSeries",
    "TateBHMeasure",
    "TruncationPolicy",
    "ZetaValue",
    "amice_of_measure",
    "bernoulli_number",
    "check_exceptional",
    "check_interpolation",
    "check_level_zero_gk",
    "check_limit",
    "check_pole_laurent",
    "check_regularity",
    "check_residue",
    "check_sigma_distribution",
    "check_weight_congruence",
    "check_zeta_interpolates",
    "delta_p_series",
    "eisenstein_g",
    "g0n_series",
    "gamma_p",
    "kl_coset_moment",
    "kl_measure",
    "kl_moment_target",
    "kl_period",
    "leopoldt_value",
    "mazur_measure",
    "mazur_period",
    "moment_riemann",
    "p_stabilize",
    "periods_from_series",
    "phi_series",
    "psi_series",
    "qseries_congruent",
    "restrict_to_units",
    "sigma_coeff",
    "verify_KL_interpolation",
    "verify_cm_addition",
    "verify_cm_period",
    "verify_gk_poisson",
    "verify_lambda_ratio",
    "verify_qexp_identity",
    "verify_z_interpolation",
    "weighted_integral",
    "zeta_eval",
    "zeta_neg",
]
