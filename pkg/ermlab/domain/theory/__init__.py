from ermlab.domain.theory.correlations import (
    correlation_M2,
    correlation_Mm_mc,
    correlation_Mm_quadrature,
)
from ermlab.domain.theory.high_density import (
    SurjectionSpec,
    high_density_moment,
    high_density_scaled_measure,
    nu_gamma_moment,
    second_order_term,
    second_order_term_from_level_set,
)
from ermlab.domain.theory.limit import (
    box_spectral_gap,
    expected_mu_n_second_moment,
    finite_size_correction,
    limit_measure,
    mu_moment,
    positivity_certificate,
)
from ermlab.domain.theory.models import AtomicMeasure, MomentMethod, MomentReport
from ermlab.domain.theory.poisson import (
    PoissonBound,
    asymptotic_j_bound,
    poisson_bound_j,
    poisson_tail,
    poisson_tail_upper_bound,
)

__all__ = [
    "AtomicMeasure",
    "MomentMethod",
    "MomentReport",
    "PoissonBound",
    "SurjectionSpec",
    "asymptotic_j_bound",
    "box_spectral_gap",
    "correlation_M2",
    "correlation_Mm_mc",
    "correlation_Mm_quadrature",
    "expected_mu_n_second_moment",
    "finite_size_correction",
    "high_density_moment",
    "high_density_scaled_measure",
    "limit_measure",
    "mu_moment",
    "nu_gamma_moment",
    "poisson_bound_j",
    "poisson_tail",
    "poisson_tail_upper_bound",
    "positivity_certificate",
    "second_order_term",
    "second_order_term_from_level_set",
]
