from ermlab.domain.spectra.correlation import elementary_symmetric, empirical_correlation
from ermlab.domain.spectra.measures import (
    empirical_measure,
    measure_count,
    measure_moment,
    spectral_gap,
    spectral_radius,
)
from ermlab.domain.spectra.models import EmpiricalMeasure, Normalization, SpectralSample
from ermlab.domain.spectra.residuals import eigenvector_residual, fourier_quadratic_form, plane_wave
from ermlab.domain.spectra.solver import eigenvalues, verify_trace_identities
from ermlab.domain.spectra.statistics import RunningStatistics

__all__ = [
    "EmpiricalMeasure",
    "Normalization",
    "RunningStatistics",
    "SpectralSample",
    "eigenvalues",
    "eigenvector_residual",
    "elementary_symmetric",
    "empirical_correlation",
    "empirical_measure",
    "fourier_quadratic_form",
    "measure_count",
    "measure_moment",
    "plane_wave",
    "spectral_gap",
    "spectral_radius",
    "verify_trace_identities",
]
