"""Simulation and verification of GUE characteristic polynomial statistics.

The package samples the log-modulus of the characteristic polynomial of
a gaussian unitary ensemble matrix on macroscopic and mesoscopic
scales, samples the limiting log-correlated gaussian processes, and
checks both against exact finite-N kernel computations and closed-form
asymptotic predictions.
"""

__version__ = "0.1.0"

from .harness import SampleStats, VerificationReport, compare, ks_normality_pvalue, run_replicated
from .kernel import KernelEvaluator, exact_linear_stat_cov, exact_linear_stat_mean
from .limits import (
    CovarianceMatrix,
    cov_B0,
    cov_F,
    phi0,
    phi_H,
    sample_B0_cholesky,
    sample_B0_harmonizable,
    sample_F_series,
)
from .predictions import (
    C_of,
    C_of_alpha,
    SingularitySet,
    barnes_g_log,
    conformal_c,
    g_function,
    krasovsky_log_mgf,
    krasovsky_mgf,
    meso_charfunc_prediction,
    predicted_mean_W,
    szego_D,
    var_DN_prediction,
)
from .sampling import (
    EigenvalueSample,
    HermitianMatrix,
    eigenvalues,
    rng_for,
    sample_gue_dense,
    sample_spectrum_fast,
)
from .spectra import (
    ChebCoeffSeries,
    MesoscopicConfig,
    QuadratureError,
    SingularInputError,
    TestFunction,
    cheb_fourier_coeffs,
    chebyshev_trace,
    coeff_a,
    fourier_coeff_b,
    log_abs_charpoly,
    meso_increment,
    smeared_coeff_c,
    xi_hat,
)

__all__ = [
    "__version__",
    "C_of",
    "C_of_alpha",
    "ChebCoeffSeries",
    "CovarianceMatrix",
    "EigenvalueSample",
    "HermitianMatrix",
    "KernelEvaluator",
    "MesoscopicConfig",
    "QuadratureError",
    "SampleStats",
    "SingularInputError",
    "SingularitySet",
    "TestFunction",
    "VerificationReport",
    "barnes_g_log",
    "cheb_fourier_coeffs",
    "chebyshev_trace",
    "coeff_a",
    "compare",
    "conformal_c",
    "cov_B0",
    "cov_F",
    "eigenvalues",
    "exact_linear_stat_cov",
    "exact_linear_stat_mean",
    "fourier_coeff_b",
    "g_function",
    "krasovsky_log_mgf",
    "krasovsky_mgf",
    "ks_normality_pvalue",
    "log_abs_charpoly",
    "meso_charfunc_prediction",
    "meso_increment",
    "phi0",
    "phi_H",
    "predicted_mean_W",
    "rng_for",
    "run_replicated",
    "sample_B0_cholesky",
    "sample_B0_harmonizable",
    "sample_F_series",
    "sample_gue_dense",
    "sample_spectrum_fast",
    "smeared_coeff_c",
    "szego_D",
    "var_DN_prediction",
    "xi_hat",
]
