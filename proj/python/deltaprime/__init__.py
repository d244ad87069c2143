"""Spectral toolkit for attractive delta-prime couplings on planar curves.

The heavy lifting lives in the compiled extension ``deltaprime._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    BracketedSpectrum,
    BracketIndexRecord,
    CurvatureProfile,
    CurveBounds,
    Eigenvalue1D,
    EssentialThresholdBound,
    GeometryError,
    ParameterError,
    PlanarCurve,
    RegimeError,
    SolverError,
    Spectrum1D,
    TransverseEigenvalue,
    __version__,
    bracket_potentials,
    bracket_spectrum,
    bracket_spectrum_1d,
    comparison_spectrum,
    curve_from_curvature,
    ess_threshold_bound,
    geometric_potential,
    halfwidth_schedule,
    injectivity_halfwidth,
    lemma_trans_envelope,
    make_profile,
    map_to_strip,
    metric_factor,
    signed_curvature,
    solve_strip,
    transverse_eigenvalue_dirichlet,
    transverse_eigenvalue_robin,
    transverse_fd_oracle,
    v_tau,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
