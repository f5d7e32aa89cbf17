"""lumenkit: photometric efficacy and CIE 1931 colorimetry toolkit.

Computes the mechanical equivalent of the lumen, the photometric
efficacy ratio (PER) of arbitrary radiation sources, chromaticity
coordinates, and the maximum PER achievable at a fixed chromaticity
(via a built-in two-phase Simplex solver), with a CSV-emitting CLI.
"""

from .colorimetry import (
    Chromaticity,
    CmfTable,
    Tristimulus,
    chromaticity,
    default_cmf,
    default_cmf_path,
    in_gamut,
    load_cmf,
    planckian_locus,
    spectral_locus,
    tristimulus,
)
from .constants import CODATA, PhysicalConstants
from .errors import (
    DomainError,
    LumenError,
    NonConvergenceError,
    ParseError,
    UnsupportedModelError,
    ValidationError,
    ZeroSpectrumError,
)
from .maxper import (
    IsoPerGrid,
    LpProblem,
    LpSolution,
    build_problem,
    iso_per_scan,
    max_per,
    simplex_solve,
)
from .photometry import (
    KM_SI,
    PHOTOPIC,
    PLATINUM_LUMINANCE,
    PLATINUM_POINT_K,
    SCOTOPIC,
    EfficacyResult,
    LuminosityFunction,
    PhotopicAnalytic,
    PlanckSweep,
    ScotopicAnalytic,
    Tabulated,
    compute_km,
    km_denominator,
    luminosity,
    luminous_flux,
    per,
    per_sweep_planck,
)
from .quadrature import (
    CubicSpline,
    IntegrationSpec,
    integrate,
    spline_fit,
    total_planck_radiance,
)
from .spectral import (
    Flat,
    Gaussian,
    Line,
    Planck,
    Sampled,
    SampledSpectrum,
    SpectrumModel,
    TruncatedPlanck,
    energy_density_omega,
    evaluate_spectrum,
    model_support,
    photon_number_density,
    planck_radiance,
)

__version__ = "0.1.0"
