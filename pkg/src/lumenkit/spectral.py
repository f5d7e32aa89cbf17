"""Spectral power distribution models and Planck-law evaluation.

All public interfaces take wavelengths in nanometers and temperatures
in kelvin; conversion to SI meters happens only inside the Planck
evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np

from .constants import CODATA, NM_TO_M
from .errors import DomainError, UnsupportedModelError
from .quadrature import spline_fit

# Beyond this argument exp() would overflow a double; the occupancy is
# below the smallest normal double long before that, so return 0.
_EXP_ARG_MAX = 700.0


def planck_radiance(lam_nm: float, t_k: float) -> float:
    """Black-body spectral radiance f_B(lambda), W m^-2 sr^-1 m^-1.

    f_B = (2 h c^2 / lambda^5) / (exp(h c / lambda k_B T) - 1)
    """
    if lam_nm <= 0:
        raise DomainError(f"wavelength must be positive, got {lam_nm} nm")
    if t_k <= 0:
        raise DomainError(f"temperature must be positive, got {t_k} K")
    lam = lam_nm * NM_TO_M
    x = CODATA.h * CODATA.c / (lam * CODATA.k_B * t_k)
    if x > _EXP_ARG_MAX:
        return 0.0
    return (2.0 * CODATA.h * CODATA.c ** 2 / lam ** 5) / math.expm1(x)


def photon_number_density(omega: float, t_k: float) -> float:
    """Bose-Einstein occupancy 1 / (exp(hbar omega / k_B T) - 1)."""
    if omega <= 0:
        raise DomainError(f"angular frequency must be positive, got {omega}")
    if t_k <= 0:
        raise DomainError(f"temperature must be positive, got {t_k} K")
    x = CODATA.hbar * omega / (CODATA.k_B * t_k)
    if x > _EXP_ARG_MAX:
        return 0.0
    return 1.0 / math.expm1(x)


def energy_density_omega(omega: float, t_k: float) -> float:
    """Spectral energy density (omega^2 / pi^2 c^3) hbar omega n(omega)."""
    occupancy = photon_number_density(omega, t_k)
    return (omega ** 2 / (math.pi ** 2 * CODATA.c ** 3)) * CODATA.hbar * omega * occupancy


@dataclass(frozen=True)
class SampledSpectrum:
    """Relative power samples on a strictly ascending wavelength grid."""

    wavelengths_nm: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        wl = np.asarray(self.wavelengths_nm, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if wl.ndim != 1 or wl.shape != vals.shape:
            raise DomainError("sampled spectrum needs equal-length 1-d arrays")
        if len(wl) < 4:
            raise DomainError(f"sampled spectrum needs >= 4 points, got {len(wl)}")
        if wl[0] <= 0:
            raise DomainError("wavelengths must be positive")
        if not np.all(np.diff(wl) > 0):
            raise DomainError("wavelengths must be strictly ascending")
        if np.any(vals < 0):
            raise DomainError("sampled power values must be nonnegative")
        wl = wl.copy()
        vals = vals.copy()
        wl.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "wavelengths_nm", wl)
        object.__setattr__(self, "values", vals)

    @cached_property
    def spline(self):
        return spline_fit(self.wavelengths_nm, self.values)


@dataclass(frozen=True)
class Planck:
    """Full-range black-body emitter at temperature t_k."""

    t_k: float

    def __post_init__(self):
        if self.t_k <= 0:
            raise DomainError(f"temperature must be positive, got {self.t_k} K")


@dataclass(frozen=True)
class TruncatedPlanck:
    """Black-body emitter restricted to [lam_min_nm, lam_max_nm]."""

    t_k: float
    lam_min_nm: float
    lam_max_nm: float

    def __post_init__(self):
        if self.t_k <= 0:
            raise DomainError(f"temperature must be positive, got {self.t_k} K")
        _check_band(self.lam_min_nm, self.lam_max_nm)


@dataclass(frozen=True)
class Flat:
    """Equal-energy emitter: unit power density on [lam_min_nm, lam_max_nm]."""

    lam_min_nm: float
    lam_max_nm: float

    def __post_init__(self):
        _check_band(self.lam_min_nm, self.lam_max_nm)


@dataclass(frozen=True)
class Gaussian:
    """Single-Gaussian emitter, exp(-(lam - peak)^2 / (2 width^2))."""

    peak_nm: float
    width_nm: float

    def __post_init__(self):
        if self.peak_nm <= 0:
            raise DomainError(f"peak wavelength must be positive, got {self.peak_nm}")
        if self.width_nm <= 0:
            raise DomainError(f"width must be positive, got {self.width_nm}")


@dataclass(frozen=True)
class Line:
    """Monochromatic (Dirac delta) emitter.

    Purely symbolic: never sampled numerically, always handled
    analytically by photometry and colorimetry.
    """

    lam_nm: float

    def __post_init__(self):
        if self.lam_nm <= 0:
            raise DomainError(f"line wavelength must be positive, got {self.lam_nm}")


@dataclass(frozen=True)
class Sampled:
    """Spectrum defined by samples, evaluated via a natural cubic spline."""

    grid: SampledSpectrum = field()


SpectrumModel = Union[Planck, TruncatedPlanck, Flat, Gaussian, Line, Sampled]


def evaluate_spectrum(model: SpectrumModel, lam_nm: float) -> float:
    """Relative power density of ``model`` at ``lam_nm``.

    Truncated, flat and sampled models are zero-extended outside their
    support; spline undershoot is clamped to zero.  ``Line`` has no
    pointwise density and raises :class:`UnsupportedModelError`.
    """
    if lam_nm <= 0:
        raise DomainError(f"wavelength must be positive, got {lam_nm} nm")
    if isinstance(model, Planck):
        return planck_radiance(lam_nm, model.t_k)
    if isinstance(model, TruncatedPlanck):
        if not model.lam_min_nm <= lam_nm <= model.lam_max_nm:
            return 0.0
        return planck_radiance(lam_nm, model.t_k)
    if isinstance(model, Flat):
        return 1.0 if model.lam_min_nm <= lam_nm <= model.lam_max_nm else 0.0
    if isinstance(model, Gaussian):
        z = (lam_nm - model.peak_nm) / model.width_nm
        return math.exp(-0.5 * z * z)
    if isinstance(model, Sampled):
        wl = model.grid.wavelengths_nm
        if lam_nm < wl[0] or lam_nm > wl[-1]:
            return 0.0
        return max(model.grid.spline(lam_nm), 0.0)
    if isinstance(model, Line):
        raise UnsupportedModelError(
            "Line spectra are delta functions; evaluate them analytically"
        )
    raise UnsupportedModelError(f"unknown spectrum model {model!r}")


def model_support(model: SpectrumModel) -> tuple[float, float] | None:
    """Wavelength interval outside which the model is identically zero.

    ``None`` for models without compact support (Planck, Gaussian).
    """
    if isinstance(model, (TruncatedPlanck, Flat)):
        return model.lam_min_nm, model.lam_max_nm
    if isinstance(model, Sampled):
        wl = model.grid.wavelengths_nm
        return float(wl[0]), float(wl[-1])
    return None


def _check_band(lam_min, lam_max):
    if lam_min <= 0:
        raise DomainError(f"wavelengths must be positive, got {lam_min} nm")
    if not lam_min < lam_max:
        raise DomainError(f"need lam_min < lam_max, got [{lam_min}, {lam_max}]")
