"""Adaptive Simpson quadrature, the closed-form Planck integral, and
natural cubic splines.

The integrator is the workhorse behind every spectral integral in the
package.  Semi-infinite Planck integrals never go through it directly:
the total radiance has a closed form (``total_planck_radiance``) and
eye-weighted numerators have compact effective support, so callers
integrate those on finite intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA
from .errors import DomainError, NonConvergenceError

DEFAULT_REL_TOL = 1e-8
DEFAULT_MAX_DEPTH = 40

# Levels of unconditional pre-subdivision.  Guards against a narrow
# feature (e.g. a 0.1 nm line approximant) slipping between the five
# samples of a single Simpson panel.
_PRESPLIT_LEVELS = 6


@dataclass(frozen=True)
class IntegrationSpec:
    """Finite integration interval plus accuracy controls.

    Attributes:
        a, b: interval endpoints (nm for spectral work, but unit-agnostic).
        rel_tol: target relative error, 0 < rel_tol < 1.
        max_depth: bisection levels before giving up.
    """

    a: float
    b: float
    rel_tol: float = DEFAULT_REL_TOL
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"integration interval requires a < b, got [{self.a}, {self.b}]")
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth}")


def _simpson(h6, fa, fm, fb):
    return h6 * (fa + 4.0 * fm + fb)


def _adapt(f, a, b, fa, fm, fb, whole, tol, depth_left):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    h6 = (b - a) / 12.0
    left = _simpson(h6, fa, flm, fm)
    right = _simpson(h6, fm, frm, fb)
    err = (left + right - whole) / 15.0
    if abs(err) <= tol:
        return left + right + err
    if depth_left <= 0:
        raise NonConvergenceError(
            f"adaptive Simpson did not converge on [{a}, {b}] (depth exhausted)"
        )
    half = tol / 2.0
    return (_adapt(f, a, m, fa, flm, fm, left, half, depth_left - 1)
            + _adapt(f, m, b, fm, frm, fb, right, half, depth_left - 1))


def integrate(f, spec: IntegrationSpec) -> float:
    """Integrate ``f`` over ``[spec.a, spec.b]`` by adaptive Simpson.

    The estimated error is kept below ``rel_tol`` relative to the
    integral of |f| (so cancelling integrands do not force impossible
    relative accuracy).  Raises :class:`NonConvergenceError` when
    ``max_depth`` bisection levels are exhausted; integrands with jump
    discontinuities should be split at the jump by the caller.
    """
    a, b = spec.a, spec.b
    presplit = min(_PRESPLIT_LEVELS, spec.max_depth - 1)
    n = 1 << presplit
    xs = np.linspace(a, b, 2 * n + 1)
    fs = [f(x) for x in xs]
    h6 = (b - a) / (6.0 * n)
    panels = []
    scale = 0.0
    for i in range(n):
        fa, fm, fb = fs[2 * i], fs[2 * i + 1], fs[2 * i + 2]
        panels.append((xs[2 * i], xs[2 * i + 2], fa, fm, fb,
                       _simpson(h6, fa, fm, fb)))
        scale += _simpson(h6, abs(fa), abs(fm), abs(fb))
    if scale == 0.0:
        return 0.0
    tol = spec.rel_tol * scale / n
    depth_left = spec.max_depth - presplit
    return sum(_adapt(f, pa, pb, fa, fm, fb, s, tol, depth_left)
               for pa, pb, fa, fm, fb, s in panels)


def total_planck_radiance(t_k: float) -> float:
    """Exact value of the full-range Planck radiance integral, W m^-2 sr^-1.

    Closed form (2 pi^4 / 15) (k_B T)^4 / (h^3 c^2), equal to sigma T^4 / pi.
    """
    if t_k <= 0:
        raise DomainError(f"temperature must be positive, got {t_k}")
    kt = CODATA.k_B * t_k
    return (2.0 * math.pi ** 4 / 15.0) * kt ** 4 / (CODATA.h ** 3 * CODATA.c ** 2)


class CubicSpline:
    """Natural cubic spline through strictly ascending knots.

    Second derivatives vanish at both endpoints.  Evaluation outside
    the knot range extrapolates with the boundary cubic; callers that
    need zero-extension clamp themselves.
    """

    def __init__(self, knots, second_derivs, values):
        self.knots = knots
        self.values = values
        self._d2 = second_derivs

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xv = np.atleast_1d(x)
        idx = np.clip(np.searchsorted(self.knots, xv) - 1, 0, len(self.knots) - 2)
        x0 = self.knots[idx]
        x1 = self.knots[idx + 1]
        h = x1 - x0
        t = (xv - x0) / h
        u = 1.0 - t
        y = (u * self.values[idx] + t * self.values[idx + 1]
             + (h * h / 6.0) * ((u ** 3 - u) * self._d2[idx]
                                + (t ** 3 - t) * self._d2[idx + 1]))
        return float(y[0]) if scalar else y

    def coefficients(self):
        """Per-interval cubic coefficients (a, b, c, d) in (x - x_i) powers."""
        h = np.diff(self.knots)
        y0, y1 = self.values[:-1], self.values[1:]
        m0, m1 = self._d2[:-1], self._d2[1:]
        a = y0
        b = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0
        c = m0 / 2.0
        d = (m1 - m0) / (6.0 * h)
        return np.stack([a, b, c, d], axis=1)


def spline_fit(wavelengths_nm, values) -> CubicSpline:
    """Fit a natural cubic spline to sampled data.

    Requires at least 4 strictly ascending knots; rejects unsorted or
    duplicate abscissae.
    """
    x = np.asarray(wavelengths_nm, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise DomainError("spline data must be two equal-length 1-d arrays")
    if len(x) < 4:
        raise DomainError(f"cubic spline needs >= 4 knots, got {len(x)}")
    if not np.all(np.diff(x) > 0):
        raise DomainError("spline knots must be strictly ascending")

    # Tridiagonal system for the interior second derivatives (natural
    # boundary: d2[0] = d2[-1] = 0), solved by the Thomas algorithm.
    n = len(x)
    h = np.diff(x)
    rhs = 6.0 * np.diff(np.diff(y) / h)
    diag = 2.0 * (h[:-1] + h[1:])
    lower = h[1:-1].copy()
    upper = h[1:-1].copy()

    m = n - 2
    cp = np.zeros(m)
    dp = np.zeros(m)
    cp[0] = upper[0] / diag[0] if m > 1 else 0.0
    dp[0] = rhs[0] / diag[0]
    for i in range(1, m):
        denom = diag[i] - lower[i - 1] * cp[i - 1]
        if i < m - 1:
            cp[i] = upper[i] / denom
        dp[i] = (rhs[i] - lower[i - 1] * dp[i - 1]) / denom
    interior = np.zeros(m)
    interior[-1] = dp[-1]
    for i in range(m - 2, -1, -1):
        interior[i] = dp[i] - cp[i] * interior[i + 1]

    d2 = np.zeros(n)
    d2[1:-1] = interior
    x = x.copy()
    y = y.copy()
    x.flags.writeable = False
    y.flags.writeable = False
    d2.flags.writeable = False
    return CubicSpline(x, d2, y)
