"""Special functions and integration used by the density evaluators.

Three pieces: the Gaussian tail (Q) function, a recursive adaptive
Simpson integrator, and the integral

    I(k, a, b; x1, x2) = int_{x1}^{x2} exp(-x^2) * asin(k * 10^-(a + b x)) dx

evaluated either by quadrature or by a series closed form obtained by
expanding the arcsine in its Taylor series and integrating the resulting
Gaussian-exponential terms exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import lgamma

import numpy as np
from scipy import special

SQRT_PI = math.sqrt(math.pi)
LN10 = math.log(10.0)

# Arguments this far above 1 are treated as rounding and clamped; anything
# larger is a caller error.
ARG_CLAMP = 1e-12

SERIES_MAX_TERMS = 500


class NonConvergenceError(RuntimeError):
    """Quadrature hit the recursion-depth cap before reaching tolerance."""


class SeriesDivergenceError(NonConvergenceError):
    """Series terms stopped decreasing within the term cap."""


def q_function(x):
    """Standard normal tail probability Q(x) = erfc(x/sqrt(2)) / 2."""
    q = 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return float(q) if np.ndim(x) == 0 else q


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    # second test: the Richardson correction is at rounding level, so
    # further refinement cannot improve the estimate
    if abs(delta) <= 15.0 * tol or abs(delta) <= 1e-15 * abs(left + right):
        return left + right + delta / 15.0
    if depth <= 0:
        raise NonConvergenceError(
            f"adaptive Simpson did not reach tol on [{a}, {b}] (|delta|={abs(delta):.3e})"
        )
    half = 0.5 * tol
    return _adaptive(f, a, fa, m, fm, lm, flm, left, half, depth - 1) + _adaptive(
        f, m, fm, b, fb, rm, frm, right, half, depth - 1
    )


def adaptive_simpson(f, lo: float, hi: float, tol: float, max_depth: int = 48) -> float:
    """Integrate f over [lo, hi] to absolute tolerance tol.

    Classic recursive adaptive Simpson with the 15x Richardson acceptance
    test; exact on cubics at the first level.  Raises NonConvergenceError
    if the depth cap is hit before the tolerance is met.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    fa, fb = f(lo), f(hi)
    m, fm, whole = _simpson(f, lo, fa, hi, fb)
    return sign * _adaptive(f, lo, fa, hi, fb, m, fm, whole, tol, max_depth)


@dataclass(frozen=True)
class ArcsineGaussParams:
    """Parameters of the Gaussian-arcsine integral.

    The arcsine argument is scale * 10^-(offset + slope*x); it must stay
    within [0, 1] over [lo, hi], which is checked at the endpoints since
    the argument is monotone in x.
    """

    scale: float
    offset: float
    slope: float
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"lo={self.lo} exceeds hi={self.hi}")
        if self.scale < 0.0:
            raise ValueError(f"scale must be nonnegative, got {self.scale}")

    def argument(self, x):
        return self.scale * 10.0 ** (-(self.offset + self.slope * np.asarray(x, dtype=float)))


def _checked_endpoint_args(p: ArcsineGaussParams) -> tuple[float, float]:
    a_lo = float(p.argument(p.lo))
    a_hi = float(p.argument(p.hi))
    if max(a_lo, a_hi) > 1.0 + ARG_CLAMP:
        raise ValueError(
            f"arcsine argument exceeds 1 on the interval (max {max(a_lo, a_hi):.6g})"
        )
    return min(a_lo, 1.0), min(a_hi, 1.0)


def arcsine_series_coeff(n: int, scale: float, offset: float) -> float:
    """Coefficient C_n of the arcsine-decay series.

    C_0 = 1 and, with y = scale * 10^-offset,

        C_n = (2n-1)! * y^(2n) / (2^(2n-1) * (n-1)! * n! * (2n+1)^2)

    evaluated through log-gamma so large n does not overflow.  These are
    the Taylor coefficients of asin(y)/y integrated once, i.e.
    C_n = asin-coefficient_n * y^(2n) / (2n+1).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1.0
    y = scale * 10.0 ** (-offset)
    if y == 0.0:
        return 0.0
    return math.exp(
        lgamma(2 * n)
        + 2 * n * math.log(y)
        - (2 * n - 1) * math.log(2.0)
        - lgamma(n)
        - lgamma(n + 1)
        - 2.0 * math.log(2 * n + 1)
    )


def _log_asin_taylor_coeff(n: int) -> float:
    # log of (2n)! / (4^n * (n!)^2 * (2n+1)), the asin Taylor coefficient
    return lgamma(2 * n + 1) - 2 * n * math.log(2.0) - 2 * lgamma(n + 1) - math.log(2 * n + 1)


def _amp_erfc_diff(ln_amp: float, xi: float, s1: float, s2: float) -> float:
    """amp * e^(xi^2) * (erfc(s1) - erfc(s2)) without forming e^(xi^2).

    Each product amp*e^(xi^2)*erfc(s) is exp(ln_amp + xi^2 - s^2) * erfcx(|s|)
    up to the reflection erfc(-t) = 2 - erfc(t); for admissible parameters
    every exponent here is bounded even though e^(xi^2) alone overflows.
    """

    def tail(s: float) -> float:
        return math.exp(ln_amp + xi * xi - s * s + math.log(special.erfcx(abs(s))))

    if s1 >= 0.0:
        return tail(s1) - tail(s2)
    if s2 < 0.0:
        return tail(s2) - tail(s1)
    # mixed signs: |xi| is small here, the direct term is safe
    return 2.0 * math.exp(ln_amp + xi * xi) - tail(s1) - tail(s2)


def _series_value(p: ArcsineGaussParams, tol: float) -> float:
    gamma = p.slope * LN10
    ln_y0 = math.log(p.scale) - p.offset * LN10
    total = 0.0
    magnitudes: list[float] = []
    for n in range(SERIES_MAX_TERMS + 1):
        xi = 0.5 * gamma * (2 * n + 1)
        ln_amp = _log_asin_taylor_coeff(n) + (2 * n + 1) * ln_y0
        term = 0.5 * SQRT_PI * _amp_erfc_diff(ln_amp, xi, p.lo + xi, p.hi + xi)
        total += term
        magnitudes.append(abs(term))
        if n >= 3 and abs(term) < tol * max(abs(total), 1e-300):
            return total
    if len(magnitudes) >= 3 and not (magnitudes[-1] <= magnitudes[-2] <= magnitudes[-3]):
        raise SeriesDivergenceError(
            f"series terms not decreasing after {SERIES_MAX_TERMS} terms"
        )
    # decreasing but slow (argument at or near 1): return the capped sum
    return total


def _quadrature_value(p: ArcsineGaussParams, tol: float) -> float:
    arg_lo, arg_hi = _checked_endpoint_args(p)

    def integrand(x: float) -> float:
        a = p.scale * 10.0 ** (-(p.offset + p.slope * x))
        return math.exp(-x * x) * math.asin(min(a, 1.0))

    if max(arg_lo, arg_hi) <= 0.999:
        return adaptive_simpson(integrand, p.lo, p.hi, tol)

    # The arcsine derivative blows up as the argument reaches 1 at one
    # endpoint; substituting x = end -/+ s^2 restores a smooth integrand.
    width = p.hi - p.lo
    if width == 0.0:
        return 0.0
    if arg_hi >= arg_lo:
        g = lambda s: 2.0 * s * integrand(p.hi - s * s)
    else:
        g = lambda s: 2.0 * s * integrand(p.lo + s * s)
    return adaptive_simpson(g, 0.0, math.sqrt(width), tol)


def arcsine_gauss_integral(
    p: ArcsineGaussParams, method: str = "quadrature", tol: float = 1e-12
) -> float:
    """Evaluate the Gaussian-arcsine integral.

    method "quadrature" integrates adaptively (authoritative path); method
    "series" sums the Taylor closed form, truncated once the next term
    falls below tol times the partial sum (with at least 4 terms taken and
    a hard cap of 500).  The series converges fast while the arcsine
    argument stays below 1 on the interval and degrades to a slow
    polynomial tail when the argument touches 1 exactly.
    """
    if p.scale == 0.0:
        return 0.0
    _checked_endpoint_args(p)
    if p.lo == p.hi:
        return 0.0
    if p.slope == 0.0:
        # constant arcsine factor times the Gaussian mass of the interval
        a = min(float(p.argument(p.lo)), 1.0)
        return math.asin(a) * 0.5 * SQRT_PI * (special.erf(p.hi) - special.erf(p.lo))
    if method == "quadrature":
        return _quadrature_value(p, tol)
    if method == "series":
        return _series_value(p, tol)
    raise ValueError(f"unknown method {method!r}; expected 'quadrature' or 'series'")
