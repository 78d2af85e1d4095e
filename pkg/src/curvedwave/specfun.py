"""Complex special-function substrate: principal powers and Gauss 2F1.

The hypergeometric kernel is a plain power series

    F(a, b, c; x) = sum_k (a)_k (b)_k / (c)_k * x^k / k!

summed inside the unit disk, with exact early termination whenever a or b
is a non-positive integer (the polynomial cases the quantized solutions
live on).  No analytic continuation is attempted: outside the disk the
separable solutions are checked at the radial-ODE level instead, which is
what :func:`radial_ode_residual` provides.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

#: Relative size below which a series term counts as negligible.
SERIES_EPS = 1e-16

#: Consecutive negligible terms required before stopping.
SERIES_STREAK = 3

#: Hard cap on the number of series terms.
SERIES_MAX_TERMS = 100_000

#: Tolerance for recognizing integers in complex parameters.
INT_TOL = 1e-12


@dataclass(frozen=True)
class Hyp2F1Params:
    """Parameters (a, b, c) of the Gauss hypergeometric series.

    The series is valid for |x| < 1 and terminates when a or b is a
    non-positive integer; c may be a non-positive integer only when the
    series terminates strictly before the vanishing denominator factor.
    """

    a: complex
    b: complex
    c: complex


def nonpositive_int(w: complex) -> int | None:
    """Return n >= 0 with w == -n (within 1e-12), else None."""
    w = complex(w)
    n = round(w.real)
    if n <= 0 and abs(w - n) <= INT_TOL:
        return -n
    return None


def series_degree(params: Hyp2F1Params) -> int | None:
    """Polynomial degree when the series terminates, else None."""
    na = nonpositive_int(params.a)
    nb = nonpositive_int(params.b)
    if na is None and nb is None:
        return None
    if na is None:
        return nb
    if nb is None:
        return na
    return min(na, nb)


def _check_params(params: Hyp2F1Params, degree: int | None) -> None:
    nc = nonpositive_int(params.c)
    if nc is not None and (degree is None or degree > nc):
        raise DomainError(
            f"c = {params.c!r} is a non-positive integer and the series does "
            "not terminate before the vanishing denominator term"
        )


def hyp2f1(params: Hyp2F1Params, x: complex) -> complex:
    """Gauss hypergeometric series at a scalar argument.

    Polynomial cases are summed exactly; otherwise |x| < 1 is required and
    the sum stops after three consecutive terms below 1e-16 of the partial
    sum (robust against alternating-term plateaus), capped at 1e5 terms.
    """
    a, b, c = complex(params.a), complex(params.b), complex(params.c)
    degree = series_degree(params)
    _check_params(params, degree)
    x = complex(x)
    if degree is None and abs(x) >= 1.0:
        raise DomainError(
            f"non-terminating series needs |x| < 1, got |x| = {abs(x):.6g}; "
            "verify through the radial ODE residual instead"
        )
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    streak = 0
    k = 0
    while True:
        if degree is not None and k >= degree:
            break
        if degree is None and k >= SERIES_MAX_TERMS:
            break
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        k += 1
        if degree is None:
            if abs(term) < SERIES_EPS * abs(total):
                streak += 1
                if streak >= SERIES_STREAK:
                    break
            else:
                streak = 0
    return total


def hyp2f1_array(params: Hyp2F1Params, x) -> np.ndarray:
    """Vectorized series over an array argument (same domain rules)."""
    a, b, c = complex(params.a), complex(params.b), complex(params.c)
    degree = series_degree(params)
    _check_params(params, degree)
    x = np.asarray(x, complex)
    if degree is None and float(np.max(np.abs(x))) >= 1.0:
        raise DomainError("non-terminating series needs |x| < 1 everywhere on the grid")
    total = np.ones_like(x)
    term = np.ones_like(x)
    k = 0
    streak = 0
    while True:
        if degree is not None and k >= degree:
            break
        if degree is None and k >= SERIES_MAX_TERMS:
            break
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * x
        total = total + term
        k += 1
        if degree is None:
            if float(np.max(np.abs(term))) < SERIES_EPS * float(np.max(np.abs(total))):
                streak += 1
                if streak >= SERIES_STREAK:
                    break
            else:
                streak = 0
    return total


def principal_power(base: complex, exponent: complex) -> complex:
    """exp(exponent * Log base) with the principal logarithm.

    Zero base maps to 0 when Re(exponent) > 0 and is a domain error
    otherwise (including 0^0).
    """
    base = complex(base)
    exponent = complex(exponent)
    if base == 0:
        if exponent.real > 0.0:
            return 0.0 + 0.0j
        raise DomainError(f"0 ** {exponent!r} is undefined (Re exponent <= 0)")
    return cmath.exp(exponent * cmath.log(base))


def principal_power_array(base, exponent: complex) -> np.ndarray:
    """Vectorized principal power; the base must avoid 0."""
    base = np.asarray(base, complex)
    return np.exp(complex(exponent) * np.log(base))


# ---------------------------------------------------------------------------
# radial ODE residuals (order-4 finite differences)
# ---------------------------------------------------------------------------

def _fd4_d1(f: Callable, x: float, h: float) -> complex:
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _fd4_d2(f: Callable, x: float, h: float) -> complex:
    return (
        -f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)
    ) / (12 * h * h)


def radial_ode_residual(
    space: str,
    m: int,
    alpha: complex,
    epsilon: float,
    radialfn: Callable[[float], complex],
    gridpoint: float,
    step: float = 1e-3,
) -> complex:
    """Left-hand side of the separated radial equation applied numerically.

    hyperbolic, G(r), r > 0:
        G'' + (ch r/sh r + sh r/ch r) G' + (-m^2/sh^2 r + alpha^2/ch^2 r + 2 eps) G
    spherical, R(rho), 0 < rho < pi/2:
        R'' + (cos/sin - sin/cos) R' + (2 eps - m^2/sin^2 - alpha^2/cos^2) R

    Vanishes (to finite-difference accuracy) on valid separable radial
    factors; this is the verification path for the hyperbolic case where
    the hypergeometric argument ch^2 r >= 1 leaves the series disk.
    """
    from .geometry import Space  # local import to avoid cycles at module load

    space = Space(space)
    x = float(gridpoint)
    if space is Space.HYPERBOLIC:
        if x <= 0.0:
            raise DomainError(f"radial point must satisfy r > 0, got {x!r}")
        if x < 10.0 * step:
            raise DomainError(f"point {x!r} too close to the axis for step {step!r}")
        d2 = _fd4_d2(radialfn, x, step)
        d1 = _fd4_d1(radialfn, x, step)
        sh, ch = math.sinh(x), math.cosh(x)
        coeff = ch / sh + sh / ch
        pot = -(m * m) / (sh * sh) + (alpha * alpha) / (ch * ch) + 2.0 * epsilon
        return d2 + coeff * d1 + pot * radialfn(x)
    if not (0.0 < x < math.pi / 2):
        raise DomainError(f"radial point must satisfy 0 < rho < pi/2, got {x!r}")
    if min(x, math.pi / 2 - x) < 10.0 * step:
        raise DomainError(f"point {x!r} too close to a singular circle for step {step!r}")
    d2 = _fd4_d2(radialfn, x, step)
    d1 = _fd4_d1(radialfn, x, step)
    s, c = math.sin(x), math.cos(x)
    coeff = c / s - s / c
    pot = 2.0 * epsilon - (m * m) / (s * s) - (alpha * alpha) / (c * c)
    return d2 + coeff * d1 + pot * radialfn(x)
