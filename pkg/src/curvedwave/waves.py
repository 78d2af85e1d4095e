"""Shapiro plane waves and separable solutions on H3 and S3.

Plane waves are powers of a linear form in the embedding coordinates,

    H3:  Psi = (u0 + n.u)^alpha        S3:  Psi = (u0 + i n.u)^alpha

with n = (0, 0, +-1) along the chart axis; the time factor e^{-i eps t}
is omitted by convention and the dimensionless energy lives in metadata.
Every family shares the dispersion quadratic

    alpha^2 + 2 alpha + 2 eps = 0   (H3, either chart)
    alpha^2 + 2 alpha - 2 eps = 0   (S3, either chart)

so alpha = -1 +- i sqrt(2 eps - 1) on H3 (eps > 1/2) and
alpha = -1 +- sqrt(2 eps + 1) on S3 (eps >= 0).  `branch=+1` selects the
upper sign.

Separation of variables in the cylindrical charts produces hypergeometric
radial factors; requiring single-valuedness and boundedness on S3
quantizes the spectrum to eps = (N^2 - 1)/2, and the terminating cases
with zero azimuthal number collapse back onto the plane waves.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DomainError
from .geometry import ChartId, ChartPoint, Space, complexify
from .specfun import Hyp2F1Params, hyp2f1_array, nonpositive_int, series_degree

TWO_PI = 2.0 * math.pi

#: Dispersion / parameter identities must close to this tolerance.
EXACT_TOL = 1e-12

#: |Psi| above this at a divergence probe marks an unbounded solution.
DIVERGENCE_THRESHOLD = 1e6

#: Variation below this under a mute-variable change counts as continuous.
CONTINUITY_THRESHOLD = 1e-8


class Family(str, Enum):
    H3_CYL_PLANE = "h3_cyl_plane"
    S3_CYL_PLANE = "s3_cyl_plane"
    H3_HORO_PLANE = "h3_horo_plane"
    S3_COMPLEX_PLANE = "s3_complex_plane"
    H3_SOV = "h3_sov"
    S3_SOV = "s3_sov"


FAMILY_CHART: dict[Family, ChartId] = {
    Family.H3_CYL_PLANE: ChartId.H3_CYLINDRICAL,
    Family.S3_CYL_PLANE: ChartId.S3_CYLINDRICAL,
    Family.H3_HORO_PLANE: ChartId.H3_HOROSPHERICAL,
    Family.S3_COMPLEX_PLANE: ChartId.S3_COMPLEX_HOROSPHERICAL,
    Family.H3_SOV: ChartId.H3_CYLINDRICAL,
    Family.S3_SOV: ChartId.S3_CYLINDRICAL,
}

FAMILY_SPACE: dict[Family, Space] = {
    Family.H3_CYL_PLANE: Space.HYPERBOLIC,
    Family.S3_CYL_PLANE: Space.SPHERICAL,
    Family.H3_HORO_PLANE: Space.HYPERBOLIC,
    Family.S3_COMPLEX_PLANE: Space.SPHERICAL,
    Family.H3_SOV: Space.HYPERBOLIC,
    Family.S3_SOV: Space.SPHERICAL,
}

PLANE_FAMILIES = (
    Family.H3_CYL_PLANE,
    Family.S3_CYL_PLANE,
    Family.H3_HORO_PLANE,
    Family.S3_COMPLEX_PLANE,
)

#: Every (family, orientation, branch) combination the suite must cover.
PLANE_WAVE_REGISTRY = tuple(
    (fam, o, br) for fam in PLANE_FAMILIES for o in (+1, -1) for br in (+1, -1)
)


def dispersion_residual(family: Family, alpha: complex, epsilon: float) -> float:
    """|alpha^2 + 2 alpha +- 2 eps| with + on H3 and - on S3."""
    s = 1.0 if FAMILY_SPACE[Family(family)] is Space.HYPERBOLIC else -1.0
    return abs(alpha * alpha + 2.0 * alpha + s * 2.0 * epsilon)


def alpha_from_epsilon(family: Family, epsilon: float, branch: int = +1) -> complex:
    """Selected root of the family's dispersion quadratic."""
    family = Family(family)
    if branch not in (+1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch!r}")
    if FAMILY_SPACE[family] is Space.HYPERBOLIC:
        if not epsilon > 0.5:
            raise DomainError(
                f"{family.value}: requires eps > 1/2 (free-particle floor), got {epsilon!r}"
            )
        return complex(-1.0, branch * math.sqrt(2.0 * epsilon - 1.0))
    if not epsilon >= 0.0:
        raise DomainError(f"{family.value}: requires eps >= 0, got {epsilon!r}")
    return complex(-1.0 + branch * math.sqrt(2.0 * epsilon + 1.0), 0.0)


# ---------------------------------------------------------------------------
# wave functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Closed-form complex evaluator on one chart, plus metadata.

    ``fn`` acts on (arrays of) the chart coordinates in atlas order.  For
    the complex horospherical chart, ``forms`` also carries the analytic
    evaluators in the continued variable sets, keyed ``rz`` (independent
    complex r, z), ``z_zstar`` and ``r_rstar``; these take
    (v1, v2, phi).
    """

    family: Family
    orientation: int
    alpha: complex
    epsilon: float
    branch: int | None
    fn: Callable
    forms: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self) -> None:
        if Family(self.family) in PLANE_FAMILIES:
            res = dispersion_residual(self.family, self.alpha, self.epsilon)
            if res > EXACT_TOL:
                raise ValueError(
                    f"{self.family}: alpha={self.alpha!r}, eps={self.epsilon!r} "
                    f"violate the dispersion relation by {res:.3e}"
                )

    @property
    def chart(self) -> ChartId:
        return FAMILY_CHART[Family(self.family)]

    def __call__(self, p: ChartPoint) -> complex:
        if ChartId(p.chart) is not self.chart:
            raise DomainError(f"{self.family} lives on {self.chart}, got point on {p.chart}")
        return complex(self.fn(p.c1, p.c2, p.c3))


def _log_power(base, exponent):
    """Principal base**exponent for array arguments."""
    return np.exp(exponent * np.log(np.asarray(base, complex)))


def make_plane_wave(
    family: Family, orientation: int, epsilon: float, branch: int = +1
) -> WaveFunction:
    """Construct the plane wave with n = (0, 0, orientation).

    Chart closed forms (o = orientation, alpha from the dispersion root):

        h3_cyl_plane:      ch^alpha r * e^{o alpha z}
        s3_cyl_plane:      cos^alpha rho * e^{i o alpha z}
        h3_horo_plane:     e^{-alpha z}            (o = -1)
                           (e^z + r^2 e^{-z})^alpha  (o = +1)
        s3_complex_plane:  e^{-alpha (a + i b)}     (o = -1)
                           e^{-alpha (a - i b)}     (o = +1)
    """
    family = Family(family)
    if family not in PLANE_FAMILIES:
        raise DomainError(f"not a plane-wave family: {family!r}")
    if orientation not in (+1, -1):
        raise DomainError(f"orientation must be +1 or -1, got {orientation!r}")
    alpha = alpha_from_epsilon(family, epsilon, branch)
    o = orientation
    forms: dict = {}

    if family is Family.H3_CYL_PLANE:
        def fn(r, phi, z, _a=alpha, _o=o):
            return np.exp(_a * np.log(np.cosh(np.asarray(r, float))) + _o * _a * np.asarray(z, float))

    elif family is Family.S3_CYL_PLANE:
        def fn(rho, phi, z, _a=alpha, _o=o):
            return np.exp(
                _a * np.log(np.cos(np.asarray(rho, float)).astype(complex))
                + 1j * _o * _a * np.asarray(z, float)
            )

    elif family is Family.H3_HORO_PLANE:
        if o == -1:
            def fn(r, phi, z, _a=alpha):
                return np.exp(-_a * np.asarray(z, float)) + 0.0 * np.asarray(r, float)
        else:
            def fn(r, phi, z, _a=alpha):
                r = np.asarray(r, float)
                z = np.asarray(z, float)
                return _log_power(np.exp(z) + r * r * np.exp(-z), _a)

    else:  # s3_complex_plane
        if o == -1:
            def fn(a, b, phi, _a=alpha):
                return np.exp(-_a * (np.asarray(a, float) + 1j * np.asarray(b, float)))

            def rz(r, z, phi, _a=alpha):
                return np.exp(-_a * np.asarray(z, complex)) + 0.0 * np.asarray(r, complex)

            def zz(z, w, phi, _a=alpha):
                return np.exp(-_a * np.asarray(z, complex)) + 0.0 * np.asarray(w, complex)

            def rr(r, rs, phi, _a=alpha):
                r = np.asarray(r, complex)
                rs = np.asarray(rs, complex)
                base = 1j * np.sqrt(r * rs) / (r * np.sqrt(1.0 + r * rs))
                return _log_power(base, _a)
        else:
            def fn(a, b, phi, _a=alpha):
                return np.exp(-_a * (np.asarray(a, float) - 1j * np.asarray(b, float)))

            def rz(r, z, phi, _a=alpha):
                r = np.asarray(r, complex)
                z = np.asarray(z, complex)
                return _log_power(np.exp(z) + r * r * np.exp(-z), _a)

            def zz(z, w, phi, _a=alpha):
                return np.exp(-_a * np.asarray(w, complex)) + 0.0 * np.asarray(z, complex)

            def rr(r, rs, phi, _a=alpha):
                r = np.asarray(r, complex)
                rs = np.asarray(rs, complex)
                base = -1j * r / np.sqrt(r * rs * (1.0 + r * rs))
                return _log_power(base, _a)

        forms = {"rz": rz, "z_zstar": zz, "r_rstar": rr}

    return WaveFunction(
        family=family,
        orientation=o,
        alpha=alpha,
        epsilon=float(epsilon),
        branch=branch,
        fn=fn,
        forms=forms,
        label=f"{family.value}[o={o:+d},branch={branch:+d},eps={epsilon:g}]",
    )


def alternate_representation(w: WaveFunction, variables: str) -> WaveFunction:
    """Re-route a complex-chart plane wave through another variable set.

    The returned evaluator still takes chart coordinates (a, b, phi) but
    computes the value from (z, z*) or (r, r*).  The (r, r*) route
    reconstructs the exponent continuously (a from |r|^2, b from arg r),
    which fixes the sign ambiguity of the square-root closed form; on the
    constraint surface the two are identical.  Pointwise equal to the
    original on interior points (a > 0).
    """
    if Family(w.family) is not Family.S3_COMPLEX_PLANE:
        raise DomainError(f"alternate representations exist for s3_complex_plane only, got {w.family}")
    variables = str(variables)
    alpha, o = w.alpha, w.orientation

    if variables in ("a_b", "chart_real"):
        return w
    if variables == "z_zstar":
        zz = w.forms["z_zstar"]

        def fn(a, b, phi, _zz=zz):
            a = np.asarray(a, float)
            b = np.asarray(b, float)
            return _zz(a + 1j * b, a - 1j * b, phi)

    elif variables == "r_rstar":
        def fn(a, b, phi, _al=alpha, _o=o):
            a = np.asarray(a, float)
            if np.any(a <= 0.0):
                raise DomainError("r_rstar representation is undefined at a = 0 (r = 0)")
            b = np.asarray(b, float)
            r = 1j * np.sqrt(np.expm1(2.0 * a)) * np.exp(1j * b)
            rs = np.conj(r)
            a_rec = 0.5 * np.log1p((r * rs).real)
            b_rec = np.mod(np.angle(r) - 0.5 * math.pi, TWO_PI)
            return np.exp(-_al * (a_rec + 1j * _o * (-1) * b_rec))

    else:
        raise DomainError(f"unknown variable set {variables!r}")

    return replace(w, fn=fn, label=w.label + f"<{variables}>")


# ---------------------------------------------------------------------------
# separable (hypergeometric) solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpectralSolution:
    """Separated solution e^{i m phi} * (z factor) * radial(r or rho).

    On S3 the radial factor is sin^a rho cos^b rho F(A, B, C; cos^2 rho)
    with a = +-|m|, b = +-|alpha|, C = b + 1.  On H3 it is
    sh^{2a} r ch^{2b} r F(A, B, C; ch^2 r) with a = +-|m|/2, b = +-alpha/2
    and C = 2b + 1.  In both cases A + B and A*B are fixed by (a, b, eps).

    The hyperbolic argument ch^2 r lies outside the series disk, so a
    hyperbolic solution is pointwise evaluable only when the series
    terminates; otherwise ``evaluable`` is False and verification goes
    through the radial ODE residual.
    """

    space: Space
    m: int
    alpha: complex
    a: complex
    b: complex
    hyp: Hyp2F1Params
    epsilon: float
    sign_a: int
    sign_b: int
    evaluable: bool
    fn: Callable | None
    radial: Callable | None

    @property
    def family(self) -> Family:
        return Family.H3_SOV if Space(self.space) is Space.HYPERBOLIC else Family.S3_SOV

    @property
    def chart(self) -> ChartId:
        return FAMILY_CHART[self.family]

    def __call__(self, p: ChartPoint) -> complex:
        if self.fn is None:
            raise DomainError("non-terminating hyperbolic series; ODE-verified only")
        return complex(self.fn(p.c1, p.c2, p.c3))

    def to_wave(self) -> WaveFunction:
        if self.fn is None:
            raise DomainError("non-terminating hyperbolic series; ODE-verified only")
        return WaveFunction(
            family=self.family,
            orientation=+1,
            alpha=self.alpha,
            epsilon=self.epsilon,
            branch=None,
            fn=self.fn,
            label=f"{self.family.value}[m={self.m},alpha={self.alpha},eps={self.epsilon:g}]",
        )


def _is_int(x, tol=1e-9) -> bool:
    return abs(complex(x).imag) <= tol and abs(complex(x).real - round(complex(x).real)) <= tol


def make_sov_solution(
    space: Space,
    m: int,
    alpha: complex,
    epsilon: float,
    sign_a: int = +1,
    sign_b: int = +1,
) -> SpectralSolution:
    """Build the separated solution for the given quantum numbers."""
    space = Space(space)
    if sign_a not in (+1, -1) or sign_b not in (+1, -1):
        raise DomainError("sign_a and sign_b must be +1 or -1")
    if not _is_int(m):
        raise DomainError(f"azimuthal number m must be an integer, got {m!r}")
    m = int(round(float(np.real(m))))

    if space is Space.SPHERICAL:
        if not _is_int(alpha):
            raise DomainError(f"spherical z-wavenumber must be an integer, got {alpha!r}")
        if not epsilon >= 0.0:
            raise DomainError(f"spherical energies satisfy eps >= 0, got {epsilon!r}")
        alpha = complex(round(float(np.real(alpha))))
        a = complex(sign_a * abs(m))
        b = complex(sign_b * abs(alpha))
        root = math.sqrt(2.0 * epsilon + 1.0)
        big_a = (a + b + 1.0 - root) / 2.0
        big_b = (a + b + 1.0 + root) / 2.0
        big_c = b + 1.0
    else:
        if not epsilon > 0.5:
            raise DomainError(f"hyperbolic energies satisfy eps > 1/2, got {epsilon!r}")
        alpha = complex(alpha)
        a = complex(sign_a * abs(m) / 2.0)
        b = sign_b * alpha / 2.0
        delta = math.sqrt(2.0 * epsilon - 1.0)
        big_a = a + b + 0.5 + 0.5j * delta
        big_b = a + b + 0.5 - 0.5j * delta
        big_c = 2.0 * b + 1.0

    hyp = Hyp2F1Params(big_a, big_b, big_c)
    degree = series_degree(hyp)
    nc = nonpositive_int(big_c)
    if nc is not None and (degree is None or degree > nc):
        raise DomainError(
            f"degenerate lower parameter C={big_c!r} with non-terminating series"
        )

    if space is Space.SPHERICAL:
        def radial(rho, _a=a.real, _b=b.real, _h=hyp):
            rho = np.asarray(rho, float)
            s, c = np.sin(rho), np.cos(rho)
            return (
                np.exp(_a * np.log(s) + _b * np.log(c)).astype(complex)
                * hyp2f1_array(_h, (c * c).astype(complex))
            )

        def fn(rho, phi, z, _m=m, _al=alpha, _rad=radial):
            return (
                np.exp(1j * _m * np.asarray(phi, float) + 1j * _al * np.asarray(z, float))
                * _rad(rho)
            )

        evaluable = True
    elif degree is not None:
        def radial(r, _a=a, _b=b, _h=hyp):
            r = np.asarray(r, float)
            sh2 = (np.sinh(r) ** 2).astype(complex)
            ch2 = (np.cosh(r) ** 2).astype(complex)
            return np.exp(_a * np.log(sh2) + _b * np.log(ch2)) * hyp2f1_array(_h, ch2)

        def fn(r, phi, z, _m=m, _al=alpha, _rad=radial):
            return (
                np.exp(1j * _m * np.asarray(phi, float) + _al * np.asarray(z, float))
                * _rad(r)
            )

        evaluable = True
    else:
        radial = None
        fn = None
        evaluable = False

    sol = SpectralSolution(
        space=space,
        m=m,
        alpha=alpha,
        a=a,
        b=b,
        hyp=hyp,
        epsilon=float(epsilon),
        sign_a=sign_a,
        sign_b=sign_b,
        evaluable=evaluable,
        fn=fn,
        radial=radial,
    )
    _validate_sov(sol)
    return sol


def _validate_sov(s: SpectralSolution) -> None:
    """Closed-form identities on (A, B, C) must hold exactly."""
    A, B, C = s.hyp.a, s.hyp.b, s.hyp.c
    if Space(s.space) is Space.SPHERICAL:
        checks = (
            abs(C - (s.b + 1.0)),
            abs((A + B) - (s.a + s.b + 1.0)),
            abs(A * B - ((s.a + s.b + 1.0) ** 2 - (2.0 * s.epsilon + 1.0)) / 4.0),
        )
    else:
        checks = (
            abs(C - (2.0 * s.b + 1.0)),
            abs((A + B) - (2.0 * s.a + 2.0 * s.b + 1.0)),
            abs(A * B - ((s.a + s.b + 0.5) ** 2 + (2.0 * s.epsilon - 1.0) / 4.0)),
        )
    worst = max(float(c) for c in checks)
    if worst > EXACT_TOL * max(1.0, abs(A * B)):
        raise ValueError(f"hypergeometric parameter identities violated by {worst:.3e}")


def reduce_to_plane_wave(s: SpectralSolution) -> WaveFunction | None:
    """Collapse a terminating solution with A = 0 or B = 0 to a plane wave.

    Requires a vanishing sin/sh exponent (a = 0, i.e. m = 0); the
    hypergeometric factor is then identically 1 and the solution equals
    the plane wave whose alpha is the dispersion root implied by which of
    A, B vanished.  Returns None when no collapse applies.
    """
    A0 = abs(s.hyp.a) <= EXACT_TOL
    B0 = abs(s.hyp.b) <= EXACT_TOL
    if not (A0 or B0):
        return None
    if abs(s.a) > EXACT_TOL:
        return None
    if Space(s.space) is Space.SPHERICAL:
        family = Family.S3_CYL_PLANE
        plane_alpha = s.b
        branch = +1 if A0 else -1  # A = 0 <=> b = sqrt(2eps+1) - 1, the + root
    else:
        family = Family.H3_CYL_PLANE
        plane_alpha = 2.0 * s.b
        branch = -1 if A0 else +1  # A = 0 <=> 2b = -1 - i sqrt(2eps-1)
    if abs(plane_alpha) <= EXACT_TOL:
        orientation = +1
    elif abs(s.alpha - plane_alpha) <= 1e-9 * max(1.0, abs(plane_alpha)):
        orientation = +1
    elif abs(s.alpha + plane_alpha) <= 1e-9 * max(1.0, abs(plane_alpha)):
        orientation = -1
    else:
        return None
    wave = make_plane_wave(family, orientation, s.epsilon, branch)
    if abs(wave.alpha - plane_alpha) > 1e-9 * max(1.0, abs(plane_alpha)):
        raise ValueError(
            f"collapsed exponent {plane_alpha!r} does not match the dispersion "
            f"root {wave.alpha!r}"
        )
    return wave


# ---------------------------------------------------------------------------
# quantization on S3
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneLevel:
    """One quantized plane-wave level: sqrt(2 eps + 1) = n."""

    n: int
    epsilon: Fraction
    alpha_plus: int
    alpha_minus: int


@dataclass(frozen=True)
class SovLevel:
    """One quantized separable level: N = a + b + 1 + 2k, eps = (N^2 - 1)/2."""

    m: int
    alpha: int
    k: int
    a: int
    b: int
    principal: int
    epsilon: Fraction


def quantize_s3(family: str, n_max: int, *, m_max: int | None = None,
                alpha_max: int | None = None) -> list:
    """Discrete S3 spectrum for a plane or separable family.

    Plane families: eps = (n^2 - 1)/2 for n = 1..n_max with both roots
    alpha_+ = n - 1 and alpha_- = -n - 1.  The separable family sweeps
    m in [0, m_max], alpha in [0, alpha_max], k in [0, n_max] with
    a = m, b = alpha (the bounded exponent choices).
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max!r}")
    name = str(getattr(family, "value", family)).replace("-", "_")
    if name in ("s3_cyl_plane", "s3_complex_plane", "plane", "cyl_plane", "complex_plane"):
        return [
            PlaneLevel(n, Fraction(n * n - 1, 2), n - 1, -n - 1)
            for n in range(1, n_max + 1)
        ]
    if name == "sov":
        m_max = n_max if m_max is None else m_max
        alpha_max = n_max if alpha_max is None else alpha_max
        out = []
        for m in range(0, m_max + 1):
            for al in range(0, alpha_max + 1):
                for k in range(0, n_max + 1):
                    big_n = m + al + 1 + 2 * k
                    out.append(
                        SovLevel(m, al, k, m, al, big_n, Fraction(big_n * big_n - 1, 2))
                    )
        return out
    raise DomainError(f"unknown quantizable family {family!r}")


# ---------------------------------------------------------------------------
# physicality classification
# ---------------------------------------------------------------------------

class Verdict(str, Enum):
    PHYSICAL = "physical"
    REJECTED = "rejected"


class RejectReason(str, Enum):
    DIVERGES_AT_RHO_PI_2 = "diverges_at_rho_pi_2"
    DIVERGES_AT_RHO_0 = "diverges_at_rho_0"
    NONPERIODIC_B = "nonperiodic_b"
    NONPERIODIC_Z = "nonperiodic_z"
    GROWTH_AT_A_INFINITY = "growth_at_a_infinity"
    OK = "ok"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: RejectReason
    note: str = ""

    def __post_init__(self) -> None:
        if Verdict(self.verdict) is Verdict.REJECTED and RejectReason(self.reason) is RejectReason.OK:
            raise ValueError("a rejected solution needs a reason")


def classify_physical(w) -> Classification:
    """Single-valuedness / boundedness verdict, confirmed numerically.

    S3 solutions must be periodic in the compact coordinate (integer
    alpha) and bounded at the singular circle rho = pi/2 resp. in the
    a -> infinity limb; divergence is probed by sampling |Psi| near the
    locus against a 1e6 threshold and continuity by the mute-variable
    variation.  H3 solutions are accepted (open space) with the growth
    direction noted.
    """
    if isinstance(w, SpectralSolution):
        return _classify_sov(w)
    family = Family(w.family)
    if FAMILY_SPACE[family] is Space.HYPERBOLIC:
        return Classification(
            Verdict.PHYSICAL,
            RejectReason.OK,
            "continuum state on an open space: |Psi| grows without bound as r -> inf, "
            "decays along one z direction and grows along the other",
        )
    if family is Family.S3_CYL_PLANE:
        if not _is_int(w.alpha):
            return Classification(Verdict.REJECTED, RejectReason.NONPERIODIC_Z)
        alpha = round(w.alpha.real)
        probe = abs(w.fn(math.pi / 2 - 1e-3, 0.0, 0.0))
        if alpha < 0:
            if probe <= DIVERGENCE_THRESHOLD:
                raise AssertionError(f"expected divergence probe to fire, |Psi| = {probe:.3e}")
            return Classification(Verdict.REJECTED, RejectReason.DIVERGES_AT_RHO_PI_2)
        drift = abs(w.fn(math.pi / 2, 0.0, 0.4) - w.fn(math.pi / 2, 0.0, 2.1))
        if probe > DIVERGENCE_THRESHOLD or drift > CONTINUITY_THRESHOLD:
            return Classification(Verdict.REJECTED, RejectReason.DIVERGES_AT_RHO_PI_2)
        return Classification(Verdict.PHYSICAL, RejectReason.OK)
    if family is Family.S3_COMPLEX_PLANE:
        if not _is_int(w.alpha):
            return Classification(Verdict.REJECTED, RejectReason.NONPERIODIC_B)
        alpha = round(w.alpha.real)
        probe = abs(w.fn(30.0, 0.0, 0.0))
        if alpha < 0:
            if probe <= DIVERGENCE_THRESHOLD:
                raise AssertionError(f"expected growth probe to fire, |Psi| = {probe:.3e}")
            return Classification(Verdict.REJECTED, RejectReason.GROWTH_AT_A_INFINITY)
        drift = abs(w.fn(30.0, 0.4, 0.0) - w.fn(30.0, 2.1, 0.0))
        if probe > DIVERGENCE_THRESHOLD or drift > CONTINUITY_THRESHOLD:
            return Classification(Verdict.REJECTED, RejectReason.GROWTH_AT_A_INFINITY)
        return Classification(Verdict.PHYSICAL, RejectReason.OK)
    return Classification(Verdict.PHYSICAL, RejectReason.OK, "separable hyperbolic state")


def _classify_sov(s: SpectralSolution) -> Classification:
    if Space(s.space) is Space.HYPERBOLIC:
        return Classification(Verdict.PHYSICAL, RejectReason.OK, "continuum state on an open space")
    if s.b.real < 0:
        return Classification(Verdict.REJECTED, RejectReason.DIVERGES_AT_RHO_PI_2)
    if s.a.real < 0:
        return Classification(Verdict.REJECTED, RejectReason.DIVERGES_AT_RHO_0)
    if series_degree(s.hyp) is None:
        return Classification(
            Verdict.REJECTED, RejectReason.DIVERGES_AT_RHO_0,
            "non-terminating series is unbounded at the rho = 0 circle",
        )
    return Classification(Verdict.PHYSICAL, RejectReason.OK)


# ---------------------------------------------------------------------------
# eigenvalues and flat-space limit
# ---------------------------------------------------------------------------

def p3_eigenvalue(orientation: int, alpha: complex) -> complex:
    """Eigenvalue of the first-order generator -i(r d_r + d_z) on the
    horospherical plane waves: +i alpha for orientation -1, -i alpha for +1."""
    if orientation not in (+1, -1):
        raise DomainError(f"orientation must be +1 or -1, got {orientation!r}")
    return -1j * orientation * alpha


def momentum_projection_eigenvalue(space: Space, alpha: complex) -> complex:
    """Eigenvalue of (P.n) on the projective-coordinate plane-wave form.

    The realized values are -i alpha on the hyperbolic model and +alpha on
    the spherical one; these are what the numerical ratio reproduces.
    """
    return -1j * alpha if Space(space) is Space.HYPERBOLIC else complex(alpha)


def flat_limit_eigenvalue(
    family, E: float, M: float, rho_curv: float, branch: int = +1
) -> complex:
    """Dimensionful momentum eigenvalue at curvature radius rho (hbar = 1).

    H3: i/rho + branch * sqrt(2 E M - 1/rho^2), defined for
    2 E M rho^2 >= 1; S3: -1/rho + branch * sqrt(2 E M + 1/rho^2).
    Both tend to branch * sqrt(2 E M) as rho -> infinity, with error
    proportional to 1/rho.
    """
    if not (rho_curv > 0.0 and E > 0.0 and M > 0.0):
        raise DomainError("requires E > 0, M > 0, rho_curv > 0")
    if branch not in (+1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch!r}")
    name = str(getattr(family, "value", family))
    if name.startswith("h3") or name == "hyperbolic":
        radicand = 2.0 * E * M - 1.0 / (rho_curv * rho_curv)
        if radicand < 0.0:
            raise DomainError(
                f"hyperbolic floor: needs 2*E*M*rho^2 >= 1, got {2*E*M*rho_curv**2!r}"
            )
        return 1j / rho_curv + branch * math.sqrt(radicand)
    if name.startswith("s3") or name == "spherical":
        return complex(-1.0 / rho_curv + branch * math.sqrt(2.0 * E * M + 1.0 / (rho_curv * rho_curv)))
    raise DomainError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# projective-coordinate plane waves (for the generator algebra)
# ---------------------------------------------------------------------------

def q_plane_wave(space: Space, n, alpha: complex) -> Callable:
    """Plane-wave form in projective coordinates q = u / u0.

    hyperbolic: (1 - q^2)^{-alpha/2} (1 + n.q)^alpha,   q^2 < 1
    spherical:  (1 + q^2)^{-alpha/2} (1 + i n.q)^alpha
    """
    space = Space(space)
    n = np.asarray(n, float)
    if abs(float(np.dot(n, n)) - 1.0) > 1e-14:
        raise DomainError(f"n must be a unit vector, got |n|^2 = {float(np.dot(n, n))!r}")

    if space is Space.HYPERBOLIC:
        def f(q1, q2, q3, _n=n, _a=complex(alpha)):
            q1, q2, q3 = (np.asarray(v, float) for v in (q1, q2, q3))
            q2sum = q1 * q1 + q2 * q2 + q3 * q3
            dot = _n[0] * q1 + _n[1] * q2 + _n[2] * q3
            return np.exp(-0.5 * _a * np.log(1.0 - q2sum) + _a * np.log(1.0 + dot))
        return f

    def f(q1, q2, q3, _n=n, _a=complex(alpha)):
        q1, q2, q3 = (np.asarray(v, float) for v in (q1, q2, q3))
        q2sum = q1 * q1 + q2 * q2 + q3 * q3
        dot = _n[0] * q1 + _n[1] * q2 + _n[2] * q3
        return np.exp(
            -0.5 * _a * np.log((1.0 + q2sum).astype(complex))
            + _a * np.log(1.0 + 1j * dot)
        )
    return f


# ---------------------------------------------------------------------------
# solution catalog
# ---------------------------------------------------------------------------

def solution_catalog(n_max: int = 10) -> list[dict]:
    """Quantized S3 plane-wave catalog with classification verdicts."""
    out = []
    for family in (Family.S3_CYL_PLANE, Family.S3_COMPLEX_PLANE):
        for level in quantize_s3("plane", n_max):
            eps = float(level.epsilon)
            for orientation in (+1, -1):
                for branch, alpha in ((+1, level.alpha_plus), (-1, level.alpha_minus)):
                    w = make_plane_wave(family, orientation, eps, branch)
                    cls = classify_physical(w)
                    out.append(
                        {
                            "family": family.value,
                            "orientation": orientation,
                            "branch": branch,
                            "n": level.n,
                            "alpha": alpha,
                            "epsilon": eps,
                            "epsilon_exact": str(level.epsilon),
                            "verdict": cls.verdict.value,
                            "reason": cls.reason.value,
                        }
                    )
    return out
