"""Coordinate-chart atlas for the constant-curvature 3-spaces H3 and S3.

Both spaces are realized on the unit quadric in quasi-Cartesian embedding
coordinates (u0, u1, u2, u3):

    H3 (Lobachevsky):  u0^2 - u1^2 - u2^2 - u3^2 = 1,  u0 >= 1
    S3 (spherical):    u0^2 + u1^2 + u2^2 + u3^2 = 1

Four charts are supported, all dimensionless (curvature radius = 1):

h3_cylindrical (r, phi, z)
    u1 = sh r cos phi, u2 = sh r sin phi, u3 = ch r sh z, u0 = ch r ch z
    dl^2 = dr^2 + sh^2 r dphi^2 + ch^2 r dz^2

s3_cylindrical (rho, phi, z)
    u1 = sin rho cos phi, u2 = sin rho sin phi,
    u3 = cos rho sin z,   u0 = cos rho cos z
    dl^2 = drho^2 + sin^2 rho dphi^2 + cos^2 rho dz^2

h3_horospherical (r, phi, z)
    u1 = r e^{-z} cos phi, u2 = r e^{-z} sin phi,
    u3 = (e^z + (r^2 - 1) e^{-z})/2, u0 = (e^z + (r^2 + 1) e^{-z})/2
    dl^2 = e^{-2z}(dr^2 + r^2 dphi^2) + dz^2

s3_complex_horospherical (a, b, phi)
    The horospherical chart continued into S3.  The complex pair
    (z, r) with z = a + ib, r = i sqrt(e^{2a} - 1) e^{ib} satisfies the
    surface constraint r^2 = e^{z - z*} - e^{2z}; the real embedding is
    V1 = sqrt(1 - e^{-2a}) cos phi, V2 = sqrt(1 - e^{-2a}) sin phi,
    V3 = e^{-a} sin b,              V0 = e^{-a} cos b
    dl^2 = da^2/(e^{2a} - 1) + db^2/e^{2a} + (e^{2a} - 1)/e^{2a} dphi^2

All functions here are pure; values are immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError

#: Tolerance on the embedding quadric constraint.
AMBIENT_TOL = 1e-12

#: Imaginary parts above this are rejected in real-valued metric tags.
REAL_TAG_TOL = 1e-12

TWO_PI = 2.0 * math.pi


class Space(str, Enum):
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"


class ChartId(str, Enum):
    H3_CYLINDRICAL = "h3_cylindrical"
    S3_CYLINDRICAL = "s3_cylindrical"
    H3_HOROSPHERICAL = "h3_horospherical"
    S3_COMPLEX_HOROSPHERICAL = "s3_complex_horospherical"


class VariableSet(str, Enum):
    CHART_REAL = "chart_real"
    Z_ZSTAR = "z_zstar"
    R_RSTAR = "r_rstar"
    A_B = "a_b"


@dataclass(frozen=True)
class CoordinateRange:
    """Declared range of one chart coordinate.

    Periodic coordinates live in [lo, hi); bounded non-periodic ones are
    closed on the listed endpoints.
    """

    name: str
    lo: float
    hi: float
    periodic: bool = False

    def contains(self, v: float) -> bool:
        if not math.isfinite(v):
            return False
        if self.periodic:
            return self.lo <= v < self.hi
        return self.lo <= v <= self.hi


@dataclass(frozen=True)
class ChartInfo:
    chart: ChartId
    space: Space
    coords: tuple[CoordinateRange, CoordinateRange, CoordinateRange]
    singular_loci: str


_INF = math.inf

CHARTS: dict[ChartId, ChartInfo] = {
    ChartId.H3_CYLINDRICAL: ChartInfo(
        ChartId.H3_CYLINDRICAL,
        Space.HYPERBOLIC,
        (
            CoordinateRange("r", 0.0, _INF),
            CoordinateRange("phi", 0.0, TWO_PI, periodic=True),
            CoordinateRange("z", -_INF, _INF),
        ),
        "axis r = 0 (phi undefined)",
    ),
    ChartId.S3_CYLINDRICAL: ChartInfo(
        ChartId.S3_CYLINDRICAL,
        Space.SPHERICAL,
        (
            CoordinateRange("rho", 0.0, math.pi / 2),
            CoordinateRange("phi", 0.0, TWO_PI, periodic=True),
            CoordinateRange("z", -math.pi, math.pi, periodic=True),
        ),
        "circle rho = 0 (phi undefined); circle rho = pi/2 (z undefined)",
    ),
    ChartId.H3_HOROSPHERICAL: ChartInfo(
        ChartId.H3_HOROSPHERICAL,
        Space.HYPERBOLIC,
        (
            CoordinateRange("r", 0.0, _INF),
            CoordinateRange("phi", 0.0, TWO_PI, periodic=True),
            CoordinateRange("z", -_INF, _INF),
        ),
        "axis r = 0 (phi undefined)",
    ),
    ChartId.S3_COMPLEX_HOROSPHERICAL: ChartInfo(
        ChartId.S3_COMPLEX_HOROSPHERICAL,
        Space.SPHERICAL,
        (
            CoordinateRange("a", 0.0, _INF),
            CoordinateRange("b", 0.0, TWO_PI, periodic=True),
            CoordinateRange("phi", 0.0, TWO_PI, periodic=True),
        ),
        "circle a = 0 (phi mute); limit a -> inf (b mute)",
    ),
}


@dataclass(frozen=True)
class ChartPoint:
    """A point in one named chart; coordinates validated against the atlas.

    ``degenerate`` marks points returned by :func:`unembed` whose angular
    coordinate was undefined and set to 0 by convention.
    """

    chart: ChartId
    c1: float
    c2: float
    c3: float
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        info = CHARTS[ChartId(self.chart)]
        for rng, v in zip(info.coords, (self.c1, self.c2, self.c3)):
            if not rng.contains(float(v)):
                raise DomainError(
                    f"{self.chart}: coordinate {rng.name}={v!r} outside "
                    f"[{rng.lo}, {rng.hi}{')' if rng.periodic else ']'}"
                )

    @property
    def coords(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class AmbientPoint:
    """Quasi-Cartesian embedding coordinates with curvature-sign tag."""

    u0: float
    u1: float
    u2: float
    u3: float
    space: Space

    def __post_init__(self) -> None:
        res = ambient_constraint_residual(self.u0, self.u1, self.u2, self.u3, self.space)
        if res > AMBIENT_TOL:
            raise DomainError(f"embedding constraint violated by {res:.3e} ({self.space})")
        if Space(self.space) is Space.HYPERBOLIC and self.u0 < 1.0 - AMBIENT_TOL:
            raise DomainError(f"hyperbolic sheet requires u0 >= 1, got {self.u0!r}")

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.u0, self.u1, self.u2, self.u3)


def ambient_constraint_residual(u0, u1, u2, u3, space: Space) -> float:
    """|u0^2 -+ (u1^2 + u2^2 + u3^2) - 1| for the tagged space."""
    s = -1.0 if Space(space) is Space.HYPERBOLIC else 1.0
    return float(abs(u0 * u0 + s * (u1 * u1 + u2 * u2 + u3 * u3) - 1.0))


# ---------------------------------------------------------------------------
# embeddings (vectorized cores + validated scalar wrappers)
# ---------------------------------------------------------------------------

def embed_arrays(chart: ChartId, x1, x2, x3):
    """Raw embedding map on (arrays of) chart coordinates.

    No range validation; the closed-form expressions are entire, which is
    what the finite-difference pullback needs.  Returns (u0, u1, u2, u3).
    """
    chart = ChartId(chart)
    x1, x2, x3 = np.asarray(x1, float), np.asarray(x2, float), np.asarray(x3, float)
    if chart is ChartId.H3_CYLINDRICAL:
        r, phi, z = x1, x2, x3
        return (
            np.cosh(r) * np.cosh(z),
            np.sinh(r) * np.cos(phi),
            np.sinh(r) * np.sin(phi),
            np.cosh(r) * np.sinh(z),
        )
    if chart is ChartId.S3_CYLINDRICAL:
        rho, phi, z = x1, x2, x3
        return (
            np.cos(rho) * np.cos(z),
            np.sin(rho) * np.cos(phi),
            np.sin(rho) * np.sin(phi),
            np.cos(rho) * np.sin(z),
        )
    if chart is ChartId.H3_HOROSPHERICAL:
        r, phi, z = x1, x2, x3
        emz = np.exp(-z)
        return (
            0.5 * (np.exp(z) + (r * r + 1.0) * emz),
            r * emz * np.cos(phi),
            r * emz * np.sin(phi),
            0.5 * (np.exp(z) + (r * r - 1.0) * emz),
        )
    # complex horospherical chart, real parameters (a, b, phi)
    a, b, phi = x1, x2, x3
    ema = np.exp(-a)
    s = np.sqrt(-np.expm1(-2.0 * a))  # sqrt(1 - e^{-2a})
    return (ema * np.cos(b), s * np.cos(phi), s * np.sin(phi), ema * np.sin(b))


def embed(p: ChartPoint) -> AmbientPoint:
    """Map a chart point to the quadric; the constraint holds to 1e-12."""
    u0, u1, u2, u3 = embed_arrays(p.chart, p.c1, p.c2, p.c3)
    return AmbientPoint(float(u0), float(u1), float(u2), float(u3), CHARTS[ChartId(p.chart)].space)


def unembed(q: AmbientPoint, chart: ChartId) -> ChartPoint:
    """Invert the embedding; degenerate angles resolve to 0 with a flag."""
    chart = ChartId(chart)
    info = CHARTS[chart]
    if Space(q.space) is not info.space:
        raise DomainError(f"{chart} parameterizes a {info.space} space, got a {q.space} point")
    u0, u1, u2, u3 = q.components
    rho_axis = math.hypot(u1, u2)
    degenerate = False

    if chart is ChartId.H3_CYLINDRICAL:
        r = math.asinh(rho_axis)
        z = math.atanh(u3 / u0)
        if rho_axis == 0.0:
            phi, degenerate = 0.0, True
        else:
            phi = math.atan2(u2, u1) % TWO_PI
        return ChartPoint(chart, r, phi, z, degenerate)

    if chart is ChartId.S3_CYLINDRICAL:
        plane = math.hypot(u0, u3)
        rho = math.atan2(rho_axis, plane)
        if rho_axis == 0.0:
            phi, degenerate = 0.0, True
        else:
            phi = math.atan2(u2, u1) % TWO_PI
        if plane == 0.0:
            z, degenerate = 0.0, True
        else:
            z = math.atan2(u3, u0)
            if z == math.pi:
                z = -math.pi
        return ChartPoint(chart, rho, phi, z, degenerate)

    if chart is ChartId.H3_HOROSPHERICAL:
        ez = 1.0 / (u0 - u3)  # u0 - u3 = e^{-z} > 0 on the whole sheet
        z = math.log(ez)
        r = rho_axis * ez
        if rho_axis == 0.0:
            phi, degenerate = 0.0, True
        else:
            phi = math.atan2(u2, u1) % TWO_PI
        return ChartPoint(chart, r, phi, z, degenerate)

    # s3_complex_horospherical
    pole = math.hypot(u0, u3)  # = e^{-a}
    if pole == 0.0:
        raise DomainError("point has V0 = V3 = 0: the chart parameter a diverges there")
    a = -math.log(pole)
    if a < 0.0:
        a = 0.0  # guard rounding of e^{-a} slightly above 1
    b = math.atan2(u3, u0) % TWO_PI
    if rho_axis == 0.0:
        phi, degenerate = 0.0, True
    else:
        phi = math.atan2(u2, u1) % TWO_PI
    return ChartPoint(chart, a, b, phi, degenerate)


# ---------------------------------------------------------------------------
# metric tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MetricTensor:
    """3x3 spatial metric in one variable set.

    ``chart_real`` and ``a_b`` carry the positive line-element coefficients
    dl^2 = g_ij dx^i dx^j.  The complex tags ``z_zstar`` and ``r_rstar``
    carry the signed coefficients of dS^2 - dt^2 in the continued variables,
    which is how they transform into one another under the holomorphic
    change of variables.
    """

    matrix: np.ndarray
    tag: VariableSet
    determinant: complex
    fd_error: float | None = None


def _make_metric(matrix, tag: VariableSet, fd_error=None) -> MetricTensor:
    m = np.asarray(matrix, complex)
    if m.shape != (3, 3):
        raise ValueError(f"metric must be 3x3, got {m.shape}")
    asym = float(np.max(np.abs(m - m.T)))
    if asym > 1e-10 * max(1.0, float(np.max(np.abs(m)))):
        raise ValueError(f"metric not symmetric (max asymmetry {asym:.3e})")
    m = 0.5 * (m + m.T)
    if tag in (VariableSet.CHART_REAL, VariableSet.A_B):
        worst = float(np.max(np.abs(m.imag)))
        if worst > REAL_TAG_TOL * max(1.0, float(np.max(np.abs(m.real)))):
            raise ValueError(f"{tag}: metric has imaginary parts up to {worst:.3e}")
        m = m.real.astype(complex)
    return MetricTensor(m, VariableSet(tag), complex(np.linalg.det(m)), fd_error)


def closed_form_metric(p: ChartPoint) -> MetricTensor:
    """Spatial metric of the chart, in chart-coordinate order."""
    chart = ChartId(p.chart)
    c1, c2, c3 = p.coords
    if chart is ChartId.H3_CYLINDRICAL:
        g = np.diag([1.0, math.sinh(c1) ** 2, math.cosh(c1) ** 2])
        tag = VariableSet.CHART_REAL
    elif chart is ChartId.S3_CYLINDRICAL:
        g = np.diag([1.0, math.sin(c1) ** 2, math.cos(c1) ** 2])
        tag = VariableSet.CHART_REAL
    elif chart is ChartId.H3_HOROSPHERICAL:
        w = math.exp(-2.0 * c3)
        g = np.diag([w, c1 * c1 * w, 1.0])
        tag = VariableSet.CHART_REAL
    else:
        e2a = math.exp(2.0 * c1)
        with np.errstate(divide="ignore"):
            g = np.diag([1.0 / (e2a - 1.0), 1.0 / e2a, (e2a - 1.0) / e2a])
        tag = VariableSet.A_B
    return _make_metric(g, tag)


def boundary_distance(chart: ChartId, x1, x2, x3):
    """Distance to the nearest chart boundary / singular locus.

    Periodic and unbounded coordinates do not contribute.  Accepts arrays.
    """
    chart = ChartId(chart)
    if chart in (ChartId.H3_CYLINDRICAL, ChartId.H3_HOROSPHERICAL):
        return np.asarray(x1, float)
    if chart is ChartId.S3_CYLINDRICAL:
        x1 = np.asarray(x1, float)
        return np.minimum(x1, math.pi / 2 - x1)
    return np.asarray(x1, float)  # complex chart: a = 0


def pullback_metric(p: ChartPoint, step: float = 1e-4) -> MetricTensor:
    """Metric by numerical pullback of the ambient quadratic form.

    Order-4 central differences of the embedding give the Jacobian; one
    Richardson halving both sharpens the result and yields ``fd_error``.
    """
    if not step > 0.0:
        raise DomainError(f"step must be positive, got {step!r}")
    dist = float(boundary_distance(p.chart, *p.coords))
    if dist < 10.0 * step:
        raise DomainError(
            f"step {step!r} too large: point is {dist:.3e} from the chart boundary"
        )
    space = CHARTS[ChartId(p.chart)].space
    signs = np.array([-1.0, 1.0, 1.0, 1.0]) if space is Space.HYPERBOLIC else np.ones(4)

    def gram(h: float) -> np.ndarray:
        cols = []
        for axis in range(3):
            vals = []
            for k in (-2, -1, 1, 2):
                c = list(p.coords)
                c[axis] += k * h
                vals.append(np.array(embed_arrays(p.chart, *c)))
            du = (vals[0] - 8.0 * vals[1] + 8.0 * vals[2] - vals[3]) / (12.0 * h)
            cols.append(du)
        jac = np.stack(cols, axis=1)  # (4, 3)
        return jac.T @ (signs[:, None] * jac)

    g1 = gram(step)
    g2 = gram(step / 2.0)
    improved = (16.0 * g2 - g1) / 15.0
    err = float(np.max(np.abs(g2 - g1))) / 15.0
    tag = (
        VariableSet.A_B
        if ChartId(p.chart) is ChartId.S3_COMPLEX_HOROSPHERICAL
        else VariableSet.CHART_REAL
    )
    return _make_metric(improved, tag, fd_error=err)


# ---------------------------------------------------------------------------
# complex horospherical machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexHoroPair:
    """Complex coordinates (z, r) of the continued horospherical chart.

    Pairs produced by :func:`complexify` satisfy the surface constraint
    r^2 = e^{z - z*} - e^{2z} and |e^{2z} + r^2| = 1 to 1e-12; use
    :func:`constraint_residual` to test arbitrary pairs.
    """

    z: complex
    r: complex


def complexify(a: float, b: float) -> ComplexHoroPair:
    """Lift real parameters (a, b) to the constrained complex pair.

    z = a + ib and r = i sqrt(e^{2a} - 1) e^{ib}, with the non-negative
    real branch of the square root.
    """
    if not (a >= 0.0 and math.isfinite(a)):
        raise DomainError(f"parameter a must be finite and >= 0, got {a!r}")
    z = complex(a, b)
    r = 1j * math.sqrt(math.expm1(2.0 * a)) * cmath.exp(1j * b)
    return ComplexHoroPair(z, r)


def constraint_residual(pair: ComplexHoroPair) -> float:
    """|r^2 - e^{z - z*} + e^{2z}|; zero on the constraint surface."""
    z, r = pair.z, pair.r
    return abs(r * r - cmath.exp(z - z.conjugate()) + cmath.exp(2.0 * z))


def unit_modulus_residual(pair: ComplexHoroPair) -> float:
    """| (e^{2z} + r^2)(e^{2z} + r^2)* - 1 |; zero on the surface."""
    w = cmath.exp(2.0 * pair.z) + pair.r * pair.r
    return abs(w * w.conjugate() - 1.0)


def metric_in_variables(p: ChartPoint, variables: VariableSet) -> MetricTensor:
    """Spatial metric of the complex chart in the requested variable set.

    Orderings: ``a_b`` -> (a, b, phi); ``z_zstar`` -> (z, z*, phi);
    ``r_rstar`` -> (r, r*, phi).
    """
    variables = VariableSet(variables)
    if ChartId(p.chart) is not ChartId.S3_COMPLEX_HOROSPHERICAL:
        raise DomainError(f"variable set {variables} requires the complex chart, got {p.chart}")
    if variables in (VariableSet.A_B, VariableSet.CHART_REAL):
        return closed_form_metric(p)
    a = p.c1
    f = math.exp(2.0 * a)
    if variables is VariableSet.Z_ZSTAR:
        if f == 1.0:
            raise DomainError("z_zstar metric is singular on the locus a = 0")
        c = 1.0 / (4.0 * f * (f - 1.0))
        d = (2.0 * f - 1.0) * c
        g = np.array(
            [[-c, -d, 0.0], [-d, -c, 0.0], [0.0, 0.0, -(f - 1.0) / f]], complex
        )
        return _make_metric(g, variables)
    # r_rstar
    pair = complexify(p.c1, p.c2)
    return _rrstar_metric_matrix(pair.r, pair.r.conjugate())


def _rrstar_metric_matrix(r: complex, rs: complex) -> MetricTensor:
    """Closed-form (r, r*, phi) metric; entries are analytic off r = 0."""
    if r == 0:
        raise DomainError("r_rstar metric is singular on the locus a = 0 (r = 0)")
    prod = r * rs
    big = 1.0 + prod
    quarter = 0.25 / (big * big)
    g = np.array(
        [
            [quarter / (r * r), -(2.0 * prod + 1.0) * quarter / prod, 0.0],
            [-(2.0 * prod + 1.0) * quarter / prod, quarter / (rs * rs), 0.0],
            [0.0, 0.0, -prod / big],
        ],
        complex,
    )
    return _make_metric(g, VariableSet.R_RSTAR)
