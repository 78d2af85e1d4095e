"""Numerical differential operators on chart and projective coordinates.

Everything is order-4 central finite differences applied to plain
evaluators; there is no symbolic layer, so every analytic eigenvalue or
solution claim stays independently checkable.  Steps may be scalars or
per-point arrays (the verification harness shrinks the step near chart
singular loci), and an optional Richardson halving combines two order-4
applications into an order-6 result without changing the base scheme.

Chart Hamiltonians are H = -(1/2) * Laplace-Beltrami of the chart metric;
on the complex horospherical chart of S3 the caller picks the variable
set: ``a_b`` (real parameters), ``z_zstar`` (Wirtinger derivatives of the
chart evaluator), or ``r_rstar`` (general divergence-form operator built
on the continued metric, applied to the analytic (r, r*) form).

In projective coordinates q = u/u0 the displacement and rotation
generators are

    P = -i (1 -+ q (x) q) d/dq      (- hyperbolic, + spherical)
    L = q x P = -i q x d/dq

whose commutators close on the six-generator algebra; the closure is
checked numerically by fitting, not asserted a priori.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .geometry import ChartId, ChartPoint, Space, boundary_distance
from .waves import SpectralSolution, WaveFunction

DEFAULT_STEP = 1e-3
DEFAULT_COMMUTATOR_STEP = 1e-3


# ---------------------------------------------------------------------------
# finite-difference kernels (vectorized; h may be an array)
# ---------------------------------------------------------------------------

def _shifted(ev: Callable, coords: Sequence, axis: int, delta) -> np.ndarray:
    c = list(coords)
    c[axis] = c[axis] + delta
    return np.asarray(ev(*c), complex)


def fd_d1(ev: Callable, coords: Sequence, axis: int, h) -> np.ndarray:
    """Order-4 central first derivative along one coordinate."""
    return (
        _shifted(ev, coords, axis, -2 * h)
        - 8.0 * _shifted(ev, coords, axis, -h)
        + 8.0 * _shifted(ev, coords, axis, h)
        - _shifted(ev, coords, axis, 2 * h)
    ) / (12.0 * h)


def fd_d2(ev: Callable, coords: Sequence, axis: int, h, center=None) -> np.ndarray:
    """Order-4 central second derivative along one coordinate."""
    if center is None:
        center = np.asarray(ev(*coords), complex)
    return (
        -_shifted(ev, coords, axis, -2 * h)
        + 16.0 * _shifted(ev, coords, axis, -h)
        - 30.0 * center
        + 16.0 * _shifted(ev, coords, axis, h)
        - _shifted(ev, coords, axis, 2 * h)
    ) / (12.0 * h * h)


_D1_OFFSETS = (-2, -1, 1, 2)
_D1_WEIGHTS = (1.0, -8.0, 8.0, -1.0)


def fd_d2_mixed(ev: Callable, coords: Sequence, axis_i: int, axis_j: int, h) -> np.ndarray:
    """Order-4 mixed second derivative (tensor product of d1 stencils)."""
    acc = 0.0
    for oi, wi in zip(_D1_OFFSETS, _D1_WEIGHTS):
        for oj, wj in zip(_D1_OFFSETS, _D1_WEIGHTS):
            c = list(coords)
            c[axis_i] = c[axis_i] + oi * h
            c[axis_j] = c[axis_j] + oj * h
            acc = acc + (wi * wj) * np.asarray(ev(*c), complex)
    return acc / (144.0 * h * h)


def _chart_eval(psi) -> Callable:
    if callable(psi) and not isinstance(psi, (WaveFunction, SpectralSolution)):
        return psi
    return psi.fn


# ---------------------------------------------------------------------------
# chart Hamiltonians
# ---------------------------------------------------------------------------

def hamiltonian_on_grid(
    chart: ChartId,
    psi,
    c1,
    c2,
    c3,
    step=DEFAULT_STEP,
    variables: str | None = None,
    richardson: bool = False,
):
    """(H psi, psi) on arrays of chart coordinates.

    The caller is responsible for keeping the stencil inside the chart
    (see :func:`apply_hamiltonian` for the guarded scalar entry point).
    """
    chart = ChartId(chart)
    c1 = np.asarray(c1, float)
    c2 = np.asarray(c2, float)
    c3 = np.asarray(c3, float)
    h = np.asarray(step, float)

    def once(hh):
        return _hamiltonian_once(chart, psi, c1, c2, c3, hh, variables)

    out, center = once(h)
    if richardson:
        fine, _ = once(h / 2.0)
        out = (16.0 * fine - out) / 15.0
    return out, center


def _hamiltonian_once(chart, psi, c1, c2, c3, h, variables):
    ev = _chart_eval(psi)
    coords = (c1, c2, c3)

    if chart is ChartId.H3_CYLINDRICAL:
        f0 = np.asarray(ev(*coords), complex)
        lap = (
            fd_d2(ev, coords, 0, h, f0)
            + (np.cosh(c1) / np.sinh(c1) + np.sinh(c1) / np.cosh(c1)) * fd_d1(ev, coords, 0, h)
            + fd_d2(ev, coords, 1, h, f0) / np.sinh(c1) ** 2
            + fd_d2(ev, coords, 2, h, f0) / np.cosh(c1) ** 2
        )
        return -0.5 * lap, f0

    if chart is ChartId.S3_CYLINDRICAL:
        f0 = np.asarray(ev(*coords), complex)
        s, c = np.sin(c1), np.cos(c1)
        lap = (
            fd_d2(ev, coords, 0, h, f0)
            + (c / s - s / c) * fd_d1(ev, coords, 0, h)
            + fd_d2(ev, coords, 1, h, f0) / (s * s)
            + fd_d2(ev, coords, 2, h, f0) / (c * c)
        )
        return -0.5 * lap, f0

    if chart is ChartId.H3_HOROSPHERICAL:
        f0 = np.asarray(ev(*coords), complex)
        e2z = np.exp(2.0 * c3)
        lap = (
            e2z
            * (
                fd_d2(ev, coords, 0, h, f0)
                + fd_d1(ev, coords, 0, h) / c1
                + fd_d2(ev, coords, 1, h, f0) / (c1 * c1)
            )
            + fd_d2(ev, coords, 2, h, f0)
            - 2.0 * fd_d1(ev, coords, 2, h)
        )
        return -0.5 * lap, f0

    # complex horospherical chart
    mode = variables or "a_b"
    if mode in ("a_b", "chart_real"):
        f0 = np.asarray(ev(*coords), complex)
        e2a = np.exp(2.0 * c1)
        op = (
            (e2a - 1.0) * fd_d2(ev, coords, 0, h, f0)
            + 2.0 * fd_d1(ev, coords, 0, h)
            + e2a * fd_d2(ev, coords, 1, h, f0)
            + e2a / (e2a - 1.0) * fd_d2(ev, coords, 2, h, f0)
        )
        return -0.5 * op, f0
    if mode == "z_zstar":
        return _hamiltonian_zzstar(ev, coords, h)
    if mode == "r_rstar":
        return _hamiltonian_rrstar(psi, coords, h)
    raise DomainError(f"unknown variable set {variables!r}")


def _hamiltonian_zzstar(ev, coords, h):
    """Hamiltonian assembled from Wirtinger derivatives in z = a + ib.

    With f = e^{z + z*} the operator reads

        H = +(1/2) [ -f/(f-1) d2_phi + d2_z + d2_z* - 2 d_z - 2 d_z*
                     - 2 (2f - 1) d_z d_z* ]
    """
    a, b, phi = coords
    f0 = np.asarray(ev(*coords), complex)
    faa = fd_d2(ev, coords, 0, h, f0)
    fbb = fd_d2(ev, coords, 1, h, f0)
    fpp = fd_d2(ev, coords, 2, h, f0)
    fa = fd_d1(ev, coords, 0, h)
    fb = fd_d1(ev, coords, 1, h)
    fab = fd_d2_mixed(ev, coords, 0, 1, h)

    dz = 0.5 * (fa - 1j * fb)
    dw = 0.5 * (fa + 1j * fb)
    dzz = 0.25 * (faa - fbb) - 0.5j * fab
    dww = 0.25 * (faa - fbb) + 0.5j * fab
    dzw = 0.25 * (faa + fbb)

    f = np.exp(2.0 * a)
    expr = (
        -(f / (f - 1.0)) * fpp
        + dzz
        + dww
        - 2.0 * dz
        - 2.0 * dw
        - 2.0 * (2.0 * f - 1.0) * dzw
    )
    return 0.5 * expr, f0


def _rrstar_metric_entries(r, rs):
    """Continued-metric coefficients in (r, r*, phi); analytic off r = 0."""
    p = r * rs
    big = 1.0 + p
    quarter = 0.25 / (big * big)
    g_rr = quarter / (r * r)
    g_ss = quarter / (rs * rs)
    g_rs = -(2.0 * p + 1.0) * quarter / p
    g_pp = -p / big
    return g_rr, g_ss, g_rs, g_pp


def _rrstar_inverse_fields(r, rs):
    """sqrt(det g), inverse entries of the (r, r*, phi) metric."""
    g_rr, g_ss, g_rs, g_pp = _rrstar_metric_entries(r, rs)
    det2 = g_rr * g_ss - g_rs * g_rs
    up_rr = g_ss / det2
    up_ss = g_rr / det2
    up_rs = -g_rs / det2
    up_pp = 1.0 / g_pp
    sqrt_det = np.sqrt(det2 * g_pp)
    return sqrt_det, up_rr, up_ss, up_rs, up_pp


def _hamiltonian_rrstar(psi, coords, h):
    """Divergence-form operator on the analytic (r, r*) evaluator.

    H = +(1/2) (1/sqrt(g)) d_i ( sqrt(g) g^{ij} d_j Psi ) with the
    continued metric; coefficient fields are differentiated numerically
    alongside the wave.  Branch-safe for integer exponents (the physical
    quantized waves).
    """
    forms = getattr(psi, "forms", {})
    if "r_rstar" not in forms:
        raise DomainError("r_rstar Hamiltonian needs a wave with an (r, r*) analytic form")
    wave_rr = forms["r_rstar"]
    a, b, phi = coords
    if np.any(a <= 0.0):
        raise DomainError("r_rstar Hamiltonian is undefined on the locus a = 0")
    r = 1j * np.sqrt(np.expm1(2.0 * a)) * np.exp(1j * b)
    rs = np.conj(r)
    pts = (r, rs, phi)
    # steps scale with |r| so large-a points keep relative accuracy
    hr = h * np.maximum(1.0, np.abs(r))

    f0 = np.asarray(wave_rr(*pts), complex)
    d_r = fd_d1(wave_rr, pts, 0, hr)
    d_s = fd_d1(wave_rr, pts, 1, hr)
    d_rr = fd_d2(wave_rr, pts, 0, hr, f0)
    d_ss = fd_d2(wave_rr, pts, 1, hr, f0)
    d_rs = fd_d2_mixed(wave_rr, pts, 0, 1, hr)
    d_pp = fd_d2(wave_rr, pts, 2, h, f0)

    sqrt_det, up_rr, up_ss, up_rs, up_pp = _rrstar_inverse_fields(r, rs)

    # divergence coefficients A^j = (1/sqrt g) d_i (sqrt g g^{ij})
    def coeff(axis):
        def f_rr(rr, ss, pp):
            sd, u_rr, u_ss, u_rs, _ = _rrstar_inverse_fields(rr, ss)
            return sd * (u_rr if axis == 0 else u_rs)

        def f_ss(rr, ss, pp):
            sd, u_rr, u_ss, u_rs, _ = _rrstar_inverse_fields(rr, ss)
            return sd * (u_rs if axis == 0 else u_ss)

        return (fd_d1(f_rr, pts, 0, hr) + fd_d1(f_ss, pts, 1, hr)) / sqrt_det

    a_r = coeff(0)
    a_s = coeff(1)

    lap = (
        up_rr * d_rr
        + up_ss * d_ss
        + 2.0 * up_rs * d_rs
        + up_pp * d_pp
        + a_r * d_r
        + a_s * d_s
    )
    return 0.5 * lap, f0


def singular_locus_name(chart: ChartId) -> str:
    chart = ChartId(chart)
    return {
        ChartId.H3_CYLINDRICAL: "r = 0",
        ChartId.S3_CYLINDRICAL: "rho in {0, pi/2}",
        ChartId.H3_HOROSPHERICAL: "r = 0",
        ChartId.S3_COMPLEX_HOROSPHERICAL: "a = 0",
    }[chart]


def apply_hamiltonian(
    chart: ChartId,
    psi,
    p: ChartPoint,
    step: float = DEFAULT_STEP,
    variables: str | None = None,
    richardson: bool = False,
) -> complex:
    """(H Psi)(p) by order-4 central differences."""
    chart = ChartId(chart)
    dist = float(boundary_distance(chart, *p.coords))
    if dist < 10.0 * step:
        raise DomainError(
            f"point is {dist:.3e} from the singular locus {singular_locus_name(chart)}; "
            f"too close for step {step!r}"
        )
    out, _ = hamiltonian_on_grid(
        chart, psi, p.c1, p.c2, p.c3, step=step, variables=variables, richardson=richardson
    )
    return complex(out)


# ---------------------------------------------------------------------------
# the momentum component P3
# ---------------------------------------------------------------------------

def p3_on_grid(chart: ChartId, psi, c1, c2, c3, step=DEFAULT_STEP):
    """(P3 psi, psi) on arrays of chart coordinates.

    h3_cylindrical:    P3 = -i d_z
    h3_horospherical:  P3 = -i (r d_r + d_z)
    s3_complex chart:  P3 = -i (r d_r + d_z) acting on the analytic
                       (r, z) form through the complex lift of (a, b).
    """
    chart = ChartId(chart)
    c1 = np.asarray(c1, float)
    c2 = np.asarray(c2, float)
    c3 = np.asarray(c3, float)
    h = np.asarray(step, float)

    if chart is ChartId.H3_CYLINDRICAL:
        ev = _chart_eval(psi)
        coords = (c1, c2, c3)
        return -1j * fd_d1(ev, coords, 2, h), np.asarray(ev(*coords), complex)

    if chart is ChartId.H3_HOROSPHERICAL:
        ev = _chart_eval(psi)
        coords = (c1, c2, c3)
        val = -1j * (c1 * fd_d1(ev, coords, 0, h) + fd_d1(ev, coords, 2, h))
        return val, np.asarray(ev(*coords), complex)

    if chart is ChartId.S3_COMPLEX_HOROSPHERICAL:
        forms = getattr(psi, "forms", {})
        if "rz" not in forms:
            raise DomainError("P3 on the complex chart needs a wave with an (r, z) analytic form")
        wave_rz = forms["rz"]
        r = 1j * np.sqrt(np.expm1(2.0 * c1)) * np.exp(1j * c2)
        z = c1 + 1j * c2
        pts = (r, z, c3)
        hr = h * np.maximum(1.0, np.abs(r))
        val = -1j * (r * fd_d1(wave_rz, pts, 0, hr) + fd_d1(wave_rz, pts, 1, h))
        return val, np.asarray(wave_rz(*pts), complex)

    raise DomainError(f"no P3 form exists on chart {chart.value}")


def apply_p3(chart: ChartId, psi, p: ChartPoint, step: float = DEFAULT_STEP) -> complex:
    """(P3 Psi)(p); unsupported on s3_cylindrical."""
    chart = ChartId(chart)
    dist = float(boundary_distance(chart, *p.coords))
    if dist < 10.0 * step:
        raise DomainError(
            f"point is {dist:.3e} from the singular locus {singular_locus_name(chart)}; "
            f"too close for step {step!r}"
        )
    out, _ = p3_on_grid(chart, psi, p.c1, p.c2, p.c3, step=step)
    return complex(out)


# ---------------------------------------------------------------------------
# projective-coordinate generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QPoint:
    """Point in projective coordinates q = u/u0 with the space tag."""

    q1: float
    q2: float
    q3: float
    space: Space

    def __post_init__(self) -> None:
        q2sum = self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2
        if Space(self.space) is Space.HYPERBOLIC and not q2sum < 1.0:
            raise DomainError(f"hyperbolic projective points need q^2 < 1, got {q2sum!r}")
        if not all(math.isfinite(v) for v in (self.q1, self.q2, self.q3)):
            raise DomainError("projective coordinates must be finite")

    @property
    def coords(self) -> tuple[float, float, float]:
        return (self.q1, self.q2, self.q3)


@dataclass(frozen=True)
class OperatorSpec:
    """Which operator to apply, and with what step.

    kind: 'hamiltonian' | 'p3' | 'momentum' (projection on the unit
    vector n) | 'angular_momentum' (component along ``axis`` in 1..3).
    """

    kind: str
    chart: ChartId | None = None
    space: Space | None = None
    n: tuple | None = None
    axis: int | None = None
    step: float = DEFAULT_STEP

    def __post_init__(self) -> None:
        if self.kind not in ("hamiltonian", "p3", "momentum", "angular_momentum"):
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if not self.step > 0.0:
            raise DomainError(f"step must be positive, got {self.step!r}")
        if self.kind == "momentum":
            if self.n is None:
                raise DomainError("momentum component needs a direction n")
            nn = float(sum(v * v for v in self.n))
            if abs(nn - 1.0) > 1e-14:
                raise DomainError(f"n must be a unit vector, |n|^2 = {nn!r}")
        if self.kind == "angular_momentum" and self.axis not in (1, 2, 3):
            raise DomainError(f"angular momentum axis must be 1, 2 or 3, got {self.axis!r}")


def generator_on_grid(spec: OperatorSpec, f: Callable, q1, q2, q3, step=None):
    """Apply a projective-coordinate generator on arrays of q points."""
    h = spec.step if step is None else step
    q = (np.asarray(q1, float), np.asarray(q2, float), np.asarray(q3, float))
    if spec.kind == "momentum":
        space = Space(spec.space)
        n = np.asarray(spec.n, float)
        grads = [fd_d1(f, q, axis, h) for axis in range(3)]
        ndot = n[0] * grads[0] + n[1] * grads[1] + n[2] * grads[2]
        qdot = q[0] * grads[0] + q[1] * grads[1] + q[2] * grads[2]
        nq = n[0] * q[0] + n[1] * q[1] + n[2] * q[2]
        sign = -1.0 if space is Space.HYPERBOLIC else 1.0
        return -1j * (ndot + sign * nq * qdot)
    if spec.kind == "angular_momentum":
        i = spec.axis % 3          # axis 1 -> pair (2, 3), etc.
        j = (spec.axis + 1) % 3
        di = fd_d1(f, q, i, h)
        dj = fd_d1(f, q, j, h)
        return -1j * (q[i] * dj - q[j] * di)
    raise DomainError(f"apply_generator supports momentum/angular_momentum, got {spec.kind!r}")


def apply_generator(spec: OperatorSpec, f: Callable, q: QPoint, step: float | None = None) -> complex:
    """One generator component applied to f at a projective point."""
    h = spec.step if step is None else step
    if Space(q.space) is Space.HYPERBOLIC:
        norm = math.sqrt(q.q1 ** 2 + q.q2 ** 2 + q.q3 ** 2)
        if norm + 2.0 * h >= 1.0:
            raise DomainError(f"stencil leaves the unit ball: |q| = {norm!r}, step = {h!r}")
    if spec.space is not None and Space(spec.space) is not Space(q.space):
        raise DomainError(f"operator is for {spec.space}, point is {q.space}")
    return complex(generator_on_grid(spec, f, q.q1, q.q2, q.q3, step=h))


def commutator_residual(
    spec_a: OperatorSpec,
    spec_b: OperatorSpec,
    expected: Sequence[tuple[complex, OperatorSpec]],
    f: Callable,
    q: QPoint,
    step: float = DEFAULT_COMMUTATOR_STEP,
) -> float:
    """| ([A, B] - sum_k c_k G_k) f (q) |.

    The inner application runs at ``step`` and the outer one at
    sqrt(step), which balances truncation against the amplified roundoff
    of differentiating a finite-difference result.
    """
    outer = math.sqrt(step)

    def nested(first: OperatorSpec, second: OperatorSpec) -> complex:
        def inner(q1, q2, q3):
            return generator_on_grid(second, f, q1, q2, q3, step=step)

        return complex(generator_on_grid(first, inner, q.q1, q.q2, q.q3, step=outer))

    comm = nested(spec_a, spec_b) - nested(spec_b, spec_a)
    target = 0.0 + 0.0j
    for coefficient, spec in expected:
        target += complex(coefficient) * complex(
            generator_on_grid(spec, f, q.q1, q.q2, q.q3, step=step)
        )
    return abs(comm - target)
