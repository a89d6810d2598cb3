"""Distinguished curve families v = v(u) and their relation to the Tchebychev field."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AlphaQuarter, DomainError, SingularSlope
from .frame import InvariantTriple
from .tensors import fundamental_forms

SLOPE_EPS = 1e-14


class Family(str, enum.Enum):
    ASYMPTOTIC = "asymptotic"
    U_CURVE = "u_curve"
    K_CURVE = "k_curve"
    CURVATURE_LINE_1 = "curvature_line_1"
    CURVATURE_LINE_2 = "curvature_line_2"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SurfaceCurve:
    samples: np.ndarray  # (N, 2) rows (u, v)
    family: Family

    def __post_init__(self):
        du = np.diff(self.samples[:, 0])
        if len(du) and not (np.all(du > 0) or np.all(du < 0)):
            raise ValueError("curve samples must be strictly monotone in u")


def curvature_line_slopes(triple: InvariantTriple, u: float, v: float):
    """Both roots v' of the lines-of-curvature equation, ascending."""
    ff = fundamental_forms(triple, u, v)
    g, h = ff.g, ff.h
    a = g[1, 1] * h[0, 1] - g[0, 1] * h[1, 1]
    b = g[1, 1] * h[0, 0] - g[0, 0] * h[1, 1]
    c = g[0, 1] * h[0, 0] - g[0, 0] * h[0, 1]
    if abs(a) < SLOPE_EPS:
        raise SingularSlope("lines of curvature have a vertical tangent", u, v)
    disc = np.sqrt(max(b * b - 4 * a * c, 0.0))
    # cancellation-free roots
    qq = -0.5 * (b + np.copysign(disc, b))
    r1, r2 = qq / a, c / qq if qq != 0 else -b / (2 * a)
    return tuple(sorted((float(r1), float(r2))))


def curvature_line_residual(triple: InvariantTriple, u: float, v: float, vprime: float) -> float:
    ff = fundamental_forms(triple, u, v)
    g, h = ff.g, ff.h
    return float(
        g[0, 1] * h[0, 0] - g[0, 0] * h[0, 1]
        + (g[1, 1] * h[0, 0] - g[0, 0] * h[1, 1]) * vprime
        + (g[1, 1] * h[0, 1] - g[0, 1] * h[1, 1]) * vprime**2
    )


def family_slope(triple: InvariantTriple, family, u: float, v: float) -> float:
    family = Family(family)
    if family is Family.U_CURVE:
        return 0.0
    iv = triple.values(u)
    if family is Family.ASYMPTOTIC:
        return (iv.k * v * v + iv.d1 * v + iv.d * iv.d * (iv.k - iv.lam)) / (2 * iv.d)
    if family is Family.K_CURVE:
        num = iv.d1 * (v * v - iv.d * iv.d)
        if abs(v) < SLOPE_EPS:
            if abs(iv.d1) < SLOPE_EPS:
                return 0.0
            raise SingularSlope("K-curve has a vertical tangent on the striction line", u, v)
        return num / (2 * iv.d * v)
    if family is Family.CURVATURE_LINE_1:
        return curvature_line_slopes(triple, u, v)[0]
    if family is Family.CURVATURE_LINE_2:
        return curvature_line_slopes(triple, u, v)[1]
    raise ValueError("custom curves have no intrinsic slope")


def integrate_curve(triple: InvariantTriple, family, start, u_end: float,
                    step: float = 1e-2) -> SurfaceCurve:
    """RK4 polyline of v(u) for ``family`` from ``start = (u, v)`` to ``u_end``."""
    family = Family(family)
    u, v = float(start[0]), float(start[1])
    for x in (u, u_end):
        if not triple.contains(x):
            raise DomainError(f"u={x!r} outside the domain {list(triple.domain)}")
    if step <= 0:
        raise ValueError("step must be positive")
    direction = 1.0 if u_end >= u else -1.0
    samples = [(u, v)]

    def f(uu, vv):
        return family_slope(triple, family, uu, vv)

    try:
        while direction * (u_end - u) > 1e-12:
            h = direction * min(step, abs(u_end - u))
            k1 = f(u, v)
            k2 = f(u + h / 2, v + h / 2 * k1)
            k3 = f(u + h / 2, v + h / 2 * k2)
            k4 = f(u + h, v + h * k3)
            v_next = v + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            if family is Family.K_CURVE and v * v_next < 0:
                # the K-curve ODE is singular on v = 0; a step across it is meaningless
                raise SingularSlope("K-curve reaches the striction line", u + h, 0.0)
            v = v_next
            u = u_end if abs(u_end - (u + h)) < 1e-12 else u + h
            samples.append((u, v))
    except SingularSlope as exc:
        partial = SurfaceCurve(np.array(samples), family)
        raise SingularSlope(f"{exc} (after {len(samples)} samples)", exc.u, exc.v,
                            partial) from exc
    return SurfaceCurve(np.array(samples), family)


@dataclass(frozen=True)
class Alignment:
    tangent_residual: float
    orthogonal_residual: float


def tchebychev_alignment(triple: InvariantTriple, alpha: float, u: float, v: float,
                         vprime: float) -> Alignment:
    """Tangency and orthogonality conditions of the Tchebychev vector and a directrix.

    Zero tangent residual means the field is tangent to the curve with slope
    ``vprime`` at (u, v); zero orthogonal residual means it is orthogonal.
    """
    if abs(alpha - 0.25) < 1e-12:
        raise AlphaQuarter("the Tchebychev field vanishes identically for alpha = 1/4")
    iv = triple.values(u)
    k, d, d1, lam = iv.k, iv.d, iv.d1, iv.lam
    tangent = (2 * k * v**3 + d1 * v * v + 2 * d * (d * (k - lam) - vprime) * v
               + d * d * d1)
    orthogonal = (d * lam + vprime) * (2 * k * v + d1) + 2 * d * v
    return Alignment(float(tangent), float(orthogonal))


def tchebychev_slope(triple: InvariantTriple, u: float, v: float) -> float:
    """Slope v' of the directrix through (u, v) that the Tchebychev field is tangent to."""
    iv = triple.values(u)
    if abs(v) < SLOPE_EPS:
        raise SingularSlope("Tchebychev direction is along the ruling", u, v)
    dd = iv.d * iv.d
    return (2 * iv.k * v**3 + iv.d1 * v * v + 2 * dd * (iv.k - iv.lam) * v
            + dd * iv.d1) / (2 * iv.d * v)


def orthogonal_trajectory_conditions(triple: InvariantTriple, u: float, v: float):
    """Conditions for the Tchebychev field to follow the orthogonal trajectories
    of the u-curves and of the K-curves (both vanish iff it does)."""
    iv = triple.values(u)
    k, d, d1, lam = iv.k, iv.d, iv.d1, iv.lam
    dd = d * d
    c = 1 + k * lam
    of_u_curves = 2 * c * v + d1 * lam
    of_k_curves = (2 * d1 * k * v**3 + (d1 * d1 + 4 * dd * c) * v * v
                   - 2 * dd * d1 * (k - lam) * v - dd * d1 * d1)
    return float(of_u_curves), float(of_k_curves)
