"""The affine normal image of a ruled surface.

The equiaffine normal (support |K|^(1/4)) of x = s + v e is

    x* = eps |delta|^(-1/2) n + (2 kappa v + delta')/2 |delta|^(-3/2) e,

again a ruled surface with rulings parallel to e when kappa != 0. Writing it
as x* = a e + b n + v c e with frame coefficients

    a = delta' |delta|^(-3/2) / 2,   b = eps |delta|^(-1/2),   c = kappa |delta|^(-3/2)

lets the exact frame calculus of :mod:`rulekit.frame` produce its derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConoidalSurface
from .expr import Jet
from .frame import (InvariantTriple, frame_at, frame_derivative, ruling, surface,
                    values)

CONOIDAL_EPS = 1e-12


@dataclass(frozen=True)
class ImageInvariants:
    kappa_star: float
    delta_star: float
    lambda_star: float
    directrix: np.ndarray
    striction: np.ndarray


@dataclass(frozen=True)
class AffineImageData:
    point: np.ndarray
    directrix: np.ndarray
    striction: np.ndarray
    kappa_star: float
    delta_star: float
    lambda_star: float
    g_star: np.ndarray


@dataclass(frozen=True)
class MappingResiduals:
    area: float
    conformal: float
    isometry: float
    eps0: float


def image_coefficients(triple: InvariantTriple, u: float, order: int = 2):
    """Jets of (a, b, c) at u; ``order`` is at most 2 since a involves delta'."""
    kappa, delta, _ = triple.jets(u, order + 1)
    eps = 1.0 if float(delta[0]) > 0 else -1.0
    abs_d = delta * eps
    a = 0.5 * delta.derivative() * abs_d.truncate(order).power(-1.5)
    b = eps * abs_d.truncate(order).power(-0.5)
    c = kappa.truncate(order) * abs_d.truncate(order).power(-1.5)
    return a, b, c


def _require_non_conoidal(kappa: float, u: float):
    if abs(kappa) < CONOIDAL_EPS:
        raise ConoidalSurface(f"kappa = {kappa:g} at u={u!r}: the affine image is not a ruled surface")


def image_point(triple: InvariantTriple, u: float, v: float) -> np.ndarray:
    a, b, c = image_coefficients(triple, u, 0)
    fp = frame_at(triple, u)
    return fp.to_space([float(a[0]) + v * float(c[0]), float(b[0]), 0.0])


def directrix_tangent_local(triple: InvariantTriple, u: float) -> np.ndarray:
    """r*' on the frame (e, n, z), where r* = b n."""
    kappa, _, _ = triple.jets(u, 1)
    _, b, _ = image_coefficients(triple, u, 1)
    zero = Jet.constant(0.0, 1)
    return values(frame_derivative((zero, b, zero), kappa.truncate(1)))


def image_invariants(triple: InvariantTriple, u: float) -> ImageInvariants:
    iv = triple.values(u)
    _require_non_conoidal(iv.k, u)
    fp = frame_at(triple, u)
    b = iv.eps * iv.abs_d ** -0.5
    a = 0.5 * iv.d1 * iv.abs_d ** -1.5
    num = lambda_star_terms(iv)
    return ImageInvariants(
        kappa_star=iv.k,
        delta_star=iv.eps * iv.k * iv.abs_d ** -0.5,
        lambda_star=sum(num) / (4 * iv.d * iv.d * iv.k),
        directrix=b * fp.n,
        striction=a * fp.e + b * fp.n,
    )


def lambda_star_terms(iv) -> Sequence[float]:
    """Numerator terms 2 delta delta'', -3 delta'^2, -4 delta^2 of lambda*."""
    return (2 * iv.d * iv.d2, -3 * iv.d1 * iv.d1, -4 * iv.d * iv.d)


def image_metric(triple: InvariantTriple, u: float, v: float) -> np.ndarray:
    iv = triple.values(u)
    _require_non_conoidal(iv.k, u)
    ad = iv.abs_d
    bracket = sum(lambda_star_terms(iv)) / 4 + (2 * iv.d * iv.k1 - 3 * iv.d1 * iv.k) * v / 2
    g11 = ad**-5 * bracket**2 + iv.k**2 * v * v * ad**-3 + iv.k**2 / ad
    g12 = iv.eps * iv.k * ad**-4 * bracket
    g22 = iv.k**2 * ad**-3
    return np.array([[g11, g12], [g12, g22]])


def image_data(triple: InvariantTriple, u: float, v: float) -> AffineImageData:
    inv = image_invariants(triple, u)
    return AffineImageData(
        point=image_point(triple, u, v), directrix=inv.directrix,
        striction=inv.striction, kappa_star=inv.kappa_star,
        delta_star=inv.delta_star, lambda_star=inv.lambda_star,
        g_star=image_metric(triple, u, v),
    )


def self_affine_residual(triple: InvariantTriple, u: float):
    """(r1, r2); both vanish iff the surface is congruent to its affine image."""
    iv = triple.values(u)
    _require_non_conoidal(iv.k, u)
    r1 = iv.k - iv.abs_d**1.5
    r2 = iv.lam - sum(lambda_star_terms(iv)) / (4 * iv.abs_d**3.5)
    return float(r1), float(r2)


@dataclass(frozen=True)
class EdlingerImageCheck:
    is_edlinger_image: bool
    branch: str
    residual: float  # max of |delta*'| and |1 + kappa* lambda*| over the samples


def image_edlinger_check(triple: InvariantTriple, u_samples, tol: float = 1e-8) -> EdlingerImageCheck:
    """Is the affine image an Edlinger surface, and through which branch?

    ``branch`` is ``const_slope_const_delta``, ``eq48`` (kappa = c0/u,
    delta = c1/u^2) or ``none``.
    """
    us = np.asarray(u_samples, dtype=float)
    residual = 0.0
    k1, d1, c0, c1 = [], [], [], []
    for u in us:
        kappa, delta, _ = triple.jets(u, 1)
        iv = triple.values(u)
        _require_non_conoidal(iv.k, u)
        d_star = iv.eps * kappa * (delta * iv.eps).power(-0.5)
        inv = image_invariants(triple, u)
        residual = max(residual, abs(float(d_star[1])),
                       abs(1 + inv.kappa_star * inv.lambda_star))
        k1.append(iv.k1)
        d1.append(iv.d1)
        c0.append(iv.k * u)
        c1.append(iv.d * u * u)
    if residual > tol:
        return EdlingerImageCheck(False, "none", residual)
    if max(np.max(np.abs(k1)), np.max(np.abs(d1))) <= tol:
        return EdlingerImageCheck(True, "const_slope_const_delta", residual)
    spread = max(np.ptp(c0) / (1 + abs(np.mean(c0))), np.ptp(c1) / (1 + abs(np.mean(c1))))
    if spread <= tol:
        return EdlingerImageCheck(True, "eq48", residual)
    return EdlingerImageCheck(True, "none", residual)


def mapping_residuals(triple: InvariantTriple, u: float, v: float) -> MappingResiduals:
    """Residuals of the rulings-preserving map x(u, v) -> x*(u, v).

    ``area`` is det g - det g*; ``conformal`` the largest pairwise difference
    of the ratios g*_ij / g_ij (the mixed ratio is skipped where g_12 ~ 0);
    ``isometry`` adds |ratio - 1|.
    """
    from .tensors import fundamental_forms

    iv = triple.values(u)
    _require_non_conoidal(iv.k, u)
    g = fundamental_forms(triple, u, v).g
    gs = image_metric(triple, u, v)
    ratios = [gs[0, 0] / g[0, 0], gs[1, 1] / g[1, 1]]
    if abs(g[0, 1]) >= 1e-12:
        ratios.append(gs[0, 1] / g[0, 1])
    conformal = max(abs(x - y) for x in ratios for y in ratios)
    return MappingResiduals(
        area=float(np.linalg.det(g) - np.linalg.det(gs)),
        conformal=float(conformal),
        isometry=float(conformal + abs(ratios[1] - 1.0)),
        eps0=float(np.sign(iv.k)),
    )


def image_parametrization(triple: InvariantTriple):
    """Affine image as r*(u) + t e(u) with r* = x*(u, 0), for invariant extraction."""

    def param(u):
        kappa, _, _ = triple.jets(u, 3)
        a, b, _ = image_coefficients(triple, u, 2)
        zero = Jet.constant(0.0, 2)
        r = [(a, b, zero)]
        e = [ruling(2)]
        for _ in range(2):
            r.append(frame_derivative(r[-1], kappa))
            e.append(frame_derivative(e[-1], kappa))
        fp = surface(triple).frame(u)
        return ([fp.to_space(values(x)) for x in r], [fp.to_space(values(x)) for x in e])

    return param
