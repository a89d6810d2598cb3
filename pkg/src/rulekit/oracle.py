"""Definition-based evaluation of every derived quantity.

Nothing here uses the closed forms of :mod:`rulekit.tensors` or
:mod:`rulekit.relgeom` (the one exception is the divergence/rotation check,
which differentiates the closed contravariant Tchebychev components, as the
definitions of div and rot are statements about those components). The
ingredients are exact derivatives of the embedding and central finite
differences, with Richardson extrapolation, of compound pointwise
quantities such as the relative metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from . import relgeom
from .errors import CylindricalRuling
from .frame import InvariantTriple, embedding_jets, local_derivatives
from .relgeom import DarbouxComponents


@dataclass(frozen=True)
class FDConfig:
    step: float = 1e-4
    richardson: bool = True
    scale: bool = False  # step relative to 1 + |x|

    def __post_init__(self):
        if not 1e-7 <= self.step <= 1e-2:
            raise ValueError(f"FD step must be in [1e-7, 1e-2], got {self.step}")

    def step_at(self, x: float) -> float:
        return self.step * (1.0 + abs(x)) if self.scale else self.step


DEFAULT_FD = FDConfig()


def central_difference(f: Callable[[float], np.ndarray], x: float,
                       cfg: FDConfig = DEFAULT_FD):
    """df/dx at x; with Richardson the error is O(h^4)."""
    h = cfg.step_at(x)

    def d(hh):
        return (np.asarray(f(x + hh)) - np.asarray(f(x - hh))) / (2.0 * hh)

    if not cfg.richardson:
        return d(h)
    return (4.0 * d(0.5 * h) - d(h)) / 3.0


def one_sided_difference(f: Callable[[float], np.ndarray], x: float, direction: float,
                         cfg: FDConfig = DEFAULT_FD):
    """df/dx from samples on one side of x (direction +1 or -1); O(h^3) with Richardson."""
    h = direction * cfg.step_at(x)

    def d(hh):
        f0, f1, f2 = (np.asarray(f(x + k * hh)) for k in range(3))
        return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * hh)

    if not cfg.richardson:
        return d(h)
    return (4.0 * d(0.5 * h) - d(h)) / 3.0


def bounded_difference(f, x: float, lo: float, hi: float, cfg: FDConfig = DEFAULT_FD):
    """Central difference, switching to a one-sided stencil within a step of [lo, hi]'s ends."""
    h = cfg.step_at(x)
    if x - h < lo:
        return one_sided_difference(f, x, 1.0, cfg)
    if x + h > hi:
        return one_sided_difference(f, x, -1.0, cfg)
    return central_difference(f, x, cfg)


@dataclass(frozen=True)
class NumericForms:
    g: np.ndarray
    h: np.ndarray
    K: float
    xi: np.ndarray


def _forms(der: Dict[Tuple[int, int], np.ndarray]) -> NumericForms:
    xu, xv = der[(1, 0)], der[(0, 1)]
    normal = np.cross(xu, xv)
    xi = normal / np.linalg.norm(normal)
    g = np.array([[xu @ xu, xu @ xv], [xv @ xu, xv @ xv]])
    h = np.array([[xi @ der[(2, 0)], xi @ der[(1, 1)]],
                  [xi @ der[(1, 1)], xi @ der[(0, 2)]]])
    return NumericForms(g, h, float(np.linalg.det(h) / np.linalg.det(g)), xi)


def numeric_forms(triple: InvariantTriple, u: float, v: float) -> NumericForms:
    """First and second fundamental forms from the embedded surface."""
    return _forms(embedding_jets(triple, u, v, 2))


def local_forms(triple: InvariantTriple, u: float, v: float) -> NumericForms:
    """Same as :func:`numeric_forms`, computed in frame components."""
    return _forms(local_derivatives(triple, u, v, 2))


def _support(forms: NumericForms, alpha: float) -> float:
    return float(np.exp(alpha * np.log(abs(forms.K))))


def numeric_relative_metric(triple, u, v, alpha) -> np.ndarray:
    f = local_forms(triple, u, v)
    return f.h / _support(f, alpha)


def numeric_support_gradient(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    qu = central_difference(lambda x: _support(local_forms(triple, x, v), alpha), u, cfg)
    qv = central_difference(lambda x: _support(local_forms(triple, u, x), alpha), v, cfg)
    return np.array([float(qu), float(qv)])


def numeric_normal(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """Relative normal -h^(ij) q_i x_j + q xi with FD support derivatives (in space)."""
    der = embedding_jets(triple, u, v, 2)
    f = _forms(der)
    grad = np.linalg.solve(f.h, numeric_support_gradient(triple, u, v, alpha, cfg))
    return -(grad[0] * der[(1, 0)] + grad[1] * der[(0, 1)]) + _support(f, alpha) * f.xi


def numeric_darboux_tensor(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """A_jkl = <xi, x_jkl>/q - (dG_jk/du^l + dG_kl/du^j + dG_lj/du^k)/2."""
    der = local_derivatives(triple, u, v, 3)
    f = _forms(der)
    q = _support(f, alpha)
    dG = (
        central_difference(lambda x: numeric_relative_metric(triple, x, v, alpha), u, cfg),
        central_difference(lambda x: numeric_relative_metric(triple, u, x, alpha), v, cfg),
    )
    A = np.empty((2, 2, 2))
    for j in range(2):
        for k in range(2):
            for l in range(2):
                n_v = j + k + l
                third = f.xi @ der[(3 - n_v, n_v)]
                A[j, k, l] = third / q - 0.5 * (dG[l][j, k] + dG[j][k, l] + dG[k][l, j])
    return A


def numeric_darboux(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> DarbouxComponents:
    A = numeric_darboux_tensor(triple, u, v, alpha, cfg)
    # symmetric completion: average the stored duplicates
    a112 = (A[0, 0, 1] + A[0, 1, 0] + A[1, 0, 0]) / 3.0
    a221 = (A[1, 1, 0] + A[1, 0, 1] + A[0, 1, 1]) / 3.0
    return DarbouxComponents(float(A[0, 0, 0]), float(a112), float(a221), float(A[1, 1, 1]))


def numeric_pick(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> float:
    A = numeric_darboux(triple, u, v, alpha, cfg).tensor()
    return relgeom.pick_from_tensor(A, numeric_relative_metric(triple, u, v, alpha))


def numeric_tchebychev(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """(T^1, T^2) from the traced Darboux tensor."""
    A = numeric_darboux(triple, u, v, alpha, cfg).tensor()
    return relgeom.tchebychev_from_tensor(A, numeric_relative_metric(triple, u, v, alpha))


def numeric_tchebychev_vector(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    t = numeric_tchebychev(triple, u, v, alpha, cfg)
    der = embedding_jets(triple, u, v, 1)
    return t[0] * der[(1, 0)] + t[1] * der[(0, 1)]


def numeric_field_derivatives(triple, u, v, alpha, cfg: FDConfig = DEFAULT_FD):
    """(div, rot) from their definitions, differentiating T^i and g_ij numerically."""

    def parts(uu, vv):
        f = local_forms(triple, uu, vv)
        t1, t2 = relgeom.tchebychev_components(triple, uu, vv, alpha)
        w = np.sqrt(np.linalg.det(f.g))
        g = f.g
        return np.array([w * t1, w * t2,
                         t1 * g[0, 1] + t2 * g[1, 1],
                         t1 * g[0, 0] + t2 * g[0, 1]])

    du = central_difference(lambda x: parts(x, v), u, cfg)
    dv = central_difference(lambda x: parts(u, x), v, cfg)
    w = np.sqrt(np.linalg.det(local_forms(triple, u, v).g))
    return float((du[0] + dv[1]) / w), float((du[2] - dv[3]) / w)


# -- invariants of a ruled parametrization r(u) + t e(u) -------------------

RuledJets = Callable[[float], Tuple[Sequence[np.ndarray], Sequence[np.ndarray]]]


@dataclass(frozen=True)
class ExtractedInvariants:
    kappa: float
    delta: float
    lam: float


def _det(a, b, c) -> float:
    return float(np.dot(a, np.cross(b, c)))


def extract_invariants(param: RuledJets, u: float) -> ExtractedInvariants:
    """Fundamental invariants of r(u) + t e(u) in the arc-length gauge of e.

    ``param(u)`` returns ([r, r', r''], [e, e', e'']) with |e| = 1.
    """
    (r, r1, r2), (e, e1, e2) = param(u)
    m2 = float(e1 @ e1)
    if m2 < 1e-18:
        raise CylindricalRuling(f"|e'| vanishes at u={u!r}")
    m = np.sqrt(m2)
    kappa = _det(e, e1, e2) / m**3
    mu = float(r1 @ e1) / m2
    mu1 = float(r2 @ e1 + r1 @ e2) / m2 - float(r1 @ e1) * 2.0 * float(e1 @ e2) / m2**2
    s1 = r1 - mu1 * e - mu * e1
    delta = _det(s1, e, e1) / m2
    lam = float(s1 @ e) / (m * delta)
    return ExtractedInvariants(float(kappa), float(delta), float(lam))


def surface_parametrization(triple: InvariantTriple) -> RuledJets:
    """The synthesized surface as r = x(u, 0) with ruling e."""

    def param(u):
        der = embedding_jets(triple, u, 0.0, 3)
        return ([der[(0, 0)], der[(1, 0)], der[(2, 0)]],
                [der[(0, 1)], der[(1, 1)], der[(2, 1)]])

    return param


def numeric_image_metric(triple: InvariantTriple, u: float, v: float,
                         cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """First fundamental form of the affine normal image by FD of its points."""
    from .affine import image_point

    lo, hi = triple.domain
    xu = bounded_difference(lambda x: image_point(triple, x, v), u, lo, hi, cfg)
    xv = central_difference(lambda x: image_point(triple, u, x), v, cfg)
    return np.array([[xu @ xu, xu @ xv], [xv @ xu, xv @ xv]])
