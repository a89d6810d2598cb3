"""Fundamental forms and the relative normalizations with support |K|^alpha.

All closed forms are written in terms of the invariant jets at u and the
ruling coordinate v, with w = sqrt(v^2 + delta^2) and eps = sign(delta).
Vectors given "in the frame" are component triples on (e, n, z).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .expr import Jet
from .frame import InvariantTriple, frame_at

NORMAL_CHECK_TOL = 1e-6


@dataclass(frozen=True)
class FundamentalForms:
    g: np.ndarray
    h: np.ndarray
    w: float
    K: float
    eps: float


@dataclass(frozen=True)
class PointEval:
    u: float
    v: float
    alpha: float
    w: float
    eps: float
    g: np.ndarray
    h: np.ndarray
    G: np.ndarray
    K: float
    q: float
    y_local: np.ndarray  # (A1, A2, A3) on (e, n, z)
    y: np.ndarray
    X: np.ndarray


def abs_power(x: float, p: float) -> float:
    """|x|**p as exp(p ln|x|), valid for every real p."""
    return float(np.exp(p * np.log(abs(x))))


def _scalars(triple, u, order=3):
    kappa, delta, lam = triple.jets(u, order)
    return kappa, delta, lam


def fundamental_forms(triple: InvariantTriple, u: float, v: float) -> FundamentalForms:
    kappa, delta, lam = _scalars(triple, u)
    k, d, d1, lm = float(kappa[0]), float(delta[0]), float(delta[1]), float(lam[0])
    w = float(np.hypot(v, d))
    g = np.array([[v * v + d * d * (lm * lm + 1.0), d * lm],
                  [d * lm, 1.0]])
    h = np.array([[-(k * v * v + d1 * v + d * d * (k - lm)), d],
                  [d, 0.0]]) / w
    K = -d * d / w**4
    return FundamentalForms(g, h, w, K, float(np.sign(d)))


def support_function(triple: InvariantTriple, u: float, v: float, alpha: float) -> float:
    d = float(triple.jets(u, 0)[1][0])
    w = float(np.hypot(v, d))
    return float(np.exp(alpha * np.log(d * d / w**4)))


def normal_components(triple: InvariantTriple, u: float, v: float, alpha: float) -> np.ndarray:
    """(A1, A2, A3): the relative normal on the frame (e, n, z)."""
    kappa, delta, _ = _scalars(triple, u, 1)
    k, d, d1 = float(kappa[0]), float(delta[0]), float(delta[1])
    eps = np.sign(d)
    w = float(np.hypot(v, d))
    a1 = 2 * alpha * (2 * k * v + d1) * abs_power(d, 2 * alpha - 2) / w ** (4 * alpha - 1)
    a2 = eps * (4 * alpha * v * v + d * d) * abs_power(d, 2 * alpha - 1) / w ** (4 * alpha + 1)
    a3 = (4 * alpha - 1) * abs_power(d, 2 * alpha) * v / w ** (4 * alpha + 1)
    return np.array([a1, a2, a3])


def normal_from_support(triple: InvariantTriple, u: float, v: float, alpha: float) -> np.ndarray:
    """Relative normal from the general formula -h^(ij) q_i x_j + q xi.

    Support-function derivatives come from jets of q = |K|^alpha; the result
    is in frame components.
    """
    ff = fundamental_forms(triple, u, v)
    _, delta, lam = _scalars(triple, u, 1)
    d, lm = float(delta[0]), float(lam[0])
    d2 = delta.truncate(1) * delta.truncate(1)
    q_u = (d2.power(alpha) * (d2 + v * v).power(-2 * alpha))[1]
    vj = Jet.variable(v, 1)
    q_v = ((vj * vj + d * d).power(-2 * alpha) * (d * d) ** alpha)[1]
    q = float(np.exp(alpha * np.log(abs(ff.K))))
    x_u = np.array([d * lm, v, d])
    x_v = np.array([1.0, 0.0, 0.0])
    xi = np.array([0.0, d, -v]) / ff.w
    grad = np.linalg.solve(ff.h, np.array([q_u, q_v]))
    return -(grad[0] * x_u + grad[1] * x_v) + q * xi


def relative_data(triple: InvariantTriple, u: float, v: float, alpha: float,
                  check: bool = True) -> PointEval:
    """Relative normal, covector, support function and relative metric at (u, v).

    With ``check`` the closed-form normal is compared with
    :func:`normal_from_support`; disagreement raises ConsistencyError.
    """
    ff = fundamental_forms(triple, u, v)
    q = float(np.exp(alpha * np.log(abs(ff.K))))
    comps = normal_components(triple, u, v, alpha)
    if check:
        other = normal_from_support(triple, u, v, alpha)
        err = np.max(np.abs(comps - other) / (1.0 + np.abs(other)))
        if err > NORMAL_CHECK_TOL:
            raise ConsistencyError(
                f"relative normal mismatch {err:.3g} at u={u}, v={v}, alpha={alpha}"
            )
    fp = frame_at(triple, u)
    d = float(triple.jets(u, 0)[1][0])
    xi = (d * fp.n - v * fp.z) / ff.w
    return PointEval(
        u=float(u), v=float(v), alpha=float(alpha), w=ff.w, eps=ff.eps,
        g=ff.g, h=ff.h, G=ff.h / q, K=ff.K, q=q,
        y_local=comps, y=fp.to_space(comps), X=xi / q,
    )
