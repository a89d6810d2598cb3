"""Closed forms against the definition-based oracle, summarized as a residual table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from . import affine, oracle, relgeom, tensors
from .frame import InvariantTriple, frame_at


@dataclass(frozen=True)
class CheckRow:
    name: str
    max_residual: float
    tol: float
    points: int

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tol)


def relative_residual(a, b) -> float:
    """max |a - b| / (1 + |b|), elementwise."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b))))


def _pointwise_checks(t: InvariantTriple, alpha: float) -> Dict[str, Callable[[float, float], float]]:
    def forms(u, v):
        ff = tensors.fundamental_forms(t, u, v)
        ref = oracle.local_forms(t, u, v)
        return max(relative_residual(ff.g, ref.g), relative_residual(ff.h, ref.h),
                   relative_residual(ff.K, ref.K))

    def metric(u, v):
        pe = tensors.relative_data(t, u, v, alpha, check=False)
        return relative_residual(pe.G, oracle.numeric_relative_metric(t, u, v, alpha))

    def normal(u, v):
        pe = tensors.relative_data(t, u, v, alpha, check=False)
        return relative_residual(pe.y, oracle.numeric_normal(t, u, v, alpha))

    def darboux(u, v):
        a = relgeom.darboux(t, u, v, alpha).tensor()
        return relative_residual(a, oracle.numeric_darboux(t, u, v, alpha).tensor())

    def pick(u, v):
        return relative_residual(relgeom.pick(t, u, v, alpha), oracle.numeric_pick(t, u, v, alpha))

    def tcomp(u, v):
        return relative_residual(relgeom.tchebychev_components(t, u, v, alpha),
                                 oracle.numeric_tchebychev(t, u, v, alpha))

    def tvec(u, v):
        vec = frame_at(t, u).to_space(relgeom.tchebychev_local(t, u, v, alpha))
        return relative_residual(vec, oracle.numeric_tchebychev_vector(t, u, v, alpha))

    def divrot(u, v):
        return relative_residual(relgeom.field_derivatives(t, u, v, alpha),
                                 oracle.numeric_field_derivatives(t, u, v, alpha))

    return {
        "g, h, K": forms, "relative metric G": metric, "relative normal y": normal,
        "Darboux tensor A": darboux, "Pick invariant J": pick,
        "Tchebychev T^1, T^2": tcomp, "Tchebychev vector T": tvec, "div, rot": divrot,
    }


def _per_u_checks(t: InvariantTriple) -> Dict[str, Callable[[float], float]]:
    surf_param = oracle.surface_parametrization(t)

    def frame_defect(u):
        m = frame_at(t, u).matrix
        return float(np.max(np.abs(m @ m.T - np.eye(3))))

    def invariants(u):
        iv = t.values(u)
        ex = oracle.extract_invariants(surf_param, u)
        return relative_residual((ex.kappa, ex.delta, ex.lam), (iv.k, iv.d, iv.lam))

    return {"frame orthonormality": frame_defect, "invariant round trip": invariants}


def _affine_checks(t: InvariantTriple) -> Dict[str, Callable[[float, float], float]]:
    img_param = affine.image_parametrization(t)

    def image_invariants(u, v):
        inv = affine.image_invariants(t, u)
        ex = oracle.extract_invariants(img_param, u)
        return relative_residual((inv.kappa_star, inv.delta_star, inv.lambda_star),
                                 (ex.kappa, ex.delta, ex.lam))

    def image_metric(u, v):
        return relative_residual(affine.image_metric(t, u, v), oracle.numeric_image_metric(t, u, v))

    return {"affine image invariants": image_invariants, "affine image metric g*": image_metric}


def run_verification(t: InvariantTriple, alpha: float, us: Sequence[float],
                     vs: Sequence[float], tol: float) -> List[CheckRow]:
    """Every closed form against its oracle on the grid ``us`` x ``vs``.

    The affine-image rows are included only when kappa != 0 on every sample.
    """
    rows = []
    for name, fn in _pointwise_checks(t, alpha).items():
        rows.append(CheckRow(name, max(fn(u, v) for u in us for v in vs), tol, len(us) * len(vs)))
    for name, fn in _per_u_checks(t).items():
        rows.append(CheckRow(name, max(fn(u) for u in us), tol, len(us)))
    if all(abs(t.values(u).k) >= affine.CONOIDAL_EPS for u in us):
        for name, fn in _affine_checks(t).items():
            # the invariants do not depend on v
            vv = vs if name.endswith("g*") else vs[:1]
            rows.append(CheckRow(name, max(fn(u, v) for u in us for v in vv), tol,
                                 len(us) * len(vv)))
    return rows


def format_table(rows: Sequence[CheckRow]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{'check':<{width}}  {'max residual':>12}  {'tol':>8}  {'points':>6}  result"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {r.max_residual:12.3e}  {r.tol:8.1e}  {r.points:6d}  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
