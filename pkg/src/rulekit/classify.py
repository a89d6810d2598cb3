"""Surface-class predicates and numerical checks of the structural results.

Class predicates are residuals of scalar conditions on the invariants,
sampled on ``n_u`` equally spaced parameters. The proposition checks are
implications evaluated on a (u, v) grid: an antecedent that fails makes the
check vacuous, an antecedent that holds requires the consequent, and either
way the witnessed residuals are recorded.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional

import numpy as np

from . import affine, curves, relgeom
from .errors import AlphaQuarter, ConoidalSurface, SingularSlope
from .frame import InvariantTriple, frame_at
from .oracle import extract_invariants
from .tensors import relative_data

DEFAULT_TOL = 1e-7
DEFAULT_V = tuple(np.linspace(-2.0, 2.0, 9))

PREDICATES = (
    "conoidal", "right_conoid", "right_helicoid", "const_delta", "edlinger",
    "constant_slope", "asymptotic_striction", "orthoid_image", "self_affine",
    "edlinger_image",
)

PROPOSITIONS = (
    "parallel_normals_plane", "helicoid_equivalence", "edlinger_tangency",
    "tchebychev_div_rot", "affine_self_congruence", "striction_directrix",
    "affine_image_edlinger", "edlinger_pair", "mapping_f",
)

# checks that say nothing about a field which vanishes identically
_NEEDS_ALPHA = {"helicoid_equivalence", "edlinger_tangency", "tchebychev_div_rot"}
_NEEDS_KAPPA = {"affine_self_congruence", "striction_directrix", "affine_image_edlinger",
                "edlinger_pair", "mapping_f"}


@dataclass(frozen=True)
class Predicate:
    holds: bool
    max_residual: Optional[float]  # None when undefined (conoidal surface)


@dataclass
class PropositionResult:
    consistent: bool
    status: str  # holds | vacuous | violated | not_applicable
    residuals: Dict[str, float] = field(default_factory=dict)
    note: str = ""


@dataclass
class ClassificationReport:
    surface: str
    predicates: Dict[str, Predicate]
    grid: Dict[str, List[float]]
    alpha_list: List[float]
    tol: float
    propositions: Dict[str, PropositionResult] = field(default_factory=dict)

    def holds(self, name: str) -> bool:
        return self.predicates[name].holds

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "predicates": {k: asdict(p) for k, p in self.predicates.items()},
            "grid": self.grid,
            "alpha_list": self.alpha_list,
            "tol": self.tol,
            "propositions": {k: asdict(p) for k, p in self.propositions.items()},
        }


def u_samples(triple: InvariantTriple, n_u: int) -> np.ndarray:
    a, b = triple.domain
    return np.linspace(a, b, n_u)


def _maxabs(xs: Iterable[float]) -> float:
    return float(max((abs(x) for x in xs), default=0.0))


def _is_conoidal_somewhere(triple, us) -> bool:
    return any(abs(triple.values(u).k) < affine.CONOIDAL_EPS for u in us)


def predicate_residuals(triple: InvariantTriple, us) -> Dict[str, Optional[float]]:
    ivs = [triple.values(u) for u in us]
    col = {name: np.array([getattr(iv, name) for iv in ivs])
           for name in ("k", "k1", "d", "d1", "lam")}
    k, lam, d1 = col["k"], col["lam"], col["d1"]
    res: Dict[str, Optional[float]] = {
        "conoidal": _maxabs(k),
        "right_conoid": max(_maxabs(k), _maxabs(lam)),
        "right_helicoid": max(_maxabs(k), _maxabs(lam), _maxabs(d1)),
        "const_delta": _maxabs(d1),
        "edlinger": max(_maxabs(d1), _maxabs(1 + k * lam)),
        "constant_slope": _maxabs(col["k1"]),
        "asymptotic_striction": _maxabs(k - lam),
    }
    if _is_conoidal_somewhere(triple, us):
        res.update(orthoid_image=None, self_affine=None, edlinger_image=None)
    else:
        res["orthoid_image"] = _maxabs(affine.image_invariants(triple, u).lambda_star for u in us)
        res["self_affine"] = max(max(abs(r) for r in affine.self_affine_residual(triple, u)) for u in us)
        res["edlinger_image"] = affine.image_edlinger_check(triple, us).residual
    return res


def classify(triple: InvariantTriple, n_u: int = 17, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """Which classes ``triple`` belongs to, each with the largest witnessed residual."""
    if n_u < 8:
        raise ValueError(f"n_u must be at least 8, got {n_u}")
    us = u_samples(triple, n_u)
    res = predicate_residuals(triple, us)
    preds = {name: Predicate(r is not None and r <= tol, r) for name, r in res.items()}
    return ClassificationReport(
        surface=triple.name or triple.describe(),
        predicates=preds,
        grid={"u": [float(u) for u in us], "v": []},
        alpha_list=[],
        tol=tol,
    )


# -- proposition checks -----------------------------------------------------

def _implication(antecedent: bool, consequent: bool, residuals, note="") -> PropositionResult:
    if not antecedent:
        return PropositionResult(True, "vacuous", residuals, note)
    return PropositionResult(consequent, "holds" if consequent else "violated", residuals, note)


def _grid_max(fn, us, vs, skip=(SingularSlope,)) -> float:
    out = 0.0
    for u in us:
        for v in vs:
            try:
                out = max(out, abs(fn(u, v)))
            except skip:
                continue
    return float(out)


def _parallel_normals_plane(t, alpha, tol, us, vs, preds):
    """Relative normals parallel to a fixed plane  <=>  conoidal and alpha = 1/4."""
    ys = np.array([relative_data(t, u, v, alpha).y for u in us for v in vs])
    ys /= np.linalg.norm(ys, axis=1)[:, None]
    planarity = float(np.linalg.svd(ys, compute_uv=False)[-1] / math.sqrt(len(ys)))
    zs = np.array([frame_at(t, u).z for u in us])
    z_dev = float(np.max(np.linalg.norm(zs - zs[0], axis=1)))
    y_dot_z = _grid_max(lambda u, v: relative_data(t, u, v, alpha).y @ frame_at(t, u).z, us, vs)
    residuals = {"planarity": planarity, "z_deviation": z_dev, "y_dot_z": y_dot_z}
    quarter = abs(alpha - 0.25) < 1e-12
    conoidal = preds["conoidal"].holds
    parallel = planarity <= tol
    consistent = parallel == (conoidal and quarter)
    if conoidal and quarter:
        consistent = consistent and z_dev <= tol and y_dot_z <= tol
        return PropositionResult(consistent, "holds" if consistent else "violated", residuals)
    note = "" if consistent else "normals are coplanar without the stated cause"
    return PropositionResult(consistent, "vacuous" if consistent else "violated", residuals, note)


def _family_tangent(t, alpha, family, us, vs) -> float:
    def f(u, v):
        slope = curves.family_slope(t, family, u, v)
        return curves.tchebychev_alignment(t, alpha, u, v, slope).tangent_residual
    return _grid_max(f, us, vs)


def _helicoid_equivalence(t, alpha, tol, us, vs, preds):
    """Tangent to a distinguished family  <=>  J = 0  <=>  right helicoid."""
    tangency = {f"tangent_{fam}": _family_tangent(t, alpha, fam, us, vs)
                for fam in ("asymptotic", "u_curve", "k_curve")}
    pick = _grid_max(lambda u, v: relgeom.pick(t, u, v, alpha), us, vs)
    residuals = dict(tangency, pick=pick, right_helicoid=preds["right_helicoid"].max_residual)
    flags = (min(tangency.values()) <= tol, pick <= tol, preds["right_helicoid"].holds)
    consistent = len(set(flags)) == 1
    if not consistent:
        return PropositionResult(False, "violated", residuals)
    return PropositionResult(True, "holds" if flags[0] else "vacuous", residuals)


def _edlinger_tangency(t, alpha, tol, us, vs, preds):
    """Orthogonal to u-curves or K-curves, or tangent to curvature lines  =>  Edlinger."""

    def curv(u, v):
        rs = [curves.tchebychev_alignment(t, alpha, u, v, s).tangent_residual
              for s in curves.curvature_line_slopes(t, u, v)]
        return min(abs(r) for r in rs)

    orth = [curves.orthogonal_trajectory_conditions(t, u, v) for u in us for v in vs]
    residuals = {
        "orthogonal_u_curves": _maxabs(o[0] for o in orth),
        "orthogonal_k_curves": _maxabs(o[1] for o in orth),
        "curvature_line_tangent": _grid_max(curv, us, vs),
        "edlinger": preds["edlinger"].max_residual,
    }
    antecedent = min(residuals["orthogonal_u_curves"], residuals["orthogonal_k_curves"],
                     residuals["curvature_line_tangent"]) <= tol
    consequent = preds["edlinger"].holds
    if consequent:
        # on an Edlinger surface the u-curves are lines of curvature and K-curves
        residuals["u_curve_curvature_line"] = _grid_max(
            lambda u, v: curves.curvature_line_residual(t, u, v, 0.0), us, vs)
        residuals["k_curve_slope"] = _grid_max(
            lambda u, v: curves.family_slope(t, "k_curve", u, v), us, vs)
        remark = max(residuals["u_curve_curvature_line"], residuals["k_curve_slope"]) <= tol
        return PropositionResult(remark, "holds" if remark else "violated", residuals)
    return _implication(antecedent, consequent, residuals)


def _tchebychev_div_rot(t, alpha, tol, us, vs, preds):
    """Right conoid => div(0) = 0; right helicoid => div = 0; congruent Edlinger => rot = 0."""
    ivs = [t.values(u) for u in us]
    congruent = max(preds["edlinger"].max_residual, preds["constant_slope"].max_residual,
                    _maxabs(iv.lam1 for iv in ivs))
    div0 = _grid_max(lambda u, v: relgeom.field_derivatives(t, u, v, 0.0)[0], us, vs)
    div_a = _grid_max(lambda u, v: relgeom.field_derivatives(t, u, v, alpha)[0], us, vs)
    rot_a = _grid_max(lambda u, v: relgeom.field_derivatives(t, u, v, alpha)[1], us, vs)
    residuals = {"div_alpha0": div0, "div": div_a, "rot": rot_a, "congruent_edlinger": congruent}
    clauses = []
    if preds["right_conoid"].holds:
        clauses.append(div0 <= tol)
    if preds["right_helicoid"].holds and alpha != 0:
        clauses.append(div_a <= tol)
    if congruent <= tol:
        clauses.append(rot_a <= tol)
    return _implication(bool(clauses), all(clauses), residuals)


def _extracted_image_gap(t, us) -> float:
    gap = 0.0
    param = affine.image_parametrization(t)
    for u in us:
        iv = t.values(u)
        ex = extract_invariants(param, u)
        gap = max(gap, abs(ex.kappa - iv.k), abs(ex.delta - iv.d), abs(ex.lam - iv.lam))
    return float(gap)


def _affine_self_congruence(t, alpha, tol, us, vs, preds):
    """Invariants of the affine image equal those of the surface  <=>  self-congruence condition."""
    gap = _extracted_image_gap(t, us)
    residuals = {"image_invariant_gap": gap, "self_affine": preds["self_affine"].max_residual}
    congruent = gap <= tol
    consistent = congruent == preds["self_affine"].holds
    status = "violated" if not consistent else ("holds" if congruent else "vacuous")
    return PropositionResult(consistent, status, residuals)


def _striction_directrix(t, alpha, tol, us, vs, preds):
    """Striction tangent parallel (orthogonal) to the image directrix  <=>  Edlinger (kappa = lambda)."""
    par, orth = [], []
    for u in us:
        iv = t.values(u)
        s1 = np.array([iv.d * iv.lam, 0.0, iv.d])
        r1 = affine.directrix_tangent_local(t, u)
        scale = np.linalg.norm(s1) * np.linalg.norm(r1)
        par.append(np.linalg.norm(np.cross(s1, r1)) / scale)
        orth.append(s1 @ r1 / scale)
    residuals = {"parallel": _maxabs(par), "orthogonal": _maxabs(orth),
                 "edlinger": preds["edlinger"].max_residual,
                 "asymptotic_striction": preds["asymptotic_striction"].max_residual}
    is_par, is_orth = residuals["parallel"] <= tol, residuals["orthogonal"] <= tol
    consistent = (is_par == preds["edlinger"].holds
                  and is_orth == preds["asymptotic_striction"].holds)
    if not consistent:
        return PropositionResult(False, "violated", residuals)
    return PropositionResult(True, "holds" if (is_par or is_orth) else "vacuous", residuals)


def _affine_image_edlinger(t, alpha, tol, us, vs, preds):
    """Image is Edlinger  =>  constant slope and constant delta, or the u^-1, u^-2 family."""
    check = affine.image_edlinger_check(t, us, tol)
    residuals = {"edlinger_image": check.residual}
    return _implication(check.is_edlinger_image, check.branch != "none", residuals,
                        note=f"branch: {check.branch}")


def _edlinger_pair(t, alpha, tol, us, vs, preds):
    """Surface and image both Edlinger  =>  constant invariants."""
    ivs = [t.values(u) for u in us]
    spread = max(_maxabs(iv.k1 for iv in ivs), _maxabs(iv.d1 for iv in ivs),
                 _maxabs(iv.lam1 for iv in ivs))
    residuals = {"edlinger": preds["edlinger"].max_residual,
                 "edlinger_image": preds["edlinger_image"].max_residual,
                 "invariant_variation": spread}
    antecedent = preds["edlinger"].holds and preds["edlinger_image"].holds
    return _implication(antecedent, spread <= tol, residuals)


def _mapping_f(t, alpha, tol, us, vs, preds):
    """Area-preserving / conformal / isometric correspondence versus the invariant conditions."""
    ivs = [t.values(u) for u in us]
    ratio = np.array([iv.k / iv.abs_d**1.5 for iv in ivs])
    c = float(np.mean(ratio))
    area_cond = _maxabs(abs(iv.k) - iv.abs_d**1.5 for iv in ivs)
    conf_cond = max(float(np.ptp(ratio)), _maxabs(
        iv.lam - sum(affine.lambda_star_terms(iv)) / (4 * c * iv.abs_d**3.5) for iv in ivs))
    iso_cond = max(conf_cond, abs(abs(c) - 1.0))
    mr = [affine.mapping_residuals(t, u, v) for u in us for v in vs]
    residuals = {
        "area": _maxabs(m.area for m in mr), "conformal": _maxabs(m.conformal for m in mr),
        "isometry": _maxabs(m.isometry for m in mr), "area_condition": area_cond,
        "conformal_condition": conf_cond, "isometry_condition": iso_cond,
    }
    pairs = [(residuals[a] <= tol, residuals[b] <= tol)
             for a, b in (("area", "area_condition"), ("conformal", "conformal_condition"),
                          ("isometry", "isometry_condition"))]
    consistent = all(x == y for x, y in pairs)
    if consistent and pairs[2][0]:
        # an isometry of Minding preserves kappa and lambda and |delta|
        gap = _extracted_image_gap(t, us)
        residuals["image_invariant_gap"] = gap
        consistent = gap <= max(tol, 1e-6)
    if not consistent:
        return PropositionResult(False, "violated", residuals)
    return PropositionResult(True, "holds" if any(x for x, _ in pairs) else "vacuous", residuals)


_CHECKS = {
    "parallel_normals_plane": _parallel_normals_plane,
    "helicoid_equivalence": _helicoid_equivalence,
    "edlinger_tangency": _edlinger_tangency,
    "tchebychev_div_rot": _tchebychev_div_rot,
    "affine_self_congruence": _affine_self_congruence,
    "striction_directrix": _striction_directrix,
    "affine_image_edlinger": _affine_image_edlinger,
    "edlinger_pair": _edlinger_pair,
    "mapping_f": _mapping_f,
}


def proposition_suite(triple: InvariantTriple, alpha: float, tol: float = DEFAULT_TOL,
                      n_u: int = 17, v_values=DEFAULT_V,
                      only: Optional[Iterable[str]] = None) -> Dict[str, PropositionResult]:
    """Evaluate the structural results as implications on a (u, v) grid.

    Checks that are meaningless at alpha = 1/4 (the Tchebychev field vanishes)
    or for surfaces with kappa = 0 somewhere (no ruled affine image) are
    reported as ``not_applicable``; naming such a check in ``only`` raises
    AlphaQuarter or ConoidalSurface instead.
    """
    names = list(PROPOSITIONS if only is None else only)
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise KeyError(f"unknown proposition(s): {', '.join(unknown)}")
    us = u_samples(triple, n_u)
    vs = np.asarray(v_values, dtype=float)
    preds = classify(triple, max(n_u, 8), tol).predicates
    quarter = abs(alpha - 0.25) < 1e-12
    conoidal = preds["orthoid_image"].max_residual is None
    out = {}
    for name in names:
        if quarter and name in _NEEDS_ALPHA:
            if only is not None:
                raise AlphaQuarter(f"{name} is undefined for alpha = 1/4")
            out[name] = PropositionResult(True, "not_applicable", {}, "alpha = 1/4")
            continue
        if conoidal and name in _NEEDS_KAPPA:
            if only is not None:
                raise ConoidalSurface(f"{name} requires kappa != 0 on the whole domain")
            out[name] = PropositionResult(True, "not_applicable", {}, "conoidal surface")
            continue
        out[name] = _CHECKS[name](triple, alpha, tol, us, vs, preds)
    return out


def full_report(triple: InvariantTriple, alpha: float, n_u: int = 17,
                tol: float = DEFAULT_TOL, v_values=DEFAULT_V) -> ClassificationReport:
    report = classify(triple, n_u, tol)
    report.propositions = proposition_suite(triple, alpha, tol, n_u, v_values)
    report.grid["v"] = [float(v) for v in v_values]
    report.alpha_list = [float(alpha)]
    return report
