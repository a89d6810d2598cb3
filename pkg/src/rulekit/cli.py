"""Command line interface: ``rulekit <command> --surface ...``.

Exit codes: 0 success, 1 verification failure, 2 input or flag error,
3 geometry error (torsal ruling, conoidal surface where kappa != 0 is needed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from . import __version__, affine, curves, relgeom, tensors
from .classify import full_report
from .errors import ConsistencyError, GeometryError, InputError, SingularSlope
from .formats import load_rsd, obj_text
from .frame import InvariantTriple, frame_at
from .verify import format_table, run_verification
from .zoo import builtin

FAMILIES = [f.value for f in curves.Family if f is not curves.Family.CUSTOM]


class FlagError(InputError):
    pass


def load_surface(spec: str) -> InvariantTriple:
    if spec.startswith("builtin:"):
        try:
            return builtin(spec[len("builtin:"):])
        except KeyError as exc:
            raise FlagError(exc.args[0]) from None
    return load_rsd(spec)


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"need at least 2 samples, got {n}")
    return n


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", required=True,
                        help="path to a .rsd file or builtin:<name>")
    common.add_argument("--alpha", type=float, default=0.0, help="support function exponent")
    common.add_argument("--u0", type=float, help="default: start of the domain")
    common.add_argument("--u1", type=float, help="default: end of the domain")
    common.add_argument("--v0", type=float, default=-2.0)
    common.add_argument("--v1", type=float, default=2.0)
    common.add_argument("--nu", type=_positive_int, default=33)
    common.add_argument("--nv", type=_positive_int, default=33)
    common.add_argument("--tol", type=_positive_float, default=1e-5)
    common.add_argument("--out", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="rulekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rulekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common], help="sample K, J, T, div and rot on a grid")
    sub.add_parser("classify", parents=[common], help="surface classes and proposition checks")
    sub.add_parser("verify", parents=[common], help="closed forms against the oracle")
    mesh = sub.add_parser("mesh", parents=[common], help="export an OBJ mesh")
    mesh.add_argument("--target", choices=["base", "affine"], default="base")
    crv = sub.add_parser("curves", parents=[common], help="integrate a curve family")
    crv.add_argument("--family", choices=FAMILIES, required=True)
    sub.add_parser("map-check", parents=[common], help="residuals of the map to the affine image")
    return parser


class Grid:
    def __init__(self, t: InvariantTriple, args):
        a, b = t.domain
        self.u0 = a if args.u0 is None else args.u0
        self.u1 = b if args.u1 is None else args.u1
        self.v0, self.v1, self.nu, self.nv = args.v0, args.v1, args.nu, args.nv
        if not self.u0 < self.u1:
            raise FlagError(f"--u0 must be below --u1, got {self.u0} and {self.u1}")
        if not (t.contains(self.u0) and t.contains(self.u1)):
            raise FlagError(f"[{self.u0}, {self.u1}] is not inside the domain [{a}, {b}]")
        if not self.v0 < self.v1:
            raise FlagError(f"--v0 must be below --v1, got {self.v0} and {self.v1}")
        self.us = np.linspace(self.u0, self.u1, self.nu)
        self.vs = np.linspace(self.v0, self.v1, self.nv)

    def to_dict(self) -> dict:
        return {"u0": self.u0, "u1": self.u1, "nu": self.nu,
                "v0": self.v0, "v1": self.v1, "nv": self.nv}


def _num(x) -> float:
    # shortest round-trip repr; fold -0.0 into 0.0
    return float(x) + 0.0


def _surface_name(t: InvariantTriple, spec: str) -> str:
    return t.name or spec


def cmd_eval(t, grid, args) -> tuple:
    samples = []
    for u in grid.us:
        fp = frame_at(t, u)
        for v in grid.vs:
            local = relgeom.tchebychev_local(t, u, v, args.alpha)
            div, rot = relgeom.field_derivatives(t, u, v, args.alpha)
            samples.append({
                "u": _num(u), "v": _num(v),
                "K": _num(tensors.fundamental_forms(t, u, v).K),
                "J": _num(relgeom.pick(t, u, v, args.alpha)),
                "T": [_num(x) for x in fp.to_space(local)],
                "div": _num(div), "rot": _num(rot),
            })
    doc = {"surface": _surface_name(t, args.surface), "alpha": args.alpha,
           "grid": grid.to_dict(), "samples": samples,
           "meta": {"version": __version__, "tol": args.tol}}
    return 0, json.dumps(doc, indent=1) + "\n"


def cmd_classify(t, grid, args) -> tuple:
    report = full_report(t, args.alpha, n_u=max(grid.nu, 8), tol=args.tol, v_values=grid.vs)
    doc = report.to_dict()
    doc["surface"] = _surface_name(t, args.surface)
    return 0, json.dumps(doc, indent=1) + "\n"


def cmd_verify(t, grid, args) -> tuple:
    rows = run_verification(t, args.alpha, grid.us, grid.vs, args.tol)
    code = 0 if all(r.passed for r in rows) else 1
    return code, format_table(rows)


def cmd_mesh(t, grid, args) -> tuple:
    pts = np.empty((grid.nu, grid.nv, 3))
    for i, u in enumerate(grid.us):
        fp = frame_at(t, u)
        if args.target == "affine":
            affine.image_invariants(t, u)  # raises ConoidalSurface where the image degenerates
        for j, v in enumerate(grid.vs):
            if args.target == "base":
                pts[i, j] = fp.s + v * fp.e
            else:
                pts[i, j] = affine.image_point(t, u, v)
    return 0, obj_text(pts)


def cmd_curves(t, grid, args) -> tuple:
    step = (grid.u1 - grid.u0) / (grid.nu - 1)
    out = []
    for v in grid.vs:
        try:
            c = curves.integrate_curve(t, args.family, (grid.u0, v), grid.u1, step)
            complete, note = True, ""
        except SingularSlope as exc:
            c, complete, note = exc.partial, False, str(exc)
        out.append({"start": [_num(grid.u0), _num(v)], "complete": complete, "note": note,
                    "samples": [[_num(a), _num(b)] for a, b in c.samples]})
    doc = {"surface": _surface_name(t, args.surface), "family": args.family,
           "grid": grid.to_dict(), "curves": out}
    return 0, json.dumps(doc, indent=1) + "\n"


def cmd_map_check(t, grid, args) -> tuple:
    samples = []
    for u in grid.us:
        for v in grid.vs:
            m = affine.mapping_residuals(t, u, v)
            samples.append({"u": _num(u), "v": _num(v), "area": _num(m.area),
                            "conformal": _num(m.conformal), "isometry": _num(m.isometry)})
    doc = {
        "surface": _surface_name(t, args.surface), "grid": grid.to_dict(),
        "eps0": _num(np.sign(t.values(grid.us[0]).k)),
        "max": {k: max(abs(s[k]) for s in samples) for k in ("area", "conformal", "isometry")},
        "samples": samples,
    }
    return 0, json.dumps(doc, indent=1) + "\n"


COMMANDS = {
    "eval": cmd_eval, "classify": cmd_classify, "verify": cmd_verify,
    "mesh": cmd_mesh, "curves": cmd_curves, "map-check": cmd_map_check,
}


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise FlagError(f"cannot write {path}: {exc.strerror}") from None


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        t = load_surface(args.surface)
        grid = Grid(t, args)
        code, text = COMMANDS[args.command](t, grid, args)
        _emit(text, args.out)
        if args.command == "verify" and args.out is not None:
            sys.stdout.write(text)
        return code
    except InputError as exc:
        print(f"rulekit: error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"rulekit: geometry error: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"rulekit: consistency error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
