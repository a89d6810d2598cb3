"""Surface definition files (.rsd) and Wavefront OBJ export."""

from __future__ import annotations

import ast
import re
from pathlib import Path

import numpy as np

from .errors import InputError, SurfaceFileError
from .frame import TWO_PI, InvariantTriple
from .expr import parse

KEYS = ("kappa", "delta", "lambda", "domain")
_ASSIGN = re.compile(r"^\s*([A-Za-z_]+)\s*=\s*(.*?)\s*$")


def parse_rsd(text: str, name: str = "") -> InvariantTriple:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    found = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _ASSIGN.match(line)
        if m is None:
            raise SurfaceFileError(f"line {lineno}: expected 'key = value'")
        key, value = m.groups()
        if key not in KEYS:
            raise SurfaceFileError(f"line {lineno}: unknown key {key!r}")
        if key in found:
            raise SurfaceFileError(f"line {lineno}: duplicate key {key!r}")
        found[key] = (lineno, value)
    for key in KEYS[:3]:
        if key not in found:
            raise SurfaceFileError(f"missing mandatory key {key!r}")
    exprs = {}
    for key in KEYS[:3]:
        lineno, value = found[key]
        try:
            exprs[key] = parse(value)
        except InputError as exc:
            raise SurfaceFileError(f"line {lineno} ({key}): {exc}") from exc
    domain = (0.0, TWO_PI)
    if "domain" in found:
        lineno, value = found["domain"]
        domain = _parse_domain(value, lineno)
    try:
        return InvariantTriple(exprs["kappa"], exprs["delta"], exprs["lambda"], domain, name=name)
    except ValueError as exc:
        raise SurfaceFileError(f"line {found.get('domain', (0,))[0]}: {exc}") from exc


def _parse_domain(value: str, lineno: int):
    try:
        lo, hi = ast.literal_eval(value)
        return float(lo), float(hi)
    except (ValueError, SyntaxError, TypeError) as exc:
        raise SurfaceFileError(f"line {lineno}: domain must look like [a, b]") from exc


def load_rsd(path) -> InvariantTriple:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SurfaceFileError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_rsd(text, name=path.stem)


def format_rsd(triple: InvariantTriple) -> str:
    from .expr import to_text

    lo, hi = triple.domain
    return (f"kappa = {to_text(triple.kappa)}\n"
            f"delta = {to_text(triple.delta)}\n"
            f"lambda = {to_text(triple.lam)}\n"
            f"domain = [{lo!r}, {hi!r}]\n")


def _fmt(x: float) -> str:
    return np.format_float_positional(x, precision=9, unique=False, fractional=False, trim="k")


def obj_text(points: np.ndarray) -> str:
    """OBJ text for a (nu, nv, 3) grid of points, two triangles per quad."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 3 or points.shape[2] != 3 or min(points.shape[:2]) < 2:
        raise ValueError("expected a grid of shape (nu, nv, 3) with nu, nv >= 2")
    nu, nv = points.shape[:2]
    lines = [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in points.reshape(-1, 3)]

    def idx(i, j):
        return i * nv + j + 1

    for i in range(nu - 1):
        for j in range(nv - 1):
            lines.append(f"f {idx(i, j)} {idx(i + 1, j)} {idx(i + 1, j + 1)}")
            lines.append(f"f {idx(i, j)} {idx(i + 1, j + 1)} {idx(i, j + 1)}")
    return "\n".join(lines) + "\n"


def export_obj(points: np.ndarray, path) -> None:
    Path(path).write_text(obj_text(points), encoding="ascii")


def read_obj_vertices(path) -> np.ndarray:
    rows = [line.split()[1:4] for line in Path(path).read_text().splitlines()
            if line.startswith("v ")]
    return np.array(rows, dtype=float)
