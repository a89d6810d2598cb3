"""A +1e-3 change to any single coefficient of a closed form must fail ``rulekit verify``."""

import contextlib
import io

import pytest

from rulekit import affine, cli, relgeom
from rulekit.frame import InvariantValues

SAMPLE = InvariantValues(1.0, 0.1, 0.2, 2.0, 0.3, 0.4, 0.5, 0.6, 0.7)
ARGV = ["verify", "--surface", "builtin:generic", "--nu", "3", "--nv", "3",
        "--u0", "0.2", "--u1", "3", "--tol", "1e-7"]

TARGETS = [
    (relgeom, "pick_polynomial", (SAMPLE,)),
    (relgeom, "tchebychev_polynomials", (SAMPLE,)),
    (relgeom, "divergence_polynomial", (SAMPLE, 0.0)),
    (relgeom, "rotation_polynomial", (SAMPLE, 0.0)),
    (affine, "lambda_star_terms", (SAMPLE,)),
]


def _slots(module, name, args):
    out = getattr(module, name)(*args)
    if isinstance(out[0], tuple):
        return [(i, j) for i, part in enumerate(out) for j in range(len(part))]
    return [(i,) for i in range(len(out))]


def _mutated(fn, slot):
    def wrapper(*args):
        out = fn(*args)
        if len(slot) == 2:
            parts = [list(p) for p in out]
            parts[slot[0]][slot[1]] += 1e-3
            return tuple(tuple(p) for p in parts)
        vals = list(out)
        vals[slot[0]] += 1e-3
        return tuple(vals)
    return wrapper


CASES = [(m, n, s) for m, n, a in TARGETS for s in _slots(m, n, a)]


def _verify() -> int:
    with contextlib.redirect_stdout(io.StringIO()):
        return cli.main(ARGV)


def test_unmutated_passes():
    assert _verify() == 0


@pytest.mark.parametrize("module, name, slot", CASES,
                         ids=[f"{n}{list(s)}" for _, n, s in CASES])
def test_mutation_detected(monkeypatch, module, name, slot):
    monkeypatch.setattr(module, name, _mutated(getattr(module, name), slot))
    assert _verify() == 1
