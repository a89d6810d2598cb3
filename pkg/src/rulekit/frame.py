"""Ruled surfaces synthesized from their fundamental invariants.

A skew ruled surface is x(u, v) = s(u) + v e(u), where u is arc length on the
spherical curve e(u) and s(u) is the line of striction. Its moving frame
(e, n, z) with n = e' and z = e x n satisfies

    e' = n,    n' = -e + kappa z,    z' = -kappa n,    s' = delta (lambda e + z),

so (kappa, delta, lambda) determine the surface up to a rigid motion. We fix
the motion by starting from the standard basis at the origin at ``u_min``.

Two routes to the geometry live here:

* the integrated frame (RK4 with per-step re-orthonormalization, cubic
  Hermite dense output), which places the surface in space, and
* exact u-derivatives expressed in the moving frame, obtained by applying the
  frame equations recursively to jets of the invariants. Inner products of
  such vectors do not depend on where the frame sits, so everything metric
  can be computed from them without integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from .errors import DomainError, TorsalRuling
from .expr import Expression, Jet, eval_jet, parse, to_text

DELTA_FLOOR = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class InvariantTriple:
    """Conical curvature, parameter of distribution and lambda = cot(striction)."""

    kappa: Expression
    delta: Expression
    lam: Expression
    domain: Tuple[float, float] = (0.0, TWO_PI)
    delta_floor: float = DELTA_FLOOR
    name: str = field(default="", compare=False)

    def __post_init__(self):
        a, b = (float(x) for x in self.domain)
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise DomainError(f"domain must be a finite interval [a, b] with a < b, got {self.domain}")
        object.__setattr__(self, "domain", (a, b))

    @classmethod
    def from_text(cls, kappa: str, delta: str, lam: str,
                  domain=(0.0, TWO_PI), name: str = "") -> "InvariantTriple":
        return cls(parse(kappa), parse(delta), parse(lam), domain, name=name)

    def describe(self) -> str:
        return (f"kappa = {to_text(self.kappa)}, delta = {to_text(self.delta)}, "
                f"lambda = {to_text(self.lam)}, domain = [{self.domain[0]!r}, {self.domain[1]!r}]")

    def jets(self, u, order: int = 3) -> Tuple[Jet, Jet, Jet]:
        """(kappa, delta, lambda) jets at ``u``; raises TorsalRuling if delta ~ 0."""
        k = eval_jet(self.kappa, u, order)
        d = eval_jet(self.delta, u, order)
        lam = eval_jet(self.lam, u, order)
        if np.any(np.abs(d.value) < self.delta_floor):
            raise TorsalRuling(f"|delta| < {self.delta_floor:g} at u={u!r}")
        return k, d, lam

    def values(self, u: float) -> "InvariantValues":
        kappa, delta, lam = self.jets(u, 3)
        return InvariantValues(
            *(float(c) for c in kappa.coeffs[:3]),
            *(float(c) for c in delta.coeffs),
            *(float(c) for c in lam.coeffs[:2]),
        )

    def contains(self, u: float) -> bool:
        a, b = self.domain
        slack = 1e-12 * (1.0 + b - a)
        return a - slack <= u <= b + slack


@dataclass(frozen=True)
class InvariantValues:
    """Invariants and the derivatives the closed forms use, at one u."""

    k: float
    k1: float
    k2: float
    d: float
    d1: float
    d2: float
    d3: float
    lam: float
    lam1: float

    @property
    def eps(self) -> float:
        return 1.0 if self.d > 0 else -1.0

    @property
    def abs_d(self) -> float:
        return abs(self.d)


@dataclass(frozen=True)
class FramePoint:
    u: float
    e: np.ndarray
    n: np.ndarray
    z: np.ndarray
    s: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """Rows e, n, z; ``comps @ matrix`` maps frame components to space."""
        return np.array([self.e, self.n, self.z])

    def to_space(self, comps) -> np.ndarray:
        return np.asarray(comps, dtype=float) @ self.matrix


def _orthonormalize(frame: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the rows e, n, z."""
    e = frame[0] / np.linalg.norm(frame[0])
    n = frame[1] - (frame[1] @ e) * e
    n /= np.linalg.norm(n)
    z = frame[2] - (frame[2] @ e) * e
    z -= (z @ n) * n
    z /= np.linalg.norm(z)
    return np.array([e, n, z])


def _rhs(state: np.ndarray, kappa: float, delta: float, lam: float) -> np.ndarray:
    e, n, z = state[0], state[1], state[2]
    return np.array([n, kappa * z - e, -kappa * n, delta * (lam * e + z)])


class RuledSurface:
    """Integrated realization of an invariant triple.

    The node cache is filled in the constructor; afterwards every query is
    read-only.
    """

    def __init__(self, triple: InvariantTriple):
        self.triple = triple
        a, b = triple.domain
        span = b - a
        h_max = min(1e-3, span / 1024.0)
        self.n_steps = int(math.ceil(span / h_max - 1e-9))
        self.h = span / self.n_steps
        self.u_min = a
        self.u_max = b
        self._integrate()

    def _integrate(self):
        t = self.triple
        half = self.u_min + 0.5 * self.h * np.arange(2 * self.n_steps + 1)
        kap = np.asarray(eval_jet(t.kappa, half).value, dtype=float)
        dl = np.asarray(eval_jet(t.delta, half).value, dtype=float)
        lam = np.asarray(eval_jet(t.lam, half).value, dtype=float)
        small = np.abs(dl) < t.delta_floor
        if np.any(small):
            raise TorsalRuling(
                f"|delta| < {t.delta_floor:g} at u={half[np.argmax(small)]!r}"
            )
        if np.any(np.sign(dl) != np.sign(dl[0])):
            raise TorsalRuling("delta changes sign on the domain")
        self.eps = 1.0 if dl[0] > 0 else -1.0

        h = self.h
        states = np.empty((self.n_steps + 1, 4, 3))
        derivs = np.empty_like(states)
        y = np.zeros((4, 3))
        y[:3] = np.eye(3)
        states[0] = y
        derivs[0] = _rhs(y, kap[0], dl[0], lam[0])
        for k in range(self.n_steps):
            i = 2 * k
            k1 = derivs[k]
            k2 = _rhs(y + 0.5 * h * k1, kap[i + 1], dl[i + 1], lam[i + 1])
            k3 = _rhs(y + 0.5 * h * k2, kap[i + 1], dl[i + 1], lam[i + 1])
            k4 = _rhs(y + h * k3, kap[i + 2], dl[i + 2], lam[i + 2])
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            y[:3] = _orthonormalize(y[:3])
            states[k + 1] = y
            derivs[k + 1] = _rhs(y, kap[i + 2], dl[i + 2], lam[i + 2])
        self._states = states
        self._derivs = derivs

    def frame(self, u: float) -> FramePoint:
        u = float(u)
        if not self.triple.contains(u):
            raise DomainError(f"u={u!r} outside the domain {list(self.triple.domain)}")
        x = (u - self.u_min) / self.h
        k = min(max(int(math.floor(x)), 0), self.n_steps - 1)
        t = min(max(x - k, 0.0), 1.0)
        t2, t3 = t * t, t * t * t
        h00 = 2 * t3 - 3 * t2 + 1
        h10 = t3 - 2 * t2 + t
        h01 = -2 * t3 + 3 * t2
        h11 = t3 - t2
        y = (h00 * self._states[k] + h10 * self.h * self._derivs[k]
             + h01 * self._states[k + 1] + h11 * self.h * self._derivs[k + 1])
        f = _orthonormalize(y[:3])
        return FramePoint(u, f[0], f[1], f[2], y[3].copy())


@lru_cache(maxsize=64)
def surface(triple: InvariantTriple) -> RuledSurface:
    """Cached integrated surface for ``triple``."""
    return RuledSurface(triple)


def frame_at(triple: InvariantTriple, u: float) -> FramePoint:
    return surface(triple).frame(u)


# -- exact derivatives in the moving frame ---------------------------------

LocalVector = Tuple[Jet, Jet, Jet]


def frame_derivative(vec: LocalVector, kappa: Jet) -> LocalVector:
    """u-derivative of a e + b n + c z, one jet order lost."""
    a, b, c = vec
    order = a.order - 1
    k = kappa.truncate(order)
    bt, ct = b.truncate(order), c.truncate(order)
    return (
        a.derivative() - bt,
        b.derivative() + a.truncate(order) - k * ct,
        c.derivative() + k * bt,
    )


def values(vec: LocalVector) -> np.ndarray:
    return np.array([float(j.value) for j in vec])


def striction_tangent(kappa: Jet, delta: Jet, lam: Jet) -> LocalVector:
    """s' = delta (lambda e + z) with jets of the given order."""
    zero = Jet.constant(0.0, delta.order)
    return (delta * lam, zero, delta)


def ruling(order: int) -> LocalVector:
    one = Jet.constant(1.0, order)
    zero = Jet.constant(0.0, order)
    return (one, zero, zero)


def local_derivatives(triple: InvariantTriple, u: float, v: float,
                      order: int = 3) -> Dict[Tuple[int, int], np.ndarray]:
    """Partial derivatives of x(u, v) in frame components, excluding the point.

    Keys are (i, j) for d^(i+j) x / du^i dv^j with 1 <= i + j <= order. No
    integration is involved, so ``u`` may lie slightly outside the domain as
    long as the invariants evaluate there.
    """
    kappa, delta, lam = triple.jets(u, 3)
    s_d = [striction_tangent(kappa, delta, lam)]
    e_d = [ruling(3)]
    for _ in range(order):
        e_d.append(frame_derivative(e_d[-1], kappa))
    for _ in range(order - 1):
        s_d.append(frame_derivative(s_d[-1], kappa))
    out = {}
    for i in range(0, order + 1):
        for j in range(0, order + 1 - i):
            if i + j == 0:
                continue
            if j >= 2:
                out[(i, j)] = np.zeros(3)
            elif j == 1:
                out[(i, j)] = values(e_d[i])
            else:
                out[(i, j)] = values(s_d[i - 1]) + v * values(e_d[i])
    return out


def embedding_jets(triple: InvariantTriple, u: float, v: float,
                   order: int = 3) -> Dict[Tuple[int, int], np.ndarray]:
    """Partial derivatives of x(u, v) in space, keyed (i, j); (0, 0) is the point."""
    if not 0 <= order <= 3:
        raise ValueError("order must be in 0..3")
    fp = frame_at(triple, u)
    out = {(0, 0): fp.s + v * fp.e}
    if order:
        for key, comps in local_derivatives(triple, u, v, order).items():
            out[key] = fp.to_space(comps)
    return out
