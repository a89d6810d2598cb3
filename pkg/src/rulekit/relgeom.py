"""Darboux tensor, Pick invariant and Tchebychev field for support |K|^alpha.

Every closed form has the shape ``prefactor * P(v)`` with P a polynomial in
the ruling coordinate. The coefficient lists (highest degree first) are built
by the ``*_polynomial`` helpers so that each printed coefficient exists as a
separate value; the mutation tests of ``rulekit verify`` perturb them one at
a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame import InvariantTriple, InvariantValues, frame_at
from .tensors import abs_power


@dataclass(frozen=True)
class DarbouxComponents:
    A111: float
    A112: float
    A221: float
    A222: float

    def tensor(self) -> np.ndarray:
        """Totally symmetric 2x2x2 array, index 0 = u, 1 = v."""
        A = np.empty((2, 2, 2))
        A[0, 0, 0] = self.A111
        A[0, 0, 1] = A[0, 1, 0] = A[1, 0, 0] = self.A112
        A[0, 1, 1] = A[1, 0, 1] = A[1, 1, 0] = self.A221
        A[1, 1, 1] = self.A222
        return A


@dataclass(frozen=True)
class TchebychevData:
    T1: float
    T2: float
    local: np.ndarray  # components on (e, n, z)
    vec: np.ndarray
    div: float
    rot: float


def _w(iv: InvariantValues, v: float) -> float:
    return float(np.hypot(v, iv.d))


def darboux_polynomials(iv: InvariantValues, alpha: float):
    """Brackets of A111, A112 (degree 4 and 3 in v)."""
    k, k1, d, d1, d2 = iv.k, iv.k1, iv.d, iv.d1, iv.d2
    lam, lam1 = iv.lam, iv.lam1
    dd = d * d
    p111 = (
        d * k1 - 6 * alpha * d1 * k,
        -2 * dd * (1 + k * lam) + d * d2 - 6 * alpha * d1 * d1,
        dd * (d * (2 * k1 + lam1) - d1 * k + 2 * (3 * alpha - 1) * d1 * lam),
        dd * (-2 * dd * (1 + k * lam) + d * d2 + 3 * (2 * alpha - 1) * d1 * d1),
        dd * dd * ((6 * alpha - 1) * (k - lam) * d1 + d * (k1 + lam1)),
    )
    p112 = (k, 2 * d1, dd * (k - lam), -dd * d1)
    return p111, p112


def darboux(triple: InvariantTriple, u: float, v: float, alpha: float) -> DarbouxComponents:
    iv = triple.values(u)
    w = _w(iv, v)
    p111, p112 = darboux_polynomials(iv, alpha)
    wp = w ** (3 - 4 * alpha)
    a111 = iv.eps * abs_power(iv.d, -2 * alpha - 1) / (2 * wp) * np.polyval(p111, v)
    a112 = (4 * alpha - 1) * abs_power(iv.d, -2 * alpha) / (2 * wp) * np.polyval(p112, v)
    a221 = iv.eps * (1 - 4 * alpha) * abs_power(iv.d, 1 - 2 * alpha) / wp * v
    return DarbouxComponents(float(a111), float(a112), float(a221), 0.0)


def pick_polynomial(iv: InvariantValues):
    dd = iv.d * iv.d
    return (iv.k, 0.0, dd * (iv.k - iv.lam), dd * iv.d1, 0.0)


def pick(triple: InvariantTriple, u: float, v: float, alpha: float) -> float:
    iv = triple.values(u)
    w = _w(iv, v)
    pre = 3 * (4 * alpha - 1) ** 2 * abs_power(iv.d, 2 * alpha - 2) / (2 * w ** (4 * alpha + 3))
    return float(pre * np.polyval(pick_polynomial(iv), v))


def tchebychev_polynomials(iv: InvariantValues):
    """Brackets of the ambient Tchebychev vector on e, n and z."""
    dd = iv.d * iv.d
    on_e = (2 * iv.k, iv.d1, 2 * dd * iv.k, dd * iv.d1)
    on_n = (2 * iv.d, 0.0, 0.0)
    on_z = (2 * dd, 0.0)
    return on_e, on_n, on_z


def tchebychev_components(triple: InvariantTriple, u: float, v: float, alpha: float):
    """Contravariant components (T^1, T^2)."""
    iv = triple.values(u)
    w = _w(iv, v)
    dd = iv.d * iv.d
    t1 = iv.eps * (1 - 4 * alpha) * abs_power(iv.d, 2 * alpha - 1) / w ** (4 * alpha + 1) * v
    p2 = (2 * iv.k, iv.d1, 2 * dd * (iv.k - iv.lam), dd * iv.d1)
    t2 = (1 - 4 * alpha) * abs_power(iv.d, 2 * alpha - 2) / (2 * w ** (4 * alpha + 1)) * np.polyval(p2, v)
    return float(t1), float(t2)


def tchebychev_local(triple: InvariantTriple, u: float, v: float, alpha: float) -> np.ndarray:
    """Ambient Tchebychev vector on the frame (e, n, z)."""
    iv = triple.values(u)
    w = _w(iv, v)
    pre = (1 - 4 * alpha) * abs_power(iv.d, 2 * alpha - 2) / (2 * w ** (4 * alpha + 1))
    return pre * np.array([np.polyval(p, v) for p in tchebychev_polynomials(iv)])


def divergence_polynomial(iv: InvariantValues, alpha: float):
    dd = iv.d * iv.d
    return (
        (3 - 4 * alpha) * iv.k,
        0.0,
        dd * (4 * (1 - alpha) * iv.k + (4 * alpha - 1) * iv.lam),
        -4 * alpha * dd * iv.d1,
        dd * dd * (iv.k - iv.lam),
    )


def rotation_polynomial(iv: InvariantValues, alpha: float):
    k, k1, d, d1, d2, lam = iv.k, iv.k1, iv.d, iv.d1, iv.d2, iv.lam
    dd = d * d
    c = 1 + k * lam
    return (
        4 * (alpha - 1) * d1 * k + 2 * d * k1,
        2 * (alpha - 1) * d1 * d1 + d * d2 + 4 * dd * (2 * alpha - 1) * c,
        dd * (4 * d * k1 - 6 * d1 * k + (4 * alpha - 1) * d1 * lam),
        dd * (-3 * d1 * d1 + 2 * d * d2 + 2 * dd * (4 * alpha - 3) * c),
        dd * dd * (-2 * (2 * alpha + 1) * d1 * k + 2 * d * k1 + (4 * alpha - 1) * d1 * lam),
        dd * dd * (-(2 * alpha + 1) * d1 * d1 + d * d2 - 2 * dd * c),
    )


def field_derivatives(triple: InvariantTriple, u: float, v: float, alpha: float):
    """(div, rot) of the Tchebychev field with respect to the first fundamental form."""
    iv = triple.values(u)
    w = _w(iv, v)
    div = ((1 - 4 * alpha) * abs_power(iv.d, 2 * alpha - 2) / w ** (4 * alpha + 3)
           * np.polyval(divergence_polynomial(iv, alpha), v))
    rot = (iv.eps * (1 - 4 * alpha) * abs_power(iv.d, 2 * alpha - 3) / (2 * w ** (4 * alpha + 4))
           * np.polyval(rotation_polynomial(iv, alpha), v))
    return float(div), float(rot)


def tchebychev(triple: InvariantTriple, u: float, v: float, alpha: float) -> TchebychevData:
    t1, t2 = tchebychev_components(triple, u, v, alpha)
    local = tchebychev_local(triple, u, v, alpha)
    div, rot = field_derivatives(triple, u, v, alpha)
    vec = frame_at(triple, u).to_space(local)
    return TchebychevData(t1, t2, local, vec, div, rot)


# -- tensor-algebra routes, used as cross-checks ----------------------------

def raise_all(A: np.ndarray, G: np.ndarray) -> np.ndarray:
    Gi = np.linalg.inv(G)
    return np.einsum("ia,jb,kc,abc->ijk", Gi, Gi, Gi, A)


def pick_from_tensor(A: np.ndarray, G: np.ndarray) -> float:
    """J = 1/2 A_jkl A^jkl."""
    return float(0.5 * np.einsum("ijk,ijk->", A, raise_all(A, G)))


def tchebychev_from_tensor(A: np.ndarray, G: np.ndarray) -> np.ndarray:
    """T^i = G^ij T_j with T_j = 1/2 A_jkl G^kl."""
    Gi = np.linalg.inv(G)
    lower = 0.5 * np.einsum("jkl,kl->j", A, Gi)
    return Gi @ lower
