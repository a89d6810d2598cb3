"""Truncated Taylor arithmetic (jets) up to third order.

A jet stores a value together with its first ``order`` derivatives with
respect to one scalar variable. Arithmetic propagates derivatives exactly
(Leibniz rule for products, Faa di Bruno for composition), so jets are the
only place where u-derivatives are produced.

Coefficients may be floats or numpy arrays of a common shape; the latter is
how whole grids are evaluated in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

import numpy as np

MAX_ORDER = 3

Scalar = Union[float, np.ndarray]


@dataclass(frozen=True)
class Jet:
    coeffs: tuple

    def __post_init__(self):
        if not 1 <= len(self.coeffs) <= MAX_ORDER + 1:
            raise ValueError(f"jet order must be in 0..{MAX_ORDER}")

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "Jet":
        zero = c * 0.0
        return cls((c,) + (zero,) * order)

    @classmethod
    def variable(cls, x: Scalar, order: int) -> "Jet":
        zero = x * 0.0
        rest = (zero + 1.0,) + (zero,) * (order - 1) if order else ()
        return cls((x,) + rest)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> Scalar:
        return self.coeffs[0]

    def __getitem__(self, k: int) -> Scalar:
        """k-th derivative."""
        return self.coeffs[k]

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coeffs[: order + 1])

    def derivative(self) -> "Jet":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet(self.coeffs[1:])

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other) -> "Jet":
        other = self._coerce(other)
        return Jet(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(a * other for a in self.coeffs))
        n = min(self.order, other.order)
        f, g = self.coeffs, other.coeffs
        return Jet(tuple(
            sum(comb(k, i) * f[i] * g[k - i] for i in range(k + 1))
            for k in range(n + 1)
        ))

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        x = self.value
        return self.compose((1.0 / x, -1.0 / x**2, 2.0 / x**3, -6.0 / x**4))

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(a / other for a in self.coeffs))
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def ipow(self, n: int) -> "Jet":
        """Integer power by repeated multiplication (square-and-multiply)."""
        if n < 0:
            return self.reciprocal().ipow(-n)
        result = Jet.constant(self.value * 0.0 + 1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, outer: Sequence[Scalar]) -> "Jet":
        """Chain rule for ``phi(self)`` given ``phi^(k)`` at ``self.value``."""
        f = self.coeffs
        out = [outer[0]]
        if self.order >= 1:
            out.append(outer[1] * f[1])
        if self.order >= 2:
            out.append(outer[2] * f[1] ** 2 + outer[1] * f[2])
        if self.order >= 3:
            out.append(outer[3] * f[1] ** 3 + 3.0 * outer[2] * f[1] * f[2]
                       + outer[1] * f[3])
        return Jet(tuple(out))

    # Elementary functions. Domain checks happen in the evaluator, which
    # knows which subexpression is being evaluated.

    def sin(self) -> "Jet":
        s, c = np.sin(self.value), np.cos(self.value)
        return self.compose((s, c, -s, -c))

    def cos(self) -> "Jet":
        s, c = np.sin(self.value), np.cos(self.value)
        return self.compose((c, -s, -c, s))

    def tan(self) -> "Jet":
        t = np.tan(self.value)
        d1 = 1.0 + t * t
        return self.compose((t, d1, 2.0 * t * d1, 2.0 * d1 * (1.0 + 3.0 * t * t)))

    def exp(self) -> "Jet":
        e = np.exp(self.value)
        return self.compose((e, e, e, e))

    def log(self) -> "Jet":
        x = self.value
        return self.compose((np.log(x), 1.0 / x, -1.0 / x**2, 2.0 / x**3))

    def sqrt(self) -> "Jet":
        x = self.value
        r = np.sqrt(x)
        if self.order == 0:
            return Jet((r,))
        return self.compose((r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)))

    def abs(self) -> "Jet":
        sgn = np.sign(self.value)
        zero = sgn * 0.0
        return self.compose((np.abs(self.value), sgn, zero, zero))

    def power(self, c: float) -> "Jet":
        """Real power ``self**c`` for a positive base."""
        x = self.value
        return self.compose((
            x**c,
            c * x ** (c - 1),
            c * (c - 1) * x ** (c - 2),
            c * (c - 1) * (c - 2) * x ** (c - 3),
        ))

    def __pow__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return (other * self.log()).exp()
        if float(other).is_integer():
            return self.ipow(int(other))
        return self.power(float(other))


def as_floats(jet: Jet) -> tuple:
    return tuple(float(c) for c in jet.coeffs)
