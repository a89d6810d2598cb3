"""Jet evaluation of expression trees."""

from __future__ import annotations

from functools import singledispatch

import numpy as np

from ..errors import DomainError, NonDifferentiable
from .jet import MAX_ORDER, Jet
from .parser import BinOp, Call, Expression, Neg, Num, Var, to_text

ABS_KINK = 1e-12


def eval_jet(expr: Expression, u, order: int = 0) -> Jet:
    """Value and first ``order`` derivatives of ``expr`` at ``u``.

    ``u`` may be a float or a numpy array; array input evaluates the whole
    batch at once and every coefficient of the result has the shape of ``u``.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}, got {order}")
    if isinstance(u, np.ndarray):
        u = u.astype(float)
    else:
        u = float(u)
    if not np.all(np.isfinite(u)):
        raise DomainError(f"non-finite evaluation point u={u}")
    with np.errstate(all="ignore"):
        return _eval(expr, u, order)


def evaluate(expr: Expression, u):
    """Plain value of ``expr`` at ``u`` (float or array)."""
    return eval_jet(expr, u, 0).value


def _first_bad(u, mask):
    if isinstance(u, np.ndarray):
        return float(u[np.argmax(mask)])
    return u


def _domain(node, u, mask, what):
    if np.any(mask):
        raise DomainError(
            f"{what} in {to_text(node)} at u={_first_bad(u, mask)!r}"
        )


def _check_finite(node, u, jet):
    for c in jet.coeffs:
        _domain(node, u, ~np.isfinite(c), "non-finite result")
    return jet


def _has_var(node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return _has_var(node.operand)
    if isinstance(node, Call):
        return _has_var(node.arg)
    return _has_var(node.left) or _has_var(node.right)


@singledispatch
def _eval(node, u, order):
    raise TypeError(f"not an expression node: {node!r}")


@_eval.register
def _(node: Num, u, order):
    return Jet.constant(u * 0.0 + node.value, order)


@_eval.register
def _(node: Var, u, order):
    return Jet.variable(u, order)


@_eval.register
def _(node: Neg, u, order):
    return -_eval(node.operand, u, order)


@_eval.register
def _(node: BinOp, u, order):
    a = _eval(node.left, u, order)
    if node.op == "^":
        return _eval_pow(node, a, u, order)
    b = _eval(node.right, u, order)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    _domain(node, u, b.value == 0.0, "division by zero")
    return _check_finite(node, u, a / b)


def _eval_pow(node, base, u, order):
    if not _has_var(node.right):
        c = float(_eval(node.right, 0.0, 0).value)
        if c.is_integer():
            if c < 0:
                _domain(node, u, base.value == 0.0, "zero base with negative exponent")
            return _check_finite(node, u, base.ipow(int(c)))
        _domain(node, u, base.value <= 0.0, "non-positive base with non-integer exponent")
        return _check_finite(node, u, base.power(c))
    _domain(node, u, base.value <= 0.0, "non-positive base with variable exponent")
    expo = _eval(node.right, u, order)
    return _check_finite(node, u, base ** expo)


@_eval.register
def _(node: Call, u, order):
    a = _eval(node.arg, u, order)
    x = a.value
    if node.func == "sin":
        return a.sin()
    if node.func == "cos":
        return a.cos()
    if node.func == "tan":
        _domain(node, u, np.abs(np.cos(x)) < ABS_KINK, "pole of tan")
        return _check_finite(node, u, a.tan())
    if node.func == "exp":
        return _check_finite(node, u, a.exp())
    if node.func == "ln":
        _domain(node, u, x <= 0.0, "logarithm of non-positive value")
        return _check_finite(node, u, a.log())
    if node.func == "sqrt":
        _domain(node, u, x < 0.0, "square root of negative value")
        if order:
            _domain(node, u, x == 0.0, "square root not differentiable at 0")
        return _check_finite(node, u, a.sqrt())
    if node.func == "abs":
        if order and np.any(np.abs(x) < ABS_KINK):
            raise NonDifferentiable(
                f"abs differentiated at its kink in {to_text(node)} "
                f"at u={_first_bad(u, np.abs(x) < ABS_KINK)!r}"
            )
        return a.abs()
    raise TypeError(f"unknown function {node.func!r}")
