"""Scalar expressions in ``u`` with exact derivatives up to third order."""

from .evaluate import eval_jet, evaluate
from .jet import Jet
from .parser import BinOp, Call, Expression, Neg, Num, Var, parse, to_text

__all__ = [
    "BinOp", "Call", "Expression", "Jet", "Neg", "Num", "Var",
    "eval_jet", "evaluate", "parse", "to_text",
]
