"""Canonical test surfaces, addressable from the CLI as ``builtin:<name>``."""

from __future__ import annotations

from .frame import TWO_PI, InvariantTriple

_ZOO = {
    # kappa = lambda = delta' = 0: lies on a right helicoid
    "helicoid": ("0", "1", "0", (0.0, TWO_PI)),
    # delta' = 1 + kappa lambda = 0 with constant invariants
    "edlinger": ("1", "1", "-1", (0.0, TWO_PI)),
    # kappa = lambda = 0, varying delta
    "conoid": ("0", "2 + sin(u)", "0", (0.0, TWO_PI)),
    # kappa = |delta|^(3/2), lambda from the self-congruence condition
    "selfaffine": ("1", "1", "-1", (0.0, TWO_PI)),
    # none of the special classes
    "generic": ("1 + 0.3*sin(u)", "2 + sin(u)", "0.5*cos(u)", (0.0, TWO_PI)),
}

NAMES = tuple(_ZOO)


def builtin(name: str) -> InvariantTriple:
    try:
        kappa, delta, lam, domain = _ZOO[name]
    except KeyError:
        raise KeyError(f"unknown builtin surface {name!r}; choose from {', '.join(NAMES)}") from None
    return InvariantTriple.from_text(kappa, delta, lam, domain, name=name)


def all_builtins():
    return [builtin(name) for name in NAMES]
