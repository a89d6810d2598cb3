import numpy as np
import pytest

from rulekit.frame import InvariantTriple
from rulekit.zoo import builtin


def rel_err(a, b) -> float:
    """max |a - b| / (1 + |b|)."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b))))


@pytest.fixture(scope="session")
def generic():
    return builtin("generic")


@pytest.fixture(scope="session")
def helicoid():
    return builtin("helicoid")


@pytest.fixture(scope="session")
def edlinger():
    return builtin("edlinger")


@pytest.fixture(scope="session")
def conoid():
    return builtin("conoid")


@pytest.fixture(scope="session")
def conoid_lam():
    # conoidal but not a right conoid
    return InvariantTriple.from_text("0", "2 + sin(u)", "0.3", name="conoid_lam")


@pytest.fixture(scope="session")
def conformal():
    # kappa = 2 |delta|^(3/2) with the matching lambda: conformal, not isometric
    return InvariantTriple.from_text("2", "1", "-0.5", name="conformal")


@pytest.fixture(scope="session")
def negative_delta():
    return InvariantTriple.from_text("0.8 + 0.2*cos(u)", "-1.5 - 0.5*sin(u)", "0.3*sin(u)",
                                     name="negative_delta")


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
