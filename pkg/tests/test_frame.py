import math

import numpy as np
import pytest

from rulekit.errors import DomainError, TorsalRuling
from rulekit.frame import (InvariantTriple, RuledSurface, embedding_jets, frame_at,
                           local_derivatives, surface)
from rulekit.oracle import extract_invariants, surface_parametrization
from rulekit.zoo import NAMES, builtin

from conftest import rel_err


def test_identity_frame_at_start(generic):
    fp = frame_at(generic, 0.0)
    np.testing.assert_array_equal(fp.matrix, np.eye(3))
    np.testing.assert_array_equal(fp.s, np.zeros(3))


@pytest.mark.parametrize("u", [0.3, 1.0, 2.5, 4.0, 6.2])
def test_conoidal_frame_is_closed_form(conoid, u):
    fp = frame_at(conoid, u)
    np.testing.assert_allclose(fp.e, [math.cos(u), math.sin(u), 0], atol=1e-8)
    np.testing.assert_allclose(fp.n, [-math.sin(u), math.cos(u), 0], atol=1e-8)
    np.testing.assert_allclose(fp.z, [0, 0, 1], atol=1e-8)


@pytest.mark.parametrize("u, v", [(0.5, 1.0), (2.0, -1.5), (5.0, 0.3)])
def test_helicoid_points(helicoid, u, v):
    x = embedding_jets(helicoid, u, v, 0)[(0, 0)]
    np.testing.assert_allclose(x, [v * math.cos(u), v * math.sin(u), u], atol=1e-8)


def test_helicoid_tangent_at_origin(helicoid):
    d = embedding_jets(helicoid, 0.0, 1.0, 1)
    np.testing.assert_allclose(d[(1, 0)], [0, 1, 1], atol=1e-12)


@pytest.mark.parametrize("name", NAMES)
def test_ruling_derivative_is_ruling(name):
    t = builtin(name)
    fp = frame_at(t, 1.3)
    np.testing.assert_allclose(embedding_jets(t, 1.3, 0.7, 1)[(0, 1)], fp.e, atol=1e-15)


def test_orthonormal_over_long_domain():
    t = InvariantTriple.from_text("1", "1", "0", domain=(0.0, 12.0))
    fp = frame_at(t, 10.0)
    m = fp.matrix
    assert np.max(np.abs(m @ m.T - np.eye(3))) <= 1e-9
    assert abs(np.linalg.det(m) - 1.0) <= 1e-9


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("u", [0.4, 2.2, 5.9])
def test_striction_and_arc_length(name, u):
    d = embedding_jets(builtin(name), u, 0.0, 2)
    s1, e, e1 = d[(1, 0)], d[(0, 1)], d[(1, 1)]
    assert abs(s1 @ e1) <= 1e-8
    assert abs(np.linalg.norm(e) - 1) <= 1e-8
    assert abs(np.linalg.norm(e1) - 1) <= 1e-8


@pytest.mark.parametrize("name", NAMES)
def test_round_trip_extraction(name):
    t = builtin(name)
    param = surface_parametrization(t)
    for u in (0.1, 1.7, 3.3, 6.0):
        ex = extract_invariants(param, u)
        iv = t.values(u)
        assert rel_err((ex.kappa, ex.delta, ex.lam), (iv.k, iv.d, iv.lam)) <= 1e-6


def test_round_trip_negative_delta(negative_delta):
    ex = extract_invariants(surface_parametrization(negative_delta), 2.0)
    iv = negative_delta.values(2.0)
    assert rel_err((ex.kappa, ex.delta, ex.lam), (iv.k, iv.d, iv.lam)) <= 1e-6


def test_integrated_derivative_matches_local(generic):
    # the dense output and the exact frame calculus agree
    h = 1e-5
    u = 2.0
    x = lambda uu: embedding_jets(generic, uu, 0.8, 0)[(0, 0)]
    fd = (x(u + h) - x(u - h)) / (2 * h)
    np.testing.assert_allclose(fd, embedding_jets(generic, u, 0.8, 1)[(1, 0)], atol=1e-8)


def test_local_derivatives_keys(generic):
    d = local_derivatives(generic, 1.0, 0.5, 3)
    assert set(d) == {(i, j) for i in range(4) for j in range(4) if 1 <= i + j <= 3}
    assert not np.any(d[(0, 2)]) and not np.any(d[(1, 2)])


def test_torsal_rejected():
    with pytest.raises(TorsalRuling):
        RuledSurface(InvariantTriple.from_text("1", "sin(u)", "0"))
    with pytest.raises(TorsalRuling):
        InvariantTriple.from_text("1", "0", "0").jets(1.0)


def test_sign_change_rejected():
    with pytest.raises(TorsalRuling):
        RuledSurface(InvariantTriple.from_text("1", "u - 1", "0", domain=(0.0, 2.0 + 1e-3)))


def test_bad_domain():
    with pytest.raises(DomainError):
        InvariantTriple.from_text("1", "1", "0", domain=(1.0, 1.0))


def test_query_outside_domain(generic):
    with pytest.raises(DomainError):
        frame_at(generic, -0.1)


def test_surface_cache(generic):
    assert surface(generic) is surface(builtin("generic"))


def test_step_rule():
    rs = surface(InvariantTriple.from_text("1", "1", "0", domain=(0.0, 0.5)))
    assert rs.h <= 0.5 / 1024 and rs.n_steps == 1024
