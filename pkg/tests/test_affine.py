import numpy as np
import pytest

from rulekit import affine, oracle
from rulekit.errors import ConoidalSurface
from rulekit.frame import InvariantTriple, frame_at
from rulekit.tensors import fundamental_forms

from conftest import rel_err

POINTS = [(0.7, 1.3), (2.0, -0.4), (4.5, 0.0), (5.5, 1.9)]


@pytest.fixture(scope="module")
def orthoid_source():
    # delta chosen so that lambda* vanishes identically
    return InvariantTriple.from_text("1", "1/(0.5*sin(u) + cos(u))^2", "0", domain=(0.0, 1.0))


@pytest.fixture(scope="module")
def eq48():
    return InvariantTriple.from_text("2/u", "3/u^2", "0", domain=(1.0, 2.0))


def test_unit_image_point(edlinger):
    for u, v in POINTS:
        fp = frame_at(edlinger, u)
        np.testing.assert_allclose(affine.image_point(edlinger, u, v), fp.n + v * fp.e, atol=1e-15)


def test_conoidal_image_is_a_curve(conoid):
    p = [affine.image_point(conoid, 1.0, v) for v in (-1.0, 0.0, 2.0)]
    np.testing.assert_array_equal(p[0], p[1])
    np.testing.assert_array_equal(p[1], p[2])
    with pytest.raises(ConoidalSurface):
        affine.image_invariants(conoid, 1.0)


def test_image_ignores_lambda(generic):
    other = InvariantTriple(generic.kappa, generic.delta, InvariantTriple.from_text("0", "1", "u").lam)
    for u, v in POINTS:
        np.testing.assert_array_equal(affine.image_point(generic, u, v), affine.image_point(other, u, v))


@pytest.mark.parametrize("u", [0.5, 2.0, 5.0])
def test_image_invariants_generic(generic, u):
    inv = affine.image_invariants(generic, u)
    iv = generic.values(u)
    assert inv.kappa_star == iv.k
    assert np.sign(inv.delta_star) == np.sign(iv.k * iv.d)
    ex = oracle.extract_invariants(affine.image_parametrization(generic), u)
    assert rel_err((inv.kappa_star, inv.delta_star, inv.lambda_star),
                   (ex.kappa, ex.delta, ex.lam)) <= 1e-6


def test_image_invariants_negative_delta(negative_delta):
    for u in (0.5, 3.0):
        inv = affine.image_invariants(negative_delta, u)
        ex = oracle.extract_invariants(affine.image_parametrization(negative_delta), u)
        assert rel_err((inv.kappa_star, inv.delta_star, inv.lambda_star),
                       (ex.kappa, ex.delta, ex.lam)) <= 1e-6


def test_unit_image_invariants(edlinger):
    inv = affine.image_invariants(edlinger, 1.0)
    assert (inv.kappa_star, inv.delta_star, inv.lambda_star) == (1.0, 1.0, -1.0)


def test_orthoid_image(orthoid_source):
    for u in np.linspace(0.0, 1.0, 7):
        assert abs(affine.image_invariants(orthoid_source, u).lambda_star) <= 1e-12


def test_striction_equals_directrix_for_constant_delta(edlinger):
    inv = affine.image_invariants(edlinger, 2.0)
    np.testing.assert_array_equal(inv.striction, inv.directrix)
    np.testing.assert_allclose(affine.image_point(edlinger, 2.0, 0.0), inv.directrix, atol=1e-15)


def test_image_metric_unit(edlinger):
    assert affine.image_metric(edlinger, 1.0, 0.3)[1, 1] == 1.0


@pytest.mark.parametrize("u, v", POINTS)
def test_image_metric_matches_fd(generic, u, v):
    assert rel_err(affine.image_metric(generic, u, v), oracle.numeric_image_metric(generic, u, v)) <= 1e-6


def test_image_metric_off_diagonal_zero_set():
    # 2 delta delta'' - 3 delta'^2 - 4 delta^2 + 2(2 delta kappa' - 3 delta' kappa) v = -4 + 4 v
    t = InvariantTriple.from_text("1 + u", "1", "0", domain=(0.0, 1.0))
    assert affine.image_metric(t, 0.5, 1.0)[0, 1] == 0.0
    assert affine.image_metric(t, 0.5, 0.5)[0, 1] != 0.0


def test_self_affine(edlinger, generic):
    assert affine.self_affine_residual(edlinger, 1.0) == (0.0, 0.0)
    small = InvariantTriple.from_text("1e-3", "1", "0")
    assert abs(affine.self_affine_residual(small, 1.0)[0]) > 0.5
    r1, r2 = affine.self_affine_residual(generic, 1.0)
    assert abs(r1) > 1e-3 and abs(r2) > 1e-3


def test_self_affine_zero_set_matches_invariants(generic, edlinger):
    for t in (generic, edlinger):
        for u in (0.5, 3.0):
            inv = affine.image_invariants(t, u)
            iv = t.values(u)
            gap = max(abs(inv.kappa_star - iv.k), abs(inv.delta_star - iv.d), abs(inv.lambda_star - iv.lam))
            assert (gap <= 1e-12) == (max(map(abs, affine.self_affine_residual(t, u))) <= 1e-12)


def test_edlinger_check_branches(edlinger, eq48):
    us = np.linspace(0.0, 6.0, 9)
    res = affine.image_edlinger_check(edlinger, us)
    assert res.is_edlinger_image and res.branch == "const_slope_const_delta"
    res = affine.image_edlinger_check(eq48, np.linspace(1.0, 2.0, 9))
    assert res.is_edlinger_image and res.branch == "eq48"
    slope = InvariantTriple.from_text("1 + u", "1", "0", domain=(0.0, 2.0))
    assert not affine.image_edlinger_check(slope, np.linspace(0, 2, 9)).is_edlinger_image


def test_edlinger_check_requires_kappa(conoid):
    with pytest.raises(ConoidalSurface):
        affine.image_edlinger_check(conoid, [1.0, 2.0])


def test_area_preserving():
    t = InvariantTriple.from_text("1", "1", "0.7")
    for u, v in POINTS:
        assert abs(affine.mapping_residuals(t, u, v).area) <= 1e-12


def test_conformal_not_isometric(conformal):
    for u, v in POINTS:
        m = affine.mapping_residuals(conformal, u, v)
        assert m.conformal <= 1e-12 and m.isometry >= 0.1


def test_minding_isometry(edlinger):
    for u, v in POINTS:
        m = affine.mapping_residuals(edlinger, u, v)
        assert m.isometry <= 1e-12 and m.eps0 == 1.0
        np.testing.assert_allclose(affine.image_metric(edlinger, u, v),
                                   fundamental_forms(edlinger, u, v).g, atol=1e-12)


def test_isometry_preserves_invariants(edlinger):
    ex = oracle.extract_invariants(affine.image_parametrization(edlinger), 2.0)
    iv = edlinger.values(2.0)
    assert rel_err((ex.kappa, ex.delta, ex.lam), (iv.k, iv.eps * iv.d, iv.lam)) <= 1e-6


def test_image_data_bundle(generic):
    d = affine.image_data(generic, 1.0, 0.5)
    np.testing.assert_array_equal(d.point, affine.image_point(generic, 1.0, 0.5))
    assert d.g_star.shape == (2, 2)
