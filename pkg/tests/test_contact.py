import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mam.contact import (alpha_vector, calibrate_orientation, confoliation_value,
                         contact_sample, contact_suite, dalpha_matrix, escape_path,
                         kernel_dims, pfaffian, sample_on_variety, scale_of,
                         tangent_basis, _constraints, _lambdas, _legendrian_basis)
from mam.errors import Trapped, ValidationError
from mam.fixtures import load_fixture


def pfaffian_by_matchings(A):
    """Expansion along the first row over perfect matchings."""
    n = len(A)
    if n == 0:
        return 1.0
    if n % 2:
        return 0.0
    total = 0.0
    for j in range(1, n):
        rest = [t for t in range(n) if t not in (0, j)]
        sub = [[A[p][q] for q in rest] for p in rest]
        total += (-1) ** (j - 1) * A[0][j] * pfaffian_by_matchings(sub)
    return total


def random_skew(rng, n):
    M = rng.standard_normal((n, n))
    return M - M.T


@pytest.mark.parametrize("n", [0, 2, 4, 6, 8])
def test_pfaffian_matches_matching_expansion(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        A = random_skew(rng, n)
        assert pfaffian(A) == pytest.approx(pfaffian_by_matchings(A.tolist()), rel=1e-9,
                                            abs=1e-12)


def test_pfaffian_squared_is_determinant():
    rng = np.random.default_rng(1)
    for n in (2, 4, 10):
        A = random_skew(rng, n)
        assert pfaffian(A) ** 2 == pytest.approx(np.linalg.det(A), rel=1e-9)


def test_pfaffian_small_cases():
    assert pfaffian([[0, 3], [-3, 0]]) == 3
    assert pfaffian(np.zeros((3, 3))) == 0
    assert pfaffian(np.zeros((4, 4))) == 0
    with pytest.raises(ValueError):
        pfaffian(np.zeros((2, 3)))


def test_pfaffian_odd_permutation_negates():
    rng = np.random.default_rng(3)
    A = random_skew(rng, 6)
    perm = [1, 0, 2, 3, 4, 5]
    P = np.eye(6)[perm]
    assert pfaffian(P @ A @ P.T) == pytest.approx(-pfaffian(A))


@pytest.fixture(scope="module")
def pentagon():
    return load_fixture("pentagon")


@pytest.mark.parametrize("s", [1, 2, 3])
def test_generic_sample(pentagon, s):
    pt = sample_on_variety(pentagon, s, seed=42)
    assert max(pt.residuals) < 1e-12
    assert np.linalg.norm(pt.w) > 0 and not pt.on_W
    again = sample_on_variety(pentagon, s, seed=42)
    assert np.array_equal(pt.real, again.real)


def test_W_sample(pentagon):
    pt = sample_on_variety(pentagon, 1, seed=7, near_W=True)
    assert pt.on_W and not np.any(pt.w)
    lam = _lambdas(pentagon)
    assert abs(np.sum(lam * np.abs(pt.z) ** 2)) < 1e-12
    assert abs(np.linalg.norm(pt.real) - 1) < 1e-12


def test_brieskorn_sample(pentagon):
    pt = sample_on_variety(pentagon, 3, seed=5, zero_z=True)
    assert not np.any(pt.z)
    assert abs(np.sum(pt.w * pt.w)) < 1e-12
    assert np.linalg.norm(pt.w) == pytest.approx(1.0)
    assert kernel_dims(pentagon, pt) == (1, 0)


def test_sampler_errors(pentagon):
    with pytest.raises(ValidationError):
        sample_on_variety(pentagon, 0, seed=1)
    with pytest.raises(ValidationError):
        sample_on_variety(pentagon, 1, seed=1, zero_z=True)
    with pytest.raises(ValidationError):
        sample_on_variety(load_fixture("simplex_k3"), 1, seed=1)


def test_dalpha_is_constant_skew_and_exterior_derivative(pentagon):
    c = np.linspace(1, 2, 6)
    Om = dalpha_matrix(c)
    assert np.array_equal(Om, -Om.T)
    # d alpha (u, v) = D_u alpha(v) - D_v alpha(u) for the linear form alpha
    rng = np.random.default_rng(0)
    x, u, v = rng.standard_normal((3, 12))
    h = 1e-6
    du_alpha = (alpha_vector(x + h * u, c) - alpha_vector(x, c)) / h
    dv_alpha = (alpha_vector(x + h * v, c) - alpha_vector(x, c)) / h
    assert du_alpha @ v - dv_alpha @ u == pytest.approx(u @ Om @ v, rel=1e-5)


def test_alpha_vanishes_on_legendrian_basis(pentagon):
    lam = _lambdas(pentagon)
    c = np.ones(6)
    for seed in range(5):
        pt = sample_on_variety(pentagon, 1, seed)
        B = _legendrian_basis(pt.real, lam, 1, c)
        assert np.max(np.abs(alpha_vector(pt.real, c) @ B)) < 1e-10
        assert B.shape[1] == 2 * 6 - 3 - 1


def test_tangent_basis_is_orthonormal_and_tangent(pentagon):
    from mam.contact import _jacobian
    pt = sample_on_variety(pentagon, 2, 3)
    lam = _lambdas(pentagon)
    E = tangent_basis(pt, lam)
    assert np.allclose(E.T @ E, np.eye(E.shape[1]))
    assert np.max(np.abs(_jacobian(pt.real, lam, 2) @ E)) < 1e-12
    assert E.shape[1] == 2 * (2 + 5) - 3


@pytest.mark.parametrize("s", [1, 2])
def test_values_and_kernel_dims(pentagon, s):
    orientation = calibrate_orientation(pentagon, s)
    scale = scale_of(np.ones(s + 5), 5 + s - 2)
    for seed in range(20):
        smp = contact_sample(pentagon, s, seed, orientation=orientation)
        assert smp.confoliation_value > 0
        assert (smp.ker_dalpha_dim, smp.ker_both_dim) == (1, 0)
        wpt = contact_sample(pentagon, s, seed, near_W=True, orientation=orientation)
        assert abs(wpt.confoliation_value) < 1e-8 * scale
        assert (wpt.ker_dalpha_dim, wpt.ker_both_dim) == (3, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.2, 5.0),
       st.lists(st.floats(0.5, 2.0), min_size=6, max_size=6))
def test_weight_scaling(seed, factor, weights):
    cfg = load_fixture("pentagon")
    pt = sample_on_variety(cfg, 1, seed)
    c = np.array(weights)
    base = confoliation_value(cfg, pt, c)
    scaled = confoliation_value(cfg, pt, factor * c)
    assert scaled == pytest.approx(factor ** (5 + 1 - 1) * base, rel=1e-8)
    assert kernel_dims(cfg, pt, c) == kernel_dims(cfg, pt, factor * c)


def test_scale_formula():
    assert scale_of(np.ones(6), 4) == math.factorial(4) * 2 * 4 ** 4 == 12288


@pytest.mark.parametrize("step", [1e-2, 1e-3])
def test_escape_path(pentagon, step):
    for seed in range(5):
        pt = sample_on_variety(pentagon, 1, seed, near_W=True)
        report = escape_path(pentagon, pt, step=step, max_steps=50,
                             orientation=calibrate_orientation(pentagon, 1),
                             keep_path=True)
        assert report.success and report.steps <= 50
        assert report.final_value > report.threshold
        assert report.legendrian_defect < 1e-6
        lam = _lambdas(pentagon)
        for x in report.path:
            assert np.max(np.abs(_constraints(x, lam, 1))) < 1e-10
        assert report.as_json()["success"] is True


def test_escape_inside_W_is_trapped(pentagon):
    pt = sample_on_variety(pentagon, 1, 2, near_W=True)
    with pytest.raises(Trapped) as info:
        escape_path(pentagon, pt, direction="inside_W", max_steps=10)
    assert not info.value.report.success


def test_escape_needs_W_point(pentagon):
    with pytest.raises(ValidationError):
        escape_path(pentagon, sample_on_variety(pentagon, 1, 0))


def test_suite_summary(pentagon):
    out = contact_suite(pentagon, 1, samples=10, escapes=3, seed=4)
    summary = out["summary"]
    assert summary["kernel_dims"] == {"W:3,2": 10, "generic:1,0": 10}
    assert summary["min_value_off_W"] > 0
    assert summary["escapes_ok"] == 3
    again = contact_suite(pentagon, 1, samples=10, escapes=3, seed=4)["summary"]
    assert again == summary


def test_other_fixtures_are_positive():
    for name in ("heptagon", "table1_row1", "example2"):
        cfg = load_fixture(name)
        summary = contact_suite(cfg, 1, samples=10, escapes=2)["summary"]
        assert summary["min_value_off_W"] > 0
        assert summary["max_abs_value_on_W"] < 1e-8 * summary["scale"]
        assert summary["escapes_ok"] == 2
