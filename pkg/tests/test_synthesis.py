import numpy as np
import pytest
from scipy.integrate import solve_ivp

from liecurve.errors import DomainExceedsSingularity
from liecurve.frenet import frenet_apparatus, interior_slice
from liecurve.lie_core import ABELIAN, SO3, SU2, body_velocity, check_element
from liecurve.synthesis import (
    MAX_STEP,
    Profile,
    circular_profile,
    general_helix_profile,
    geodesic_profile,
    integrate_frenet,
    slant_helix_H,
    slant_helix_profile,
)

from conftest import GROUP_IDS, GROUPS


def test_slant_H_against_ode():
    # H' = kappa0 (1 + H^2)^(3/2) / m from H(0) = 0
    for m, k0 in [(1.0, 1.0), (2.0, 0.5), (-1.5, 1.0)]:
        end = 0.9 * abs(m) / k0
        sol = solve_ivp(lambda s, y: k0 * (1 + y**2) ** 1.5 / m, (0, end), [0.0],
                        rtol=1e-12, atol=1e-14, dense_output=True)
        s = np.linspace(0, end, 50)
        np.testing.assert_allclose(slant_helix_H(s, m, k0), sol.sol(s)[0], atol=1e-8, rtol=1e-9)


def test_slant_profile_values():
    p = slant_helix_profile(ABELIAN, 1.0, 1.0, -0.9, 0.9, 1e-3)
    assert p.tau(0.0) == 0.0
    assert slant_helix_H(0.6, 1.0, 1.0) == pytest.approx(0.75)
    assert slant_helix_profile(SU2, 1.0, 1.0, -0.5, 0.5, 1e-3).tau(0.0) == 1.0
    with pytest.raises(DomainExceedsSingularity):
        slant_helix_profile(ABELIAN, 1.0, 1.0, -0.96, 0.5, 1e-3)
    with pytest.raises(ValueError):
        slant_helix_profile(ABELIAN, 0.0, 1.0, -0.5, 0.5, 1e-3)


def test_general_profile():
    k = 0.8
    p = general_helix_profile(ABELIAN, 0.0, k, 0, 1, 1e-3)
    assert p.tau(np.array([0.3]))[0] == 0.0
    p = general_helix_profile(SU2, 0.0, k, 0, 1, 1e-3)
    assert p.tau(np.array([0.3]))[0] == 1.0
    with pytest.raises(ValueError):
        general_helix_profile(SU2, 0.5, -1.0, 0, 1, 1e-3)


def test_geodesic_is_one_parameter_subgroup(group):
    curve, data = integrate_frenet(group, geodesic_profile(group, 0.0, 2.0, 1e-2))
    np.testing.assert_allclose(data.T, np.tile([1.0, 0, 0], (len(curve), 1)), atol=1e-14)
    from liecurve.lie_core import exp
    np.testing.assert_allclose(curve.points, exp(group, curve.s[:, None] * [1.0, 0, 0]), atol=1e-12)


def test_abelian_circular_matches_closed_form_helix():
    curve, _ = integrate_frenet(ABELIAN, circular_profile(ABELIAN, 0.5, 0.5, 0.0, 6.0, 1e-3))
    # start at origin with T = X1, N = X2: axis along (tau, 0, kappa)/|.|, radius kappa/(k^2+t^2)
    s = curve.s
    w = 1 / np.sqrt(2)
    u = np.array([1.0, 0, 0])
    v = np.array([0, 1.0, 0])
    axis = np.array([1.0, 0, 1.0]) / np.sqrt(2)
    perp_t = np.cross(axis, np.cross(u, axis))
    perp_t /= np.linalg.norm(perp_t)
    exact = (np.outer(np.sin(w * s), perp_t) + np.outer(1 - np.cos(w * s), v)) + np.outer(w * s, axis)
    np.testing.assert_allclose(curve.points, exact, atol=1e-10)


@pytest.mark.parametrize("g", GROUPS, ids=GROUP_IDS)
def test_output_is_unit_speed_on_group(g):
    curve, _ = integrate_frenet(g, slant_helix_profile(g, 1.0, 1.0, -0.5, 0.5, 1e-3))
    assert check_element(g, curve.points)
    T = body_velocity(g, curve.points, curve.h, unit_speed_tol=None)
    assert np.max(np.abs(np.linalg.norm(T, axis=1) - 1)) < 1e-6


def test_frame_drift_long_run():
    _, data = integrate_frenet(SO3, general_helix_profile(SO3, 0.3, 1.0, 0.0, 10.0, 1e-3))
    assert len(data) == 10001
    F = np.stack([data.T, data.N, data.B], axis=1)
    assert np.abs(F @ np.swapaxes(F, 1, 2) - np.eye(3)).max() <= 1e-9
    np.testing.assert_allclose(data.tau_G, 0.5, atol=1e-12)


def test_round_trip_convergence_fourth_order():
    errs = []
    for h in (0.1, 0.05):
        curve, _ = integrate_frenet(SU2, circular_profile(SU2, 0.5, 0.5, 0.0, 20.0, h))
        fd = frenet_apparatus(curve, unit_speed_tol=None)
        errs.append(np.max(np.abs(fd.kappa - 0.5)[interior_slice(len(fd))]))
    assert errs[0] / errs[1] == pytest.approx(16, rel=0.25)


def test_preconditions():
    p = circular_profile(SO3, 1, 1, 0, 1, MAX_STEP * 2)
    with pytest.raises(ValueError):
        integrate_frenet(SO3, p)
    p = circular_profile(SO3, 1, 1, 0, 1, 1e-2)
    with pytest.raises(ValueError):
        integrate_frenet(SO3, p, frame0=np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(ValueError):
        integrate_frenet(SO3, p, g0=2 * np.eye(3))


def test_profile_from_samples_reproduces():
    s = np.linspace(0, 2, 201)
    p = Profile.from_samples(s, 1 + 0.1 * np.sin(s), 0.3 * np.cos(s))
    x = np.linspace(0.05, 1.95, 17)
    np.testing.assert_allclose(p.kappa(x), 1 + 0.1 * np.sin(x), atol=1e-10)
    assert p.h == pytest.approx(0.01)
