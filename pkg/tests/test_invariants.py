import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecurve.errors import ConstantH, GeodesicDegeneracy, NotSlantHelix
from liecurve.frenet import FrenetData, frenet_apparatus, interior_slice
from liecurve.invariants import (
    Classification,
    ConstancyTolerances,
    axis,
    classify,
    constancy,
    harmonic_curvature,
    sigma_N,
    special_sigma,
)
from liecurve.lie_core import ABELIAN, SO3, SU2
from liecurve.synthesis import Profile, circular_profile, integrate_frenet

from conftest import GROUP_IDS, GROUPS


def profile_data(g, kappa, tau, s) -> FrenetData:
    """Frenet data carrying prescribed profiles; the frame is irrelevant here."""
    n = len(s)
    e = np.tile(np.eye(3), (n, 1, 1))
    return FrenetData(g, s, e[:, 0], e[:, 1], e[:, 2], np.asarray(kappa, float) * np.ones(n),
                      np.asarray(tau, float) * np.ones(n), np.full(n, g.tau_G))


def test_harmonic_curvature_examples():
    s = np.linspace(0, 1, 101)
    H, Hp = harmonic_curvature(profile_data(SU2, 1.0, 1.0, s))
    np.testing.assert_array_equal(H, 0.0)
    H, _ = harmonic_curvature(profile_data(SO3, 2.0, 1.5, s))
    np.testing.assert_allclose(H, 0.5)
    H, _ = harmonic_curvature(profile_data(ABELIAN, 2.0, 0.5 * s, s))
    np.testing.assert_allclose(H, 0.25 * s)
    with pytest.raises(GeodesicDegeneracy):
        harmonic_curvature(profile_data(ABELIAN, 0.0, 1.0, s))


def test_sigma_N_generic_example():
    s = np.linspace(-0.8, 0.8, 1601)
    H = s / np.sqrt(1 - s * s)
    fd = profile_data(ABELIAN, 1.0, H, s)
    # oracle: differentiate H with numpy and substitute
    Hp = np.gradient(H, s, edge_order=2)
    oracle = (1 + H * H) ** 1.5 / Hp
    Hm, Hpm = harmonic_curvature(fd)
    sig, valid = sigma_N(fd, Hm, Hpm)
    assert valid.all()
    sl = interior_slice(len(s))
    np.testing.assert_allclose(sig[sl], 1.0, atol=1e-9)
    np.testing.assert_allclose(oracle[sl], 1.0, atol=1e-5)


def test_sigma_N_constant_H():
    s = np.linspace(0, 1, 101)
    fd = profile_data(ABELIAN, 1.0, 0.7, s)
    H, Hp = harmonic_curvature(fd)
    with pytest.raises(ConstantH):
        sigma_N(fd, H, Hp)


def test_special_sigma_examples():
    s = np.linspace(-1, 1, 2001)
    h = s[1] - s[0]
    fd = profile_data(ABELIAN, 0.5, s / 2, s)
    gen, _ = sigma_N(fd, *harmonic_curvature(fd))
    special = special_sigma(ABELIAN, fd.kappa, fd.tau, h)
    assert np.max(np.abs(gen - special)) <= 1e-8
    # Euclidean closed form: kappa = 1/2, tau = s/2 -> H = s, H' = 1
    np.testing.assert_allclose(special, 0.5 * (1 + s * s) ** 1.5, atol=1e-10)
    with pytest.raises(ConstantH):
        special_sigma(SU2, np.ones(50), np.ones(50), 0.01)
    s = np.linspace(-0.8, 0.8, 1601)
    so3 = special_sigma(SO3, np.ones_like(s), 0.5 + s / np.sqrt(1 - s * s), s[1] - s[0])
    np.testing.assert_allclose(so3[interior_slice(len(s))], 1.0, atol=1e-8)


@pytest.mark.parametrize("g", GROUPS, ids=GROUP_IDS)
@settings(max_examples=15, deadline=None)
@given(a=st.floats(0.2, 3.0), b=st.floats(-1.0, 1.0), c=st.floats(0.1, 2.0))
def test_special_matches_generic(g, a, b, c):
    s = np.linspace(0, 2, 401)
    kappa = a * (1.1 + np.sin(s))
    tau = g.tau_G + b + c * s**2
    fd = profile_data(g, kappa, tau, s)
    gen, valid = sigma_N(fd, *harmonic_curvature(fd))
    special = special_sigma(g, kappa, tau, s[1] - s[0])
    ok = valid & np.isfinite(special)
    assert np.max(np.abs(gen[ok] - special[ok]) / np.maximum(1, np.abs(gen[ok]))) <= 1e-8


@settings(max_examples=10, deadline=None)
@given(lam=st.floats(0.25, 4.0))
def test_sigma_N_scale_invariance(lam):
    # scaling lengths by lam scales kappa, tau_eff by 1/lam and leaves sigma_N fixed
    s = np.linspace(-0.8, 0.8, 801)
    H = s / np.sqrt(1 - s * s)
    base = profile_data(ABELIAN, 1.0, H, s)
    scaled = profile_data(ABELIAN, 1.0 / lam, H / lam, lam * s)
    a, _ = sigma_N(base, *harmonic_curvature(base))
    b, _ = sigma_N(scaled, *harmonic_curvature(scaled))
    np.testing.assert_allclose(a, b, rtol=1e-9)


def test_constancy_stats():
    c = constancy([1.0, 1.0, np.nan, 1.0])
    assert (c.mean, c.std, c.n) == (1.0, 0.0, 3)
    c = constancy([1.0, 3.0], mask=[True, False])
    assert c.n == 1 and c.mean == 1.0
    tol = ConstancyTolerances()
    assert not constancy([]).is_constant(tol)
    assert constancy([0.0, 1e-9]).is_constant(tol)
    assert not constancy([1.0, 1.1]).is_constant(tol)


def test_classify_slant(corpus, group):
    _, _, fd = corpus.slant(group)
    rep = classify(fd)
    assert rep.classification is Classification.SLANT_HELIX
    assert rep.theta == pytest.approx(np.pi / 4, abs=1e-3)
    est = rep.axis_estimate
    assert est.max_deviation <= 1e-3
    assert est.max_cosine_error <= 1e-3


def test_axis_components_constant(corpus, group):
    _, _, fd = corpus.slant(group)
    est = axis(fd)
    sl = interior_slice(len(fd))
    X = est.samples[sl]
    assert np.max(X.std(axis=0)) <= 1e-3
    assert np.linalg.norm(est.mean) == pytest.approx(1.0)


def test_axis_of_generic_raises():
    s = np.linspace(0.1, 1.5, 1401)
    fd = profile_data(SU2, 1.0, 1.0 + s**2, s)
    with pytest.raises(NotSlantHelix):
        axis(fd)


def test_classify_general(corpus, group):
    _, _, fd = corpus.general(group)
    rep = classify(fd)
    assert rep.classification is Classification.GENERAL_HELIX
    assert rep.slope == pytest.approx(0.7, abs=1e-3)
    assert rep.lancret_fit["slope"] == pytest.approx(0.7, abs=1e-3)


def test_classify_circular(corpus, group):
    _, _, fd = corpus.circular(group)
    rep = classify(fd)
    assert rep.classification is Classification.CIRCULAR_HELIX
    assert rep.slope == pytest.approx((0.5 - group.tau_G) / 0.5, abs=1e-6)


def test_classify_generic_synthesized():
    # kappa = 1, tau = tau_G + s^2: sigma_N = (1 + s^4)^(3/2) / (2 s) is not constant
    p = Profile(lambda s: np.ones(np.shape(s)), lambda s: 1.0 + np.asarray(s) ** 2, 0.2, 1.5, 1e-3)
    curve, _ = integrate_frenet(SU2, p)
    fd = frenet_apparatus(curve)
    rep = classify(fd)
    assert rep.classification is Classification.GENERIC
    s = fd.s[interior_slice(len(fd))]
    oracle = (1 + s**4) ** 1.5 / (2 * s)
    assert oracle.std() / oracle.mean() > 0.1
    assert rep.constancy["sigma_N"].rel_std > 0.1


def test_classify_geodesic():
    s = np.linspace(0, 1, 101)
    fd = profile_data(SU2, 0.0, 1.0, s)
    assert classify(fd).classification is Classification.GEODESIC


def test_precedence_circular_before_general():
    curve, _ = integrate_frenet(SO3, circular_profile(SO3, 1.0, 0.5, 0.0, 3.0, 1e-3))
    rep = classify(frenet_apparatus(curve))
    # H = 0 is constant and kappa, tau are too
    assert rep.classification is Classification.CIRCULAR_HELIX
