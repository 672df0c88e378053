import numpy as np
import pytest

from liecurve.derived_curves import (
    binormal_indicatrix,
    involute,
    normal_indicatrix,
    sign_definite_windows,
    tangent_indicatrix,
)
from liecurve.errors import CuspInRange, VanishingH
from liecurve.frenet import frenet_apparatus, interior_slice
from liecurve.invariants import harmonic_curvature
from liecurve.lie_core import ABELIAN, SU2
from liecurve.synthesis import circular_profile, integrate_frenet


def interior(x):
    x = np.asarray(x)
    return x[interior_slice(len(x))]


def rel_std(x):
    x = interior(x)
    return float(x.std() / abs(x.mean()))


def test_tangent_indicatrix_slant(corpus, group):
    _, _, fd = corpus.slant(group)
    res = tangent_indicatrix(fd)
    assert rel_std(res.harmonic_ratio) <= 1e-3
    assert res.deltas["kappa"] <= 1e-4
    assert res.deltas["tau"] <= 5e-3
    assert res.deltas["tau_G"] <= 1e-6
    assert res.deltas["rate"] <= 1e-4
    assert res.orthogonality <= 1e-8


def test_normal_indicatrix_slant(corpus, group):
    _, _, fd = corpus.slant(group)
    res = normal_indicatrix(fd)
    assert res.deltas["tau_eff"] <= 1e-3
    assert np.max(np.abs(interior(res.fd.kappa) - np.sqrt(2))) <= 1e-3
    assert res.deltas["rate"] <= 1e-4
    assert res.deltas["tau_G"] <= 1e-6


def test_binormal_indicatrix_slant(corpus, group):
    _, _, fd = corpus.slant(group)
    res = binormal_indicatrix(fd, (0.2, 0.8))
    assert rel_std(res.harmonic_ratio) <= 1e-3
    assert res.deltas["kappa"] <= 5e-3
    assert res.deltas["tau"] <= 5e-3
    assert res.deltas["rate"] <= 1e-4
    assert res.orthogonality <= 1e-8
    assert res.extras["epsilon"] == 1.0


def test_binormal_negative_window_has_negative_epsilon(corpus):
    _, _, fd = corpus.slant(ABELIAN)
    res = binormal_indicatrix(fd, (-0.8, -0.2))
    assert res.extras["epsilon"] == -1.0
    assert rel_std(res.harmonic_ratio) <= 1e-3


def test_binormal_window_across_zero_raises(corpus):
    _, _, fd = corpus.slant(ABELIAN)
    with pytest.raises(VanishingH):
        binormal_indicatrix(fd, (-0.5, 0.5))


def test_binormal_h_zero_raises():
    curve, _ = integrate_frenet(SU2, circular_profile(SU2, 1.0, 1.0, 0.0, 2.0, 1e-3))
    with pytest.raises(VanishingH):
        binormal_indicatrix(frenet_apparatus(curve))


def test_sign_definite_windows():
    H = np.array([-2.0, -1.0, 0.0, 1.0, 2.0, 3.0])
    assert sign_definite_windows(H) == [(0, 2), (3, 6)]
    assert sign_definite_windows(H, floor=1.5) == [(0, 1), (4, 6)]


def test_involute_slant(corpus, group):
    curve, _, fd = corpus.slant(group)
    res = involute(curve, fd, 10.0)
    assert rel_std(res.harmonic_ratio) <= 1e-3
    assert res.orthogonality <= 1e-8
    assert res.deltas["kappa"] <= 5e-3 and res.deltas["tau"] <= 5e-3
    assert res.deltas["tau_G"] <= 1e-6
    # curvature carries the 1/|c - s| factor; the ratio to tau_eff does not
    H, _ = harmonic_curvature(fd)
    idx = np.arange(0, len(fd), 10)
    expected = np.sqrt(1 + H[idx] ** 2) / np.abs(10.0 - fd.s[idx])
    assert np.max(np.abs(interior(res.fd.kappa - expected))) <= 5e-3


def test_involute_cusp(corpus):
    curve, _, fd = corpus.slant(ABELIAN)
    with pytest.raises(CuspInRange):
        involute(curve, fd, 0.5)
    with pytest.raises(CuspInRange):
        involute(curve, fd, fd.s[-1] + 0.5 * fd.h)


@pytest.fixture(scope="module")
def helix(corpus):
    return corpus.circular(ABELIAN)


class TestAbelianCircularHelix:
    """Classical checks on the helix with a = b = 1.

    Positions grow along the axis, so roundoff in the torsion of the
    indicatrices is larger than on the slant fixture; the bound used is the
    derived-curve tolerance 5e-3.
    """

    def test_tangent_is_circle(self, helix):
        _, _, fd = helix
        res = tangent_indicatrix(fd)
        assert np.max(np.abs(interior(res.fd.kappa) - np.sqrt(2))) <= 1e-4
        assert np.max(np.abs(interior(res.fd.tau))) <= 5e-3

    def test_normal_is_great_circle(self, helix):
        _, _, fd = helix
        res = normal_indicatrix(fd)
        assert np.max(np.abs(interior(res.fd.kappa) - 1)) <= 1e-4
        assert np.max(np.abs(interior(res.fd.tau))) <= 5e-3

    def test_binormal_is_circle(self, helix):
        _, _, fd = helix
        res = binormal_indicatrix(fd)
        assert np.max(np.abs(interior(res.fd.kappa) - np.sqrt(2))) <= 1e-4
        assert np.max(np.abs(interior(res.fd.tau_eff))) <= 1e-3

    def test_involute_is_plane_curve(self, helix):
        curve, _, fd = helix
        res = involute(curve, fd, 10.0)
        lit = res.extras["literal"]
        assert np.max(np.abs(interior(lit.tau))) <= 1e-3
        assert np.max(np.abs(interior(res.fd.tau))) <= 1e-3
        assert res.curve is not None


def test_non_abelian_involute_has_only_ambient_polyline(corpus):
    curve, _, fd = corpus.slant(SU2)
    res = involute(curve, fd, -10.0)
    assert res.curve is None
    assert res.extras["ambient"].shape == (len(fd), 4)
