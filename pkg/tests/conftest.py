"""Shared curve fixtures, synthesized once per session."""

from __future__ import annotations

import numpy as np
import pytest

from liecurve.frenet import frenet_apparatus
from liecurve.lie_core import ABELIAN, SO3, SU2
from liecurve.synthesis import (
    Profile,
    circular_profile,
    general_helix_profile,
    integrate_frenet,
    slant_helix_profile,
)

GROUPS = (ABELIAN, SO3, SU2)
GROUP_IDS = [g.name for g in GROUPS]
H = 1e-3


class Corpus:
    """Lazily built fixture curves keyed by ``(kind, group name)``."""

    def __init__(self):
        self._cache = {}

    def _get(self, key, build):
        if key not in self._cache:
            curve, exact = build()
            self._cache[key] = (curve, exact, frenet_apparatus(curve))
        return self._cache[key]

    def slant(self, g):
        """m = 1, kappa0 = 1 on [-0.85, 0.85]; returns (curve, exact, measured)."""
        return self._get(("slant", g.name),
                         lambda: integrate_frenet(g, slant_helix_profile(g, 1.0, 1.0, -0.85, 0.85, H)))

    def circular(self, g, kappa=0.5, tau=0.5, s1=8.0):
        return self._get(("circular", g.name, kappa, tau, s1),
                         lambda: integrate_frenet(g, circular_profile(g, kappa, tau, 0.0, s1, H)))

    def general(self, g, c=0.7, s1=6.0):
        def kappa(s):
            return 1.0 + 0.1 * np.sin(s)
        return self._get(("general", g.name, c, s1),
                         lambda: integrate_frenet(g, general_helix_profile(g, c, kappa, 0.0, s1, H)))

    def generic(self, g):
        """kappa = 1, tau = tau_G + s^2 on [0.2, 1.5]: neither helix family."""
        tG = g.tau_G
        prof = Profile(lambda s: np.ones(np.shape(s)), lambda s: tG + np.asarray(s) ** 2,
                       0.2, 1.5, H, "generic")
        return self._get(("generic", g.name), lambda: integrate_frenet(g, prof))


_CORPUS = Corpus()


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    return _CORPUS


@pytest.fixture(params=GROUPS, ids=GROUP_IDS)
def group(request):
    return request.param
