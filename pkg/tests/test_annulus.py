import math

import numpy as np
import pytest

from domekit.annulus import annulus_geometry, asymptotic_ratios, verify_bounds
from domekit.errors import NonpositiveModulusParameter


class TestClosedForms:
    def test_defining_relations_on_grid(self):
        for s in np.linspace(0.1, 60.0, 200):
            g = annulus_geometry(float(s))
            assert g.modulus == pytest.approx(s / (2 * math.pi), rel=1e-14)
            # core length = pi / modulus, on both sides
            assert g.core_length == pytest.approx(math.pi / g.modulus, rel=1e-14)
            assert g.dome_core_length == pytest.approx(
                math.pi / g.dome_modulus, rel=1e-14
            )
            # injectivity radii are half the core lengths
            assert g.nu == pytest.approx(g.core_length / 2, rel=1e-14)
            assert g.nu_hat == pytest.approx(g.dome_core_length / 2, rel=1e-14)
            # extremal dilatation is the moduli ratio
            assert g.K == pytest.approx(g.dome_modulus / g.modulus, rel=1e-14)

    def test_unit_dome_radius(self):
        s = 2 * math.asinh(math.pi)
        assert annulus_geometry(s).nu_hat == pytest.approx(1.0, abs=1e-14)

    def test_lower_bound_domain_edge(self):
        g = annulus_geometry(2 * math.pi**2)
        assert g.nu == pytest.approx(0.5, rel=1e-15)

    def test_nonpositive_rejected(self):
        with pytest.raises(NonpositiveModulusParameter):
            annulus_geometry(0.0)

    def test_small_s_limit(self):
        g = annulus_geometry(1e-8)
        assert g.K == pytest.approx(math.pi / 2, rel=1e-8)


class TestVerifyBounds:
    def test_grid_all_hold(self):
        for s in np.linspace(0.1, 60.0, 500):
            rep = verify_bounds(float(s))
            assert rep.K_le_M and rep.K_le_N
            if float(s) > 2 * math.pi**2:
                assert rep.lower_le_K

    def test_lower_bound_active_at_25(self):
        rep = verify_bounds(25.0)
        assert rep.lower is not None and rep.lower <= rep.K
        assert annulus_geometry(25.0).nu == pytest.approx(0.3947, abs=1e-4)

    def test_lower_bound_inactive_below_threshold(self):
        assert verify_bounds(10.0).lower is None


class TestAsymptotics:
    def test_r1_closed_form(self):
        # r1 is identically 1 - exp(-s)
        for s in (2.0, 10.0, 40.0):
            r1, _ = asymptotic_ratios(s)
            assert r1 == pytest.approx(1 - math.exp(-s), rel=1e-12)

    def test_r1_at_40(self):
        r1, _ = asymptotic_ratios(40.0)
        assert abs(r1 - 1) < 0.01

    def test_r2_frozen_value_at_40(self):
        # computed: r2(s) = (2/s) log(sinh(s/2)/pi); converges like
        # 1 - 2 log(2 pi)/s, so the deviation at s = 40 is 0.0919
        _, r2 = asymptotic_ratios(40.0)
        assert r2 == pytest.approx(0.9081061466795329, abs=1e-12)
        assert abs(r2 - 1) == pytest.approx(2 * math.log(2 * math.pi) / 40.0,
                                            abs=1e-4)

    def test_r2_undefined_for_large_dome_radius(self):
        _, r2 = asymptotic_ratios(1.0)  # nu_hat > 1 here
        assert r2 is None

    def test_both_monotone_to_one(self):
        ss = np.linspace(20.0, 60.0, 81)
        r1s, r2s = zip(*(asymptotic_ratios(float(s)) for s in ss))
        # r1 = 1 - exp(-s) saturates to 1 ulp around s ~ 36; strictly
        # increasing while resolvable, pinned at 1 afterwards
        resolvable = [r for s, r in zip(ss, r1s) if s <= 33.0]
        assert all(b > a for a, b in zip(resolvable, resolvable[1:]))
        assert all(abs(r - 1) < 5e-15 for s, r in zip(ss, r1s) if s > 33.0)
        assert all(b > a for a, b in zip(r2s, r2s[1:]))
        assert all(r < 1 for r in r2s)
