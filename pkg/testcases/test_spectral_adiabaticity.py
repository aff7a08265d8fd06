"""
Adiabaticity diagnostics, eigenvalue tracking and chain criteria.
Run with:  python -m unittest testcases/test_spectral_adiabaticity.py
"""

import unittest

import numpy as np

from core import TimeGrid
from models import build_chain, build_lambda
from pulses import PulseSet, PulseShape, make_stirap_pair
from spectral import (
    A_MIN,
    ap_state_exists,
    dephasing_eta,
    dressed_middle_spectrum,
    global_adiabaticity,
    local_adiabaticity,
    theta_dot,
    track_adiabatic,
    tripod_beta,
)


class TestGlobalLocal(unittest.TestCase):
    def test_global_threshold(self):
        g = global_adiabaticity(10.0)
        self.assertAlmostEqual(g.required, A_MIN)
        self.assertTrue(g.passed)
        g = global_adiabaticity(10.0, excess_bandwidth_ratio=1.0)
        self.assertAlmostEqual(g.required, A_MIN * np.sqrt(2.0))
        self.assertFalse(g.passed)
        with self.assertRaises(ValueError):
            global_adiabaticity(-1.0)

    def test_local_margin_grows_with_amplitude(self):
        weak = local_adiabaticity(make_stirap_pair(5.0, 5.0, 1.0, 1.2))
        strong = local_adiabaticity(make_stirap_pair(20.0, 20.0, 1.0, 1.2))
        self.assertGreater(strong.minimum, weak.minimum)
        self.assertAlmostEqual(strong.minimum / weak.minimum, 4.0, places=3)
        self.assertTrue(np.isfinite(strong.t_min))
        self.assertEqual(strong.excluded, 0)

    def test_zero_coupling_samples_are_excluded(self):
        ps = make_stirap_pair(5.0, 5.0, 1.0, 1.0, shape="sin2")
        grid = np.linspace(-2.0, 2.0, 41)
        loc = local_adiabaticity(ps, grid)
        self.assertGreater(loc.excluded, 0)
        self.assertTrue(np.isnan(loc.margin[0]))
        self.assertTrue(np.isfinite(loc.minimum))

    def test_mixing_floor_validation(self):
        with self.assertRaises(ValueError):
            local_adiabaticity(make_stirap_pair(5.0, 5.0, 1.0, 1.2), mixing_floor=1.5)

    def test_theta_dot_peak_at_overlap(self):
        ps = make_stirap_pair(20.0, 20.0, 1.0, 1.2)
        t = np.linspace(-3.0, 3.0, 601)
        rate = theta_dot(ps, t)
        self.assertAlmostEqual(t[int(np.argmax(rate))], 0.0, places=6)
        self.assertTrue(np.all(rate >= 0))


class TestDephasingExposure(unittest.TestCase):
    def test_eta_matches_gaussian_closed_form(self):
        for delay in (1.0, 2.0):
            ps = make_stirap_pair(30.0, 30.0, 1.0, delay)
            self.assertAlmostEqual(dephasing_eta(ps), 3.0 / (4.0 * delay), places=3)


class TestTripodBeta(unittest.TestCase):
    def test_no_control_gives_zero_beta(self):
        ps = PulseSet({(1, 2): (PulseShape("gaussian", 10.0, 1.0, center=1.0),),
                       (3, 2): (PulseShape("gaussian", 10.0, 1.0, center=-1.0),),
                       (4, 2): (PulseShape("flat", 0.0, 1.0),)}, window=(-5.0, 5.0))
        self.assertAlmostEqual(tripod_beta(ps).beta, 0.0)
        complex_c = ps.with_pulse((4, 2), PulseShape("gaussian", 1.0, 1.0, phase=0.5))
        with self.assertRaises(ValueError):
            tripod_beta(complex_c)

    def test_control_pulse_rotates_dark_subspace(self):
        ps = PulseSet({(1, 2): (PulseShape("gaussian", 10.0, 1.0, center=1.0),),
                       (3, 2): (PulseShape("gaussian", 10.0, 1.0, center=-1.0),),
                       (4, 2): (PulseShape("gaussian", 10.0, 1.0, center=0.0),)}, window=(-6.0, 6.0))
        beta = tripod_beta(ps)
        self.assertGreater(abs(beta.beta), 0.05)
        self.assertAlmostEqual(beta.transition_probability, np.sin(beta.beta) ** 2)


class TestTracking(unittest.TestCase):
    def _model(self, two_photon):
        return build_lambda(make_stirap_pair(20.0, 20.0, 1.0, 1.2), detuning=0.0, two_photon=two_photon)

    def test_resonant_lambda_has_no_crossings(self):
        model = self._model(0.0)
        grid = TimeGrid.uniform(-4.6, 4.6, 401)
        report = track_adiabatic(model, grid)
        self.assertEqual(report.crossing_flags, ())
        # the dark state (label 1) stays at zero energy
        np.testing.assert_allclose(report.energy(1), 0.0, atol=1e-9)
        self.assertGreater(report.local_margin, 1.0)
        self.assertTrue(np.isfinite(report.global_area))

    def test_two_photon_detuning_flags_an_avoided_crossing(self):
        model = self._model(2.0)
        grid = TimeGrid.uniform(-4.6, 4.6, 401)
        report = track_adiabatic(model, grid)
        self.assertGreater(len(report.crossing_flags), 0)

    def test_labels_follow_continuity(self):
        model = self._model(0.0)
        grid = TimeGrid.uniform(-4.6, 4.6, 401)
        report = track_adiabatic(model, grid)
        for k in range(1, len(grid)):
            overlaps = np.abs(np.sum(report.states[k - 1].conj() * report.states[k], axis=0))
            self.assertTrue(np.all(overlaps > 0.9))


class TestChainCriteria(unittest.TestCase):
    def _chain(self, detunings, peak=10.0):
        n = len(detunings)
        shapes = [PulseShape("gaussian", peak, 1.0, center=0.6)]
        shapes += [PulseShape("flat", peak, 20.0) for _ in range(n - 3)]
        shapes += [PulseShape("gaussian", peak, 1.0, center=-0.6)]
        return build_chain(shapes, detunings)

    def test_four_level_sign_rule(self):
        self.assertTrue(ap_state_exists(self._chain([0.0, 10.0, 10.0, 0.0])).exists)
        self.assertFalse(ap_state_exists(self._chain([0.0, 10.0, -10.0, 0.0])).exists)

    def test_five_level_outer_resonance(self):
        cert = ap_state_exists(self._chain([0.0, 0.0, 7.0, 0.0, 0.0]))
        self.assertTrue(cert.exists)
        self.assertTrue(any("irrespective" in n for n in cert.notes))

    def test_dressed_spectrum(self):
        spec = dressed_middle_spectrum(self._chain([0.0, 0.0, 0.0, 0.0], peak=8.0))
        np.testing.assert_allclose(spec.energies, [-4.0, 4.0])
        self.assertAlmostEqual(abs(spec.recommended_detuning), 4.0)

    def test_requires_chain(self):
        with self.assertRaises(ValueError):
            ap_state_exists(build_lambda(make_stirap_pair(1.0, 1.0, 1.0, 1.0)))


if __name__ == "__main__":
    unittest.main()
