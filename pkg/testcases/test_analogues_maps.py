"""
Waveguide arrays and waveplate stacks as STIRAP analogues.
Run with:  python -m unittest testcases/test_analogues_maps.py
"""

import unittest

import numpy as np

from analogues import (
    SeparationProfile,
    WaveguideLayout,
    WaveplateStack,
    counterintuitive_layout,
    coupling_profile,
    misalignment,
    polarization_propagate,
    propagate_waveguides,
    waveguide_to_chain,
)
from core import TimeGrid
from protocols import run_protocol
from system import load_preset


class TestWaveguideMapping(unittest.TestCase):
    def test_chain_matrix_carries_the_coupling(self):
        layout = counterintuitive_layout(3)
        model = waveguide_to_chain(layout)
        z = 0.3
        kappa = coupling_profile(layout, z)
        h = model.matrix(z)
        self.assertAlmostEqual(h[1, 0].real, kappa[0])
        self.assertAlmostEqual(h[2, 1].real, kappa[1])
        # kappa0 * e^-1 = 20 at closest approach, i.e. a Rabi peak of 40
        self.assertAlmostEqual(coupling_profile(layout, 0.6)[0], 20.0)

    def test_layout_validation(self):
        sep = SeparationProfile(1.0)
        with self.assertRaises(ValueError):
            WaveguideLayout(2, (sep,), 10.0)
        with self.assertRaises(ValueError):
            WaveguideLayout(3, (sep,), 10.0)
        with self.assertRaises(ValueError):
            WaveguideLayout(3, (sep, sep), 10.0, mismatch=(0.0, 0.0))
        with self.assertRaises(ValueError):
            SeparationProfile(0.0)
        with self.assertRaises(ValueError):
            counterintuitive_layout(5)
        with self.assertRaises(ValueError):
            propagate_waveguides(counterintuitive_layout(3), input_guide=4)


class TestWaveguideTransfer(unittest.TestCase):
    def test_counterintuitive_coupling_moves_light_across(self):
        res = propagate_waveguides(counterintuitive_layout(3))
        self.assertGreater(res.final_populations[2], 0.99)
        self.assertLess(float(np.max(res.populations[:, 1])), 0.02)

    def test_robust_to_wavelength(self):
        layout = counterintuitive_layout(3)
        for factor in (1.0, 3.0):
            res = propagate_waveguides(layout.scaled(factor))
            self.assertGreater(res.final_populations[2], 0.99, msg=f"factor={factor}")

    def test_reversed_input_lights_the_middle_guide(self):
        res = propagate_waveguides(counterintuitive_layout(3), input_guide=3)
        self.assertGreater(float(np.max(res.populations[:, 1])), 0.1)

    def test_five_guide_straddle(self):
        layout = counterintuitive_layout(5, inner_d_min=1.0 - np.log(2.0))
        res = propagate_waveguides(layout)
        self.assertGreater(res.final_populations[4], 0.95)

    def test_preset_run(self):
        report = run_protocol(load_preset("waveguide3"))
        self.assertEqual(report.name, "waveguide")
        self.assertEqual(report.target, 3)
        self.assertGreater(report.transfer_efficiency, 0.99)
        self.assertTrue(report.oracles["power_conservation"].passed)


class TestPolarization(unittest.TestCase):
    def test_slowly_rotating_half_wave_stack(self):
        n, a0, a1 = 21, 0.0, np.pi / 4
        stack = WaveplateStack.rotating_half_wave(n, a0, a1)
        traj = polarization_propagate(stack, [1.0, 0.0, 0.0])
        step = (a1 - a0) / (n - 1)
        self.assertTrue(np.all(misalignment(traj, stack) <= 2.0 * step + 1e-9))
        np.testing.assert_allclose(traj.final, [0.0, 1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(traj.lengths(), 1.0)

    def test_coarse_stack_loses_the_axis(self):
        stack = WaveplateStack.rotating_half_wave(2, 0.0, np.pi / 4)
        traj = polarization_propagate(stack, [1.0, 0.0, 0.0])
        np.testing.assert_allclose(traj.final, [-1.0, 0.0, 0.0], atol=1e-12)
        self.assertAlmostEqual(misalignment(traj, stack)[-1], np.pi / 2)

    def test_continuous_medium(self):
        grid = TimeGrid.uniform(0.0, 1.0, 11)
        traj = polarization_propagate(lambda z: np.array([0.0, 0.0, np.pi]), [1.0, 0.0, 0.0], grid)
        np.testing.assert_allclose(traj.final, [-1.0, 0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(traj.positions, grid.samples)
        with self.assertRaises(ValueError):
            polarization_propagate(lambda z: np.zeros(3), [1.0, 0.0, 0.0])

    def test_input_checks(self):
        with self.assertRaises(ValueError):
            polarization_propagate(WaveplateStack.rotating_half_wave(3, 0.0, 1.0), [1.0, 1.0, 0.0])
        with self.assertRaises(ValueError):
            WaveplateStack(())
        with self.assertRaises(ValueError):
            WaveplateStack.rotating_half_wave(0, 0.0, 1.0)


if __name__ == "__main__":
    unittest.main()
