"""
Value-type tests for states, density matrices, Bloch vectors and time grids.
Run with:  python -m unittest testcases/test_core_states.py
"""

import unittest

import numpy as np

from core import (
    BLOCH_TOL,
    BlochVector,
    DensityMatrix,
    PhaseConventionError,
    StateVector,
    TimeGrid,
    bloch_from_three_state,
    fidelity_to,
    populations,
)


class TestStateVector(unittest.TestCase):
    def test_basis_and_norm(self):
        s = StateVector.basis(3, 2)
        self.assertEqual(s.dim, 3)
        self.assertEqual(populations(s).tolist(), [0.0, 1.0, 0.0])
        self.assertAlmostEqual(s.norm(), 1.0)

    def test_rejects_bad_input(self):
        with self.assertRaises(ValueError):
            StateVector([1.0])
        with self.assertRaises(ValueError):
            StateVector([1.0, np.nan])
        with self.assertRaises(ValueError):
            StateVector.basis(3, 4)

    def test_amplitudes_are_read_only(self):
        s = StateVector([1.0, 0.0])
        with self.assertRaises(ValueError):
            s.amplitudes[0] = 0.5

    def test_fidelity(self):
        a = StateVector([1.0, 1.0j])
        b = StateVector(np.array([1.0, 1.0j]) / np.sqrt(2))
        self.assertAlmostEqual(fidelity_to(b, b), 1.0)
        self.assertAlmostEqual(fidelity_to(StateVector.basis(2, 1), b), 0.5)
        self.assertEqual(a.dim, 2)
        with self.assertRaises(ValueError):
            fidelity_to(StateVector.basis(3, 1), b)


class TestDensityMatrix(unittest.TestCase):
    def test_from_state(self):
        psi = StateVector(np.array([1.0, 0.0, 1.0j]) / np.sqrt(2))
        rho = DensityMatrix.from_state(psi)
        self.assertAlmostEqual(rho.trace(), 1.0)
        np.testing.assert_allclose(rho.populations(), [0.5, 0.0, 0.5])
        self.assertGreater(rho.min_eigenvalue(), -1e-12)
        np.testing.assert_allclose(populations(rho), [0.5, 0.0, 0.5])

    def test_rejects_non_hermitian(self):
        with self.assertRaises(ValueError):
            DensityMatrix([[1.0, 0.5], [0.0, 0.0]])
        with self.assertRaises(ValueError):
            DensityMatrix([[1.0, 0.0, 0.0]])

    def test_populations_type_check(self):
        with self.assertRaises(TypeError):
            populations(np.array([1.0, 0.0]))


class TestBlochVector(unittest.TestCase):
    def test_length_bound(self):
        b = BlochVector(0.6, 0.0, -0.8)
        self.assertAlmostEqual(b.length(), 1.0)
        with self.assertRaises(ValueError):
            BlochVector(1.0, 0.1, 0.0)
        with self.assertRaises(ValueError):
            BlochVector.from_array([1.0, 0.0])

    def test_three_state_mapping(self):
        # (u, v, w) = (-C3, -i C2, C1)
        c = np.array([0.6, 0.0, -0.8])
        b = bloch_from_three_state(StateVector(c))
        np.testing.assert_allclose(b.as_array(), [0.8, 0.0, 0.6], atol=1e-12)

    def test_imaginary_middle_amplitude_maps_to_real_v(self):
        c = np.array([0.6, 0.8j, 0.0])
        b = bloch_from_three_state(StateVector(c))
        np.testing.assert_allclose(b.as_array(), [0.0, 0.8, 0.6], atol=1e-12)

    def test_global_phase_is_removed(self):
        c = np.exp(0.7j) * np.array([0.6, 0.0, -0.8])
        b = bloch_from_three_state(StateVector(c))
        np.testing.assert_allclose(np.abs(b.as_array()), [0.8, 0.0, 0.6], atol=1e-12)

    def test_phase_convention_violation(self):
        c = np.array([0.6, 0.8, 0.0])
        with self.assertRaises(PhaseConventionError):
            bloch_from_three_state(StateVector(c))

    def test_default_tolerance_matches_the_bloch_length_check(self):
        # the residue lands on C1 at about 0.75 of the phase error on C2
        small = bloch_from_three_state(StateVector(np.array([0.6, 0.8j + 1e-7, 0.0])))
        self.assertGreater(small.residual, 1e-8)
        self.assertLess(small.residual, BLOCH_TOL)
        with self.assertRaises(PhaseConventionError):
            bloch_from_three_state(StateVector(np.array([0.6, 0.8j + 1e-5, 0.0])))


class TestTimeGrid(unittest.TestCase):
    def test_uniform(self):
        g = TimeGrid.uniform(-1.0, 1.0, 5)
        self.assertEqual(len(g), 5)
        np.testing.assert_allclose(g.samples, [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_invalid_grids(self):
        with self.assertRaises(ValueError):
            TimeGrid.uniform(1.0, 0.0, 5)
        with self.assertRaises(ValueError):
            TimeGrid.uniform(0.0, 1.0, 1)
        with self.assertRaises(ValueError):
            TimeGrid.from_samples([0.0, 0.5, 0.5, 1.0])


if __name__ == "__main__":
    unittest.main()
