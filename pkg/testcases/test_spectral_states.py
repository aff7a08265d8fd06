"""
Eigensystems and closed-form adiabatic states against numerical diagonalization.
Run with:  python -m unittest testcases/test_spectral_states.py
"""

import unittest

import numpy as np

from core import TimeGrid
from models import build_chain, build_lambda
from protocols import build_model
from pulses import PulseShape, make_stirap_pair
from spectral import (
    UndefinedAngleError,
    adiabatic_states_lambda,
    chain_null_vector,
    dark_state_lambda,
    eigensystem,
    fix_gauge,
    tripod_angles,
    tripod_dark_pair,
)
from system import load_preset


def _lambda_matrix(p, s, delta):
    return np.array([[0, p / 2, 0], [p / 2, delta, s / 2], [0, s / 2, 0]], dtype=complex)


class TestEigensystem(unittest.TestCase):
    def test_hermitian_identities(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        h = a + a.conj().T
        es = eigensystem(h)
        self.assertTrue(es.hermitian)
        self.assertTrue(np.all(np.diff(es.values) >= 0))
        np.testing.assert_allclose(es.vectors.conj().T @ es.vectors, np.eye(5), atol=1e-10)
        np.testing.assert_allclose(h @ es.vectors, es.vectors * es.values, atol=1e-10)

    def test_gauge_makes_leading_component_real(self):
        es = eigensystem(_lambda_matrix(3.0, 4.0, 1.0))
        for k in range(3):
            col = es.vector(k)
            lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            self.assertAlmostEqual(lead.imag, 0.0)
            self.assertGreater(lead.real, 0.0)
        np.testing.assert_allclose(fix_gauge(es.vectors), es.vectors)

    def test_non_hermitian(self):
        h = _lambda_matrix(3.0, 4.0, 0.0)
        h[1, 1] -= 2.0j
        es = eigensystem(h)
        self.assertFalse(es.hermitian)
        self.assertFalse(es.defective)
        np.testing.assert_allclose(h @ es.vectors, es.vectors * es.values, atol=1e-9)

    def test_defective_flag(self):
        es = eigensystem(np.array([[1.0, 1.0], [0.0, 1.0]]))
        self.assertTrue(es.defective)

    def test_rejects_non_square(self):
        with self.assertRaises(ValueError):
            eigensystem(np.zeros((2, 3)))


class TestLambdaStates(unittest.TestCase):
    def test_dark_state_is_null_vector(self):
        p, s = 3.0 * np.exp(0.4j), 5.0 * np.exp(-1.1j)
        d = dark_state_lambda(p, s)
        h = np.array([[0, np.conj(p) / 2, 0], [p / 2, 0, np.conj(s) / 2], [0, s / 2, 0]])
        np.testing.assert_allclose(h @ d.amplitudes, 0.0, atol=1e-12)
        self.assertAlmostEqual(d.norm(), 1.0)
        with self.assertRaises(UndefinedAngleError):
            dark_state_lambda(0.0, 0.0)

    def test_closed_form_matches_diagonalization(self):
        for p, s, delta in [(3.0, 4.0, 0.0), (10.0, 2.0, 5.0), (1.0, 7.0, -3.0)]:
            h = _lambda_matrix(p, s, delta)
            states = adiabatic_states_lambda(p, s, delta)
            for vec, energy in ((states.plus, states.e_plus), (states.zero, states.e_zero),
                                (states.minus, states.e_minus)):
                np.testing.assert_allclose(h @ vec.amplitudes, energy * vec.amplitudes, atol=1e-12)
            es = eigensystem(h)
            np.testing.assert_allclose(sorted([states.e_minus, states.e_zero, states.e_plus]), es.values,
                                       atol=1e-12)

    def test_model_matrix_agrees(self):
        model = build_lambda(make_stirap_pair(20.0, 20.0, 1.0, 1.2), detuning=4.0)
        t = 0.3
        h = model.matrix(t)
        p = model.pulse_set.coupling((1, 2), t).real
        s = model.pulse_set.coupling((2, 3), t).real
        np.testing.assert_allclose(h, _lambda_matrix(p, s, 4.0), atol=1e-12)


class TestTripodStates(unittest.TestCase):
    def test_dark_pair(self):
        p, s, c = 2.0, 3.0, 1.5
        d1, d2 = tripod_dark_pair(p, s, c)
        h = np.zeros((4, 4))
        h[0, 1] = h[1, 0] = p / 2
        h[2, 1] = h[1, 2] = s / 2
        h[3, 1] = h[1, 3] = c / 2
        for d in (d1, d2):
            np.testing.assert_allclose(h @ d.amplitudes, 0.0, atol=1e-12)
        self.assertAlmostEqual(abs(np.vdot(d1.amplitudes, d2.amplitudes)), 0.0)
        vartheta, phi = tripod_angles(p, s, c)
        self.assertAlmostEqual(np.tan(phi), c / s)
        self.assertAlmostEqual(np.tan(vartheta), p / np.hypot(s, c))
        with self.assertRaises(UndefinedAngleError):
            tripod_angles(0.0, 0.0, 0.0)


class TestDarkStateNullity(unittest.TestCase):
    N_TRIALS = 1000

    def setUp(self):
        self.rng = np.random.default_rng(20240611)

    def _magnitudes(self, n):
        return 10.0 ** self.rng.uniform(-2.0, 2.0, size=n)

    def test_random_lambda_couplings(self):
        mags = self._magnitudes((self.N_TRIALS, 2))
        phases = self.rng.uniform(-np.pi, np.pi, size=(self.N_TRIALS, 2))
        deltas = self.rng.normal(scale=10.0, size=self.N_TRIALS)
        for (mp, ms), (ap, as_), delta in zip(mags, phases, deltas):
            p, s = mp * np.exp(1j * ap), ms * np.exp(1j * as_)
            h = np.array([[0, np.conj(p) / 2, 0], [p / 2, delta, np.conj(s) / 2], [0, s / 2, 0]])
            d = dark_state_lambda(p, s)
            self.assertLessEqual(np.linalg.norm(h @ d.amplitudes), 1e-10 * np.linalg.norm(h, 2))

    def test_random_tripod_couplings(self):
        signs = self.rng.choice([-1.0, 1.0], size=(self.N_TRIALS, 3))
        triples = signs * self._magnitudes((self.N_TRIALS, 3))
        for p, s, c in triples:
            h = np.zeros((4, 4))
            h[0, 1] = h[1, 0] = p / 2
            h[2, 1] = h[1, 2] = s / 2
            h[3, 1] = h[1, 3] = c / 2
            scale = 1e-10 * np.linalg.norm(h, 2)
            for d in tripod_dark_pair(p, s, c):
                self.assertLessEqual(np.linalg.norm(h @ d.amplitudes), scale)


class TestEigenvalueIdentities(unittest.TestCase):
    def _check(self, cfg):
        model = build_model(cfg)
        lo, hi = model.pulse_set.span()
        delta = float(model.detunings[1])
        for t in TimeGrid.uniform(lo, hi, 1024).samples:
            minus, zero, plus = eigensystem(model.matrix(t)).values
            p = abs(model.pulse_set.coupling((1, 2), t))
            s = abs(model.pulse_set.coupling((2, 3), t))
            self.assertLess(abs(zero), 1e-10)
            self.assertLess(abs(plus + minus - delta), 1e-10)
            self.assertLess(abs(plus * minus + (p ** 2 + s ** 2) / 4.0), 1e-10)

    def test_resonant_pair(self):
        self._check(load_preset("fig2"))

    def test_detuned_pair(self):
        self._check(load_preset("fig2").with_value("system.detuning", 4.0))


class TestChainNullVector(unittest.TestCase):
    def test_five_level_null_vector(self):
        couplings = [2.0, 5.0, 3.0, 4.0]
        v = chain_null_vector(couplings)
        shapes = [PulseShape("flat", c, 10.0) for c in couplings]
        h = build_chain(shapes, [0.0] * 5).matrix(0.0)
        np.testing.assert_allclose(h @ v.amplitudes, 0.0, atol=1e-12)
        np.testing.assert_allclose(v.amplitudes[1::2], 0.0)

    def test_even_chain_rejected(self):
        with self.assertRaises(ValueError):
            chain_null_vector([1.0, 2.0, 3.0])


if __name__ == "__main__":
    unittest.main()
