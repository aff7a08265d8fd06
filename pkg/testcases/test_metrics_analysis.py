"""
Analyses of result files on synthetic scans and timeseries with known answers.
Run with:  python -m unittest testcases/test_metrics_analysis.py
"""

import os
import tempfile
import unittest

import numpy as np

from metrics import AnalysisError, format_summary, run_analysis
from sweeps import ScanAxis, ScanResult
from system import write_csv

FWHM_PER_SIGMA = 2.0 * np.sqrt(2.0 * np.log(2.0))


def _write_scan(path, axes, values, observable="P_target"):
    status = np.full(values.shape, "ok", dtype=object)
    ScanResult(tuple(axes), observable, values, status, "0123456789abcdef").to_csv(path)
    return path


class AnalysisCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)


class TestProfileAnalysis(AnalysisCase):
    def test_gaussian_scan(self):
        x = np.linspace(-5.0, 5.0, 101)
        axis = ScanAxis("system.two_photon_detuning", tuple(x))
        path = _write_scan(self.path("p.csv"), [axis], np.exp(-(x - 0.7) ** 2 / 2.0))
        summary = run_analysis("profile", path)
        self.assertTrue(summary["ok"])
        self.assertEqual(summary["axis"], "system.two_photon_detuning")
        self.assertEqual(summary["n_points"], 101)
        self.assertAlmostEqual(summary["center"], 0.7, places=2)
        self.assertAlmostEqual(summary["peak_at"], 0.7, places=2)
        self.assertAlmostEqual(summary["width"], FWHM_PER_SIGMA, delta=0.01)
        self.assertEqual(summary["config_hash"], "0123456789abcdef")

    def test_failed_points_and_wrong_rank(self):
        x = np.linspace(-5.0, 5.0, 41)
        y = np.exp(-x ** 2)
        y[3] = np.nan
        path = _write_scan(self.path("nan.csv"), [ScanAxis("pulses.delay", tuple(x))], y)
        with self.assertRaises(AnalysisError):
            run_analysis("profile", path)
        axes = [ScanAxis("pulses.peak", (1.0, 2.0)), ScanAxis("pulses.delay", (0.0, 1.0))]
        path = _write_scan(self.path("2d.csv"), axes, np.ones((2, 2)))
        with self.assertRaises(AnalysisError):
            run_analysis("profile", path)


class TestLinewidthScaling(AnalysisCase):
    def test_linear_width_growth(self):
        amplitudes = np.array([2.0, 4.0, 8.0, 16.0])
        detunings = np.linspace(-60.0, 60.0, 241)
        values = np.exp(-detunings[None, :] ** 2 / (2.0 * amplitudes[:, None] ** 2))
        axes = [ScanAxis("pulses.peak", tuple(amplitudes)), ScanAxis("system.two_photon_detuning", tuple(detunings))]
        summary = run_analysis("linewidth-scaling", _write_scan(self.path("lw.csv"), axes, values))
        self.assertAlmostEqual(summary["exponent"], 1.0, delta=0.02)
        self.assertEqual(summary["n_points"], 4)
        self.assertAlmostEqual(summary["width@2"], 2.0 * FWHM_PER_SIGMA, delta=0.05)
        self.assertEqual(summary["amplitude_axis"], "pulses.peak")

    def test_needs_two_axes(self):
        x = np.linspace(-5.0, 5.0, 41)
        path = _write_scan(self.path("1d.csv"), [ScanAxis("pulses.delay", tuple(x))], np.exp(-x ** 2))
        with self.assertRaises(AnalysisError):
            run_analysis("linewidth-scaling", path)


class TestTransitionTimeAnalysis(AnalysisCase):
    def _timeseries(self, name, meta=None, column="P_3"):
        t = np.linspace(-6.0, 6.0, 2401)
        p = 0.5 * (1.0 + np.tanh(t))
        metadata = {"kind": "timeseries", "axis": "t", "target": 3, "width": 1.0, "delay": 1.0}
        metadata.update(meta or {})
        rows = np.column_stack([t, p]).tolist()
        return str(write_csv(self.path(name), ["t", column], rows, metadata))

    def test_logistic_rise(self):
        path = self._timeseries("ts.csv")
        summary = run_analysis("transition-time", path)
        self.assertTrue(summary["defined"])
        self.assertAlmostEqual(summary["measured"], 2.0 * np.arctanh(0.98), delta=1e-3)
        self.assertTrue(np.isfinite(summary["predicted"]))
        summary = run_analysis("transition-time", path, epsilon=0.05)
        self.assertAlmostEqual(summary["measured"], 2.0 * np.arctanh(0.9), delta=1e-3)

    def test_bad_inputs(self):
        with self.assertRaises(AnalysisError):
            run_analysis("transition-time", self._timeseries("scan.csv", {"kind": "scan"}))
        with self.assertRaises(AnalysisError):
            run_analysis("transition-time", self._timeseries("col.csv", column="P_2"))
        with self.assertRaises(AnalysisError):
            run_analysis("transition-time", self._timeseries("eps.csv"), epsilon=0.7)


class TestDispatch(AnalysisCase):
    def test_unknown_analysis_and_missing_file(self):
        with self.assertRaises(AnalysisError):
            run_analysis("spectrum", self.path("x.csv"))
        with self.assertRaises(AnalysisError):
            run_analysis("profile", self.path("absent.csv"))

    def test_format_summary(self):
        text = format_summary({"analysis": "profile", "ok": True, "n": 3, "width": 0.5})
        self.assertEqual(text, "analysis=profile\nok=true\nn=3\nwidth=0.5")


if __name__ == "__main__":
    unittest.main()
