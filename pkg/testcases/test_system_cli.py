"""
End-to-end runs of system/stirap_cli.py: written files, stdout lines and exit codes.
Run with:  python -m unittest testcases/test_system_cli.py
"""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
SYS_PY = sys.executable
SCRIPT = REPO_ROOT / "system" / "stirap_cli.py"


class CliCase(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.tmp = pathlib.Path(self.tmpdir.name)
        self.out = self.tmp / "out"

    def tearDown(self):
        self.tmpdir.cleanup()

    def _run_cli(self, *args: str) -> subprocess.CompletedProcess:
        cmd = [SYS_PY, "-u", str(SCRIPT), *args]
        return subprocess.run(cmd, cwd=str(REPO_ROOT), capture_output=True, text=True, timeout=180)

    def _config(self, name: str, body) -> str:
        path = self.tmp / name
        path.write_text(body if isinstance(body, str) else json.dumps(body, indent=2), encoding="utf-8")
        return str(path)

    def _written(self):
        return sorted(p.name for p in self.out.iterdir()) if self.out.exists() else []


class TestSimulate(CliCase):
    def test_simulate_preset(self):
        proc = self._run_cli("simulate", "--preset", "fig2", "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
        printed = [pathlib.Path(line) for line in proc.stdout.split()]
        self.assertEqual([p.name for p in printed], ["fig2_timeseries.csv", "fig2_report.json"])
        self.assertEqual(self._written(), ["fig2_report.json", "fig2_timeseries.csv"])
        report = json.loads((self.out / "fig2_report.json").read_text(encoding="utf-8"))
        self.assertGreater(report["transfer_efficiency"], 0.99)

        proc = self._run_cli("analyze", "transition-time", str(self.out / "fig2_timeseries.csv"))
        self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
        lines = dict(line.split("=", 1) for line in proc.stdout.splitlines())
        self.assertEqual(lines["analysis"], "transition-time")
        self.assertEqual(lines["defined"], "true")

    def test_malformed_config_writes_nothing(self):
        path = self._config("bad.json", '{"pulses": {"peak": 20.0,}}')
        proc = self._run_cli("simulate", "--config", path, "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 2)
        self.assertEqual(proc.stdout, "")
        self.assertEqual(self._written(), [])

    def test_unknown_key_and_bad_tolerance(self):
        path = self._config("unknown.json", {"pulses": {"peak": 20.0, "amplitude": 3}})
        proc = self._run_cli("simulate", "--config", path, "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 2)
        self.assertIn("amplitude", proc.stderr)
        proc = self._run_cli("simulate", "--preset", "fig2", "--tol", "0", "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 2)
        self.assertEqual(self._written(), [])

    def test_integration_fault(self):
        path = self._config("stiff.json", {
            "integrator": {"rel_tol": 1e-12, "abs_tol": 1e-14, "min_step": 0.01, "max_step": 0.05},
        })
        proc = self._run_cli("simulate", "--config", path, "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 3)
        self.assertEqual(self._written(), [])


class TestScanAndAnalyze(CliCase):
    def _scan_config(self, variants=()):
        return self._config("scan.json", {
            "pulses": {"peak": 20.0},
            "protocol": {"samples": 129},
            "scan": {"axes": [{"path": "system.two_photon_detuning", "linspace": [-16.0, 16.0, 33]}],
                     "variants": list(variants)},
            "output": {"prefix": "tp"},
        })

    def test_scan_then_profile(self):
        proc = self._run_cli("scan", "--config", self._scan_config(), "--out-dir", str(self.out), "--workers", "1")
        self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
        self.assertEqual(self._written(), ["tp_scan.csv"])

        proc = self._run_cli("analyze", "profile", str(self.out / "tp_scan.csv"))
        self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
        lines = dict(line.split("=", 1) for line in proc.stdout.splitlines())
        self.assertEqual(lines["ok"], "true")
        self.assertLess(abs(float(lines["center"])), 0.5)

        proc = self._run_cli("analyze", "transition-time", str(self.out / "tp_scan.csv"))
        self.assertEqual(proc.returncode, 4)

    def test_repeated_scans_write_identical_bytes(self):
        config = self._scan_config()
        written = []
        for run, workers in (("first", "1"), ("second", "1"), ("pooled", "2")):
            out = self.tmp / run
            proc = self._run_cli("scan", "--config", config, "--out-dir", str(out), "--workers", workers)
            self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
            written.append((out / "tp_scan.csv").read_bytes())
        self.assertEqual(written[0], written[1])
        self.assertEqual(written[0], written[2])

    def test_scan_variants(self):
        variants = [{"name": "weak", "overrides": {"pulses.peak": 10.0}},
                    {"name": "strong", "overrides": {"pulses.peak": 30.0}}]
        proc = self._run_cli("scan", "--config", self._scan_config(variants), "--out-dir", str(self.out),
                             "--workers", "1")
        self.assertEqual(proc.returncode, 0, f"CLI failed:\nSTDERR:\n{proc.stderr}")
        self.assertEqual(self._written(), ["tp_scan_strong.csv", "tp_scan_weak.csv"])

    def test_scan_without_scan_block(self):
        proc = self._run_cli("scan", "--preset", "fig2", "--out-dir", str(self.out))
        self.assertEqual(proc.returncode, 2)


class TestPresetCommand(CliCase):
    def test_list_and_show(self):
        proc = self._run_cli("preset", "list")
        self.assertEqual(proc.returncode, 0)
        self.assertIn("fig2", proc.stdout.split())
        proc = self._run_cli("preset", "show", "straddle5")
        self.assertEqual(proc.returncode, 0)
        cfg = json.loads(proc.stdout)
        self.assertEqual(cfg["system"]["n_levels"], 5)
        proc = self._run_cli("preset", "show", "nope")
        self.assertEqual(proc.returncode, 2)


if __name__ == "__main__":
    unittest.main()
