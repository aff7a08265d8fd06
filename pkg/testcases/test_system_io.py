"""
Result files: metadata CSVs, JSON reports and the simulate timeseries tables.
Run with:  python -m unittest testcases/test_system_io.py
"""

import json
import os
import pathlib
import tempfile
import unittest

import numpy as np

from protocols import run_protocol
from system import TOOLKIT_VERSION, load_preset, read_csv, write_csv, write_json
from system.export import timeseries_table, write_run


class TestCsv(unittest.TestCase):
    def test_metadata_and_number_format(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "nested", "t.csv")
            write_csv(path, ["x", "n", "flag", "status"],
                      [[0.1, 3, True, "ok"], [1e-20, 4, False, "failed:ValueError"]],
                      {"kind": "scan", "shape": "2"})
            lines = pathlib.Path(path).read_text(encoding="utf-8").splitlines()
            self.assertTrue(lines[0].startswith("# "))
            self.assertIn("0.10000000000000001,3,true,ok", lines)

            table = read_csv(path)
            self.assertEqual(table.metadata["toolkit_version"], TOOLKIT_VERSION)
            self.assertEqual(table.metadata["kind"], "scan")
            self.assertEqual(table.columns, ["x", "n", "flag", "status"])
            np.testing.assert_array_equal(table.column("x"), [0.1, 1e-20])
            self.assertEqual(table.text_column("status"), ["ok", "failed:ValueError"])
            with self.assertRaises(KeyError):
                table.column("y")

    def test_malformed_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            ragged = os.path.join(tmp, "ragged.csv")
            pathlib.Path(ragged).write_text("# kind: scan\na,b\n1,2\n3\n", encoding="utf-8")
            with self.assertRaises(ValueError):
                read_csv(ragged)
            empty = os.path.join(tmp, "empty.csv")
            pathlib.Path(empty).write_text("# kind: scan\n", encoding="utf-8")
            with self.assertRaises(ValueError):
                read_csv(empty)


class TestJson(unittest.TestCase):
    def test_sorted_and_versioned(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_json(os.path.join(tmp, "r.json"), {"b": 1, "a": [1.5, 2.5]})
            text = path.read_text(encoding="utf-8")
            self.assertLess(text.index('"a"'), text.index('"b"'))
            self.assertEqual(json.loads(text)["toolkit_version"], TOOLKIT_VERSION)

    def test_nan_is_refused(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ValueError):
                write_json(os.path.join(tmp, "r.json"), {"x": float("nan")})


class TestTimeseries(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.cfg = load_preset("fig2").with_value("protocol.samples", 129)
        cls.report = run_protocol(cls.cfg)

    def test_three_level_table(self):
        columns, rows, meta = timeseries_table(self.cfg, self.report)
        self.assertEqual(columns[0], "t")
        for name in ("E_1", "E_2", "E_3", "theta", "phi", "P_1", "P_2", "P_3", "loss"):
            self.assertIn(name, columns)
        self.assertEqual(sum(c.startswith("Omega_") for c in columns), 2)
        self.assertNotIn("abs_rho13", columns)
        self.assertEqual(rows.shape, (129, len(columns)))
        self.assertEqual(rows[-1, columns.index("P_3")], self.report.transfer_efficiency)
        self.assertEqual(meta["kind"], "timeseries")
        self.assertEqual(meta["axis"], "t")
        self.assertEqual(meta["target"], 3)

    def test_liouville_table_carries_the_coherence(self):
        cfg = load_preset("dephasing").with_value("protocol.samples", 129)
        columns, rows, _ = timeseries_table(cfg, run_protocol(cfg))
        self.assertIn("abs_rho13", columns)
        self.assertTrue(np.all(rows[:, columns.index("abs_rho13")] <= 0.5 + 1e-9))

    def test_two_state_table(self):
        cfg = load_preset("two-state").with_value("protocol.samples", 257)
        columns, rows, _ = timeseries_table(cfg, run_protocol(cfg))
        self.assertEqual(columns, ["t", "Delta", "Omega", "u", "v", "w", "d", "theta"])
        self.assertEqual(rows.shape, (257, 8))
        self.assertAlmostEqual(rows[0, columns.index("w")], -1.0)

    def test_write_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            paths = write_run(self.cfg, self.report, tmp)
            self.assertEqual([p.name for p in paths], ["fig2_timeseries.csv", "fig2_report.json"])
            table = read_csv(str(paths[0]))
            self.assertEqual(table.metadata["config_hash"], self.cfg.hash)
            report = json.loads(paths[1].read_text(encoding="utf-8"))
            self.assertEqual(report["config"]["pulses"]["peak"], 20.0)

            json_only = self.cfg.with_value("output.formats", ["json"])
            paths = write_run(json_only, self.report, os.path.join(tmp, "j"))
            self.assertEqual([p.suffix for p in paths], [".json"])


if __name__ == "__main__":
    unittest.main()
