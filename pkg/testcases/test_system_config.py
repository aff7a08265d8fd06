"""
Run configuration: defaults, validation errors with positions, dotted paths,
hashing and the shipped presets.
Run with:  python -m unittest testcases/test_system_config.py
"""

import os
import tempfile
import unittest

from system import (
    ConfigError,
    apply_overrides,
    config_hash,
    get_path,
    list_presets,
    load_config,
    load_preset,
    normalize,
    parse_config,
)


class TestNormalize(unittest.TestCase):
    def test_defaults_are_filled(self):
        cfg = normalize({})
        self.assertEqual(cfg.system["topology"], "lambda")
        self.assertEqual(cfg.pulses["peak"], 20.0)
        self.assertEqual(cfg.pulses["delay"], 1.2)
        self.assertEqual(cfg.protocol["samples"], 1025)
        self.assertEqual(cfg.integrator["method"], "exp_midpoint")
        self.assertEqual(cfg.output["formats"], ["csv", "json"])
        self.assertIsNone(cfg.scan)

    def test_normal_form_reparses_to_itself(self):
        for name in ("fig2", "composite-plateau", "waveguide3", "dephasing"):
            cfg = load_preset(name)
            self.assertEqual(parse_config(cfg.to_json()), cfg, msg=name)

    def test_numbers_are_coerced(self):
        cfg = normalize({"pulses": {"peak": 30}, "protocol": {"samples": 257.0}})
        self.assertIsInstance(cfg.pulses["peak"], float)
        self.assertIsInstance(cfg.protocol["samples"], int)

    def test_bad_values(self):
        bad = [
            {"pulses": {"peak": "strong"}},
            {"pulses": {"peak": float("nan")}},
            {"pulses": {"peak": True}},
            {"protocol": {"samples": 2.5}},
            {"system": {"topology": "star"}},
            {"system": {"counterdiabatic": 1}},
            {"system": {"dephasing": [[1, 3]]}},
            {"pulses": {"window": [0.0]}},
            {"output": {"formats": ["xml"]}},
            {"schema_version": "2.0"},
            {"extras": {}},
            {"pulses": []},
        ]
        for raw in bad:
            with self.assertRaises(ConfigError, msg=str(raw)):
                normalize(raw)

    def test_config_error_is_a_value_error(self):
        self.assertTrue(issubclass(ConfigError, ValueError))

    def test_waveguide_block_defaults(self):
        cfg = normalize({"system": {"topology": "waveguide",
                                    "waveguide": {"separations": [{"z_center": 0.6}, {}]}}})
        wg = cfg.system["waveguide"]
        self.assertEqual(wg["n_guides"], 3)
        self.assertEqual(wg["separations"][1], {"d_min": 1.0, "curvature": 1.0, "z_center": 0.0})
        self.assertEqual(wg["separations"][0]["z_center"], 0.6)


class TestScanBlock(unittest.TestCase):
    def test_linspace_axis(self):
        cfg = normalize({"scan": {"axes": [{"path": "pulses.delay", "linspace": [0.0, 1.0, 5]}]}})
        self.assertEqual(cfg.scan["axes"][0]["values"], [0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertEqual(cfg.scan["observable"], "P_target")

    def test_scan_errors(self):
        bad = [
            {"axes": []},
            {"axes": [{"path": "pulses.delay"}]},
            {"axes": [{"values": [1.0]}]},
            {"axes": [{"path": "pulses.delay", "values": [1.0], "step": 1}]},
            {"axes": [{"path": "pulses.delay", "linspace": [0.0, 1.0, 0]}]},
            {"axes": [{"path": "pulses.delay", "values": [1.0]}], "observable": "purity"},
            {"axes": [{"path": "pulses.delay", "values": [1.0]}], "variants": [{"overrides": {}}]},
        ]
        for block in bad:
            with self.assertRaises(ConfigError, msg=str(block)):
                normalize({"scan": block})


class TestParseErrors(unittest.TestCase):
    def test_unknown_key_is_located(self):
        text = '{\n  "pulses": {"peak": 10, "bogus": 1}\n}\n'
        with self.assertRaises(ConfigError) as ctx:
            parse_config(text)
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 26)
        self.assertIn("bogus", str(ctx.exception))

    def test_malformed_json(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config('{"pulses": }')
        self.assertEqual(ctx.exception.line, 1)
        self.assertIsNotNone(ctx.exception.column)

    def test_missing_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ConfigError):
                load_config(os.path.join(tmp, "absent.json"))

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "run.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"pulses": {"peak": 35.0}}')
            self.assertEqual(load_config(path).pulses["peak"], 35.0)


class TestPathsAndHashing(unittest.TestCase):
    def setUp(self):
        self.cfg = load_preset("fig2")

    def test_get_and_set(self):
        changed = self.cfg.with_value("pulses.peak", 30)
        self.assertEqual(changed.get("pulses.peak"), 30.0)
        self.assertEqual(self.cfg.get("pulses.peak"), 20.0)
        self.assertEqual(get_path(self.cfg, "output.formats.0"), "csv")

    def test_unresolvable_paths(self):
        with self.assertRaises(ConfigError):
            self.cfg.get("pulses.amplitude")
        with self.assertRaises(ConfigError):
            self.cfg.with_value("pulses.amplitude", 1.0)
        with self.assertRaises(ConfigError):
            self.cfg.with_value("pulses.peak.value", 1.0)
        with self.assertRaises(ConfigError):
            self.cfg.with_value("pulses.peak", "high")

    def test_apply_overrides(self):
        cfg = apply_overrides(self.cfg, {"pulses.peak": 25.0, "pulses.delay": 0.8})
        self.assertEqual((cfg.pulses["peak"], cfg.pulses["delay"]), (25.0, 0.8))

    def test_hash(self):
        h = config_hash(self.cfg)
        self.assertEqual(len(h), 16)
        self.assertEqual(h, self.cfg.hash)
        self.assertEqual(h, config_hash(parse_config(self.cfg.to_json())))
        self.assertNotEqual(h, config_hash(self.cfg.with_value("pulses.peak", 21.0)))


class TestPresets(unittest.TestCase):
    def test_shipped_presets_all_load(self):
        names = list_presets()
        self.assertEqual(len(names), 19)
        for name in ("fig2", "straddle5", "pap-train", "waveguide3", "two-state", "dd-map"):
            self.assertIn(name, names)
        for name in names:
            load_preset(name)

    def test_presets_are_cached(self):
        self.assertIs(load_preset("fig2"), load_preset("fig2"))

    def test_unknown_preset(self):
        with self.assertRaises(ConfigError):
            load_preset("no-such-preset")


if __name__ == "__main__":
    unittest.main()
