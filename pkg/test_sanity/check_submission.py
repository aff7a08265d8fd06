#!/usr/bin/env python3
# test_sanity/check_submission.py
# Minimal smoke tests to ensure the toolkit imports and runs.
# Physics is not checked here, only that entry points execute without crashing.

import json
import subprocess
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]
SCRATCH = REPO_ROOT / "test_sanity" / "_tmp"

SMOKE_SAMPLES = 129

CHECKS = []


def record(name: str, ok: bool, msg: str = ""):
    CHECKS.append((name, ok, msg))
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    print(f"{line}: {msg}" if msg else line)


def import_or_fail(module_path: str):
    try:
        return __import__(module_path, fromlist=["*"])
    except Exception as e:
        raise ImportError(f"cannot import '{module_path}': {e}") from e


def step_model():
    name = "Model: build_lambda(make_stirap_pair(...)) is Hermitian"
    try:
        pulses = import_or_fail("pulses")
        models = import_or_fail("models")
        model = models.build_lambda(pulses.make_stirap_pair(20.0, 20.0, 1.0, 1.2))
        h = model.matrix(0.0)
        if h.shape != (3, 3):
            raise ValueError(f"expected a 3x3 Hamiltonian, got {h.shape}")
        if abs(h - h.conj().T).max() > 1e-12:
            raise ValueError("lossless Hamiltonian is not Hermitian")
        record(name, True)
    except Exception as e:
        record(name, False, str(e))


def step_propagate():
    name = "Propagation: propagate_tdse on the lambda model"
    try:
        core = import_or_fail("core")
        pulses = import_or_fail("pulses")
        models = import_or_fail("models")
        propagation = import_or_fail("propagation")
        model = models.build_lambda(pulses.make_stirap_pair(20.0, 20.0, 1.0, 1.2))
        res = propagation.propagate_tdse(model, grid=core.TimeGrid.uniform(-4.6, 4.6, SMOKE_SAMPLES))
        p3 = float(res.final_populations[2])
        record(name, True, f"P3={p3:.4f}")
    except Exception as e:
        record(name, False, str(e))


def step_protocol():
    name = "Protocols: run_protocol(load_preset('fig2'))"
    try:
        protocols = import_or_fail("protocols")
        system = import_or_fail("system")
        cfg = system.load_preset("fig2").with_value("protocol.samples", SMOKE_SAMPLES)
        report = protocols.run_protocol(cfg)
        json.dumps(report.as_dict(), allow_nan=False)
        record(name, True, f"efficiency={report.transfer_efficiency:.4f}")
    except Exception as e:
        record(name, False, str(e))


def step_scan():
    name = "Sweeps: 2-point scan over pulses.delay"
    try:
        sweeps = import_or_fail("sweeps")
        system = import_or_fail("system")
        base = system.load_preset("fig2").with_value("protocol.samples", SMOKE_SAMPLES)
        spec = sweeps.ScanSpec(base, (sweeps.ScanAxis("pulses.delay", (-1.2, 1.2)),))
        result = sweeps.scan(spec, workers=1)
        if result.shape != (2,):
            raise ValueError(f"expected shape (2,), got {result.shape}")
        record(name, True, f"values={[round(float(v), 4) for v in result.values]}")
    except Exception as e:
        record(name, False, str(e))


def step_cli():
    name = "CLI: system/stirap_cli.py simulate --preset fig2"
    try:
        script_path = REPO_ROOT / "system" / "stirap_cli.py"
        if not script_path.is_file():
            raise FileNotFoundError("Missing system/stirap_cli.py")
        out_dir = SCRATCH / "cli"
        cmd = [sys.executable, "-u", str(script_path), "simulate", "--preset", "fig2", "--out-dir", str(out_dir)]
        proc = subprocess.run(cmd, cwd=str(REPO_ROOT), capture_output=True, text=True, timeout=180)
        if proc.returncode != 0:
            raise RuntimeError(f"exit code {proc.returncode}: {proc.stderr.strip()[-400:]}")
        report_path = out_dir / "fig2_report.json"
        if not report_path.exists() or not (out_dir / "fig2_timeseries.csv").exists():
            raise FileNotFoundError("CLI did not produce fig2_timeseries.csv and fig2_report.json")
        data = json.loads(report_path.read_text(encoding="utf-8"))
        if "transfer_efficiency" not in data or "config" not in data:
            raise ValueError("report must carry 'transfer_efficiency' and 'config'")
        record(name, True, f"wrote {len(proc.stdout.split())} file(s)")
    except Exception as e:
        record(name, False, str(e))


def summarize() -> int:
    failures = [(name, msg) for name, ok, msg in CHECKS if not ok]
    print(f"\n=== {len(CHECKS) - len(failures)}/{len(CHECKS)} smoke checks passed ===")
    for name, msg in failures:
        print(f"FAIL {name}\n     {msg}")
    return 1 if failures else 0


def main():
    print("=== STIRAP toolkit smoke checks ===")
    sys.path.insert(0, str(REPO_ROOT))
    SCRATCH.mkdir(parents=True, exist_ok=True)

    for step in (step_model, step_propagate, step_protocol, step_scan, step_cli):
        step()

    sys.exit(summarize())


if __name__ == "__main__":
    main()
