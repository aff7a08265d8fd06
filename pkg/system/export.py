# system/export.py
"""
Timeseries tables for `simulate`: one row per grid sample with the couplings,
tracked adiabatic energies, mixing angles and populations of the run.
"""

import logging
import pathlib
from typing import Any, Dict, List, Tuple

import numpy as np

from propagation import SimResult
from propagation.torque import _sampler
from protocols import ProtocolReport, build_two_state_drive
from spectral import track_adiabatic

from .config import RunConfig, config_hash
from .io import write_csv, write_json

logger = logging.getLogger(__name__)

Table = Tuple[List[str], np.ndarray, Dict[str, Any]]


def _metadata(cfg: RunConfig, report: ProtocolReport, axis: str) -> Dict[str, Any]:
    return {
        "kind": "timeseries",
        "axis": axis,
        "protocol": report.name,
        "config_hash": config_hash(cfg),
        "width": cfg.pulses["width"],
        "delay": cfg.pulses["delay"],
        "target": report.target,
    }


def _three_level_table(cfg: RunConfig, report: ProtocolReport) -> Table:
    result: SimResult = report.result
    model = report.model
    times = np.asarray(result.grid.samples)
    axis = "z" if report.name == "waveguide" else "t"
    tracked = track_adiabatic(model, result.grid)

    columns = [axis]
    blocks = [times[:, None]]
    for a, b in model.pulse_set.link_labels():
        columns.append(f"Omega_{a}_{b}")
        blocks.append(np.abs(model.pulse_set.coupling((a, b), times))[:, None])
    columns += [f"E_{k + 1}" for k in range(model.dim)]
    blocks.append(tracked.energies)
    columns += ["theta", "phi"]
    blocks += [tracked.theta[:, None], tracked.phi[:, None]]
    columns += [f"P_{k + 1}" for k in range(model.dim)]
    blocks.append(result.populations)
    columns.append("loss")
    blocks.append(result.loss_accumulated[:, None])
    if result.kind == "liouville" and model.dim >= 3:
        columns.append("abs_rho13")
        blocks.append(result.coherence(1, 3)[:, None])
    return columns, np.hstack(blocks), _metadata(cfg, report, axis)


def _two_state_table(cfg: RunConfig, report: ProtocolReport) -> Table:
    run = report.result
    drive = build_two_state_drive(cfg)
    times = np.asarray(run.trajectory.grid.samples)
    vectors = run.trajectory.vectors
    rows = np.column_stack([times, _sampler(drive.detuning)(times), _sampler(drive.coupling)(times),
                            vectors[:, 0], vectors[:, 1], vectors[:, 2], run.d, run.theta])
    columns = ["t", "Delta", "Omega", "u", "v", "w", "d", "theta"]
    return columns, rows, _metadata(cfg, report, "t")


def timeseries_table(cfg: RunConfig, report: ProtocolReport) -> Table:
    if report.result is None:
        raise ValueError(f"report {report.name!r} carries no propagation result")
    if report.name == "two_state":
        return _two_state_table(cfg, report)
    return _three_level_table(cfg, report)


def write_run(cfg: RunConfig, report: ProtocolReport, out_dir: str) -> List[pathlib.Path]:
    """Write <prefix>_timeseries.csv and <prefix>_report.json as selected by output.formats."""
    prefix = cfg.output["prefix"]
    formats = set(cfg.output["formats"])
    base = pathlib.Path(out_dir)
    paths = []
    if "csv" in formats:
        columns, rows, meta = timeseries_table(cfg, report)
        paths.append(write_csv(str(base / f"{prefix}_timeseries.csv"), columns, rows.tolist(), meta))
    if "json" in formats:
        payload = report.as_dict()
        payload["config"] = cfg.to_dict()
        paths.append(write_json(str(base / f"{prefix}_report.json"), payload))
    for p in paths:
        logger.info("wrote %s", p)
    return paths
