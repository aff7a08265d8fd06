# metrics/analysis.py
"""
Analyses run on result files written by `simulate` and `scan`.

  profile            1-D scan -> line center, FWHM, half-height edges, asymmetry flag
  linewidth-scaling  2-D scan (amplitude x detuning) -> FWHM per amplitude, power-law exponent
  transition-time    timeseries -> measured vs predicted eps -> 1-eps rise time of the target

Every analysis returns an ordered dict that `format_summary` prints as key=value lines.
"""

from typing import Any, Callable, Dict, List, Optional

import numpy as np

from protocols import population_transition_time
from sweeps import ScanResult, fit_scaling, line_profile
from system.io import CsvTable, read_csv


class AnalysisError(ValueError):
    pass


# ---------------- helpers ----------------

def _scan(table: CsvTable) -> ScanResult:
    try:
        return ScanResult.from_table(table)
    except (KeyError, ValueError) as e:
        raise AnalysisError(f"not a scan result: {e}") from e


def _finite(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise AnalysisError(f"{what} contains failed points")
    return values


def _number(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.10g" % float(value)
    return str(value)


def format_summary(summary: Dict[str, Any]) -> str:
    return "\n".join(f"{k}={_number(v)}" for k, v in summary.items())


# ---------------- analyses ----------------

def analyze_profile(table: CsvTable, **_) -> Dict[str, Any]:
    result = _scan(table)
    if len(result.axes) != 1:
        raise AnalysisError(f"profile needs a 1-D scan, got shape {result.shape}")
    x = np.asarray(result.axes[0].values)
    y = _finite(result.values, "profile")
    try:
        fit = line_profile(x, y)
    except ValueError as e:
        raise AnalysisError(f"profile fit failed: {e}") from e
    return {
        "analysis": "profile",
        "axis": result.axes[0].path,
        "observable": result.observable,
        "n_points": int(x.size),
        "ok": fit.ok,
        "center": fit.center,
        "width": fit.width,
        "peak": fit.peak,
        "peak_at": fit.peak_at,
        "left": fit.left,
        "right": fit.right,
        "asymmetric": fit.asymmetric,
        "residual": fit.residual,
        "config_hash": result.config_hash,
    }


def analyze_linewidth_scaling(table: CsvTable, **_) -> Dict[str, Any]:
    """Axis 0 is the amplitude, axis 1 the detuning the profile is taken along."""
    result = _scan(table)
    if len(result.axes) != 2:
        raise AnalysisError(f"linewidth-scaling needs a 2-D scan, got shape {result.shape}")
    amplitudes = np.asarray(result.axes[0].values)
    detunings = np.asarray(result.axes[1].values)
    widths: List[float] = []
    for i in range(amplitudes.size):
        try:
            fit = line_profile(detunings, _finite(result.values[i], f"row {i}"))
        except ValueError as e:
            raise AnalysisError(f"profile at {result.axes[0].path}={amplitudes[i]} failed: {e}") from e
        widths.append(fit.width if fit.ok else float("nan"))
    try:
        scaling = fit_scaling(amplitudes, np.asarray(widths))
    except ValueError as e:
        raise AnalysisError(f"scaling fit failed: {e}") from e
    summary: Dict[str, Any] = {
        "analysis": "linewidth-scaling",
        "amplitude_axis": result.axes[0].path,
        "detuning_axis": result.axes[1].path,
        "exponent": scaling.exponent,
        "stderr": scaling.stderr,
        "r_value": scaling.r_value,
        "n_points": scaling.n_points,
    }
    for a, w in zip(amplitudes, widths):
        summary[f"width@{_number(float(a))}"] = w
    summary["config_hash"] = result.config_hash
    return summary


def analyze_transition_time(table: CsvTable, epsilon: float = 0.01, **_) -> Dict[str, Any]:
    meta = table.metadata
    if meta.get("kind") != "timeseries":
        raise AnalysisError("transition-time needs a timeseries file")
    axis = meta.get("axis", "t")
    target = int(meta.get("target", "3"))
    try:
        times = table.column(axis)
        p = table.column(f"P_{target}")
        width = float(meta["width"])
        delay = float(meta["delay"])
    except (KeyError, ValueError) as e:
        raise AnalysisError(f"incomplete timeseries: {e}") from e
    try:
        est = population_transition_time(times, p, epsilon, width, delay)
    except ValueError as e:
        raise AnalysisError(f"transition time failed: {e}") from e
    return {
        "analysis": "transition-time",
        "epsilon": est.epsilon,
        "defined": est.defined,
        "measured": est.measured,
        "predicted": est.predicted,
        "relative_error": est.relative_error,
        "t_low": est.t_low,
        "t_high": est.t_high,
        "config_hash": meta.get("config_hash", ""),
    }


ANALYSES: Dict[str, Callable[..., Dict[str, Any]]] = {
    "profile": analyze_profile,
    "linewidth-scaling": analyze_linewidth_scaling,
    "transition-time": analyze_transition_time,
}


def run_analysis(name: str, path: str, epsilon: Optional[float] = None) -> Dict[str, Any]:
    if name not in ANALYSES:
        raise AnalysisError(f"unknown analysis {name!r}; expected one of {sorted(ANALYSES)}")
    try:
        table = read_csv(path)
    except (OSError, ValueError) as e:
        raise AnalysisError(f"cannot read {path}: {e}") from e
    kwargs = {} if epsilon is None else {"epsilon": epsilon}
    return ANALYSES[name](table, **kwargs)
