# sweeps/scan.py
"""
N-dimensional parameter scans over dotted config paths.

Every grid point is evaluated independently and written into its own
pre-addressed slot, so the assembled grid does not depend on completion order.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from propagation import PropagationError
from protocols import ProtocolReport, run_protocol
from system.config import OBSERVABLES, ConfigError, RunConfig, apply_overrides, config_hash, get_path, set_path
from system.io import CsvTable, write_csv

logger = logging.getLogger(__name__)

WORKERS_ENV = "STIRAP_WORKERS"
STATUS_OK = "ok"


@dataclass(frozen=True)
class ScanAxis:
    path: str
    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError(f"scan axis {self.path!r} has no values")
        if not all(np.isfinite(values)):
            raise ValueError(f"scan axis {self.path!r} has non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ScanSpec:
    base: RunConfig
    axes: Tuple[ScanAxis, ...]
    observable: str = "P_target"
    workers: Optional[int] = None
    variants: Tuple[Tuple[str, Dict[str, Any]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not self.axes:
            raise ValueError("a scan needs at least one axis")
        if self.observable not in OBSERVABLES:
            raise ValueError(f"unknown observable {self.observable!r}; expected one of {OBSERVABLES}")
        for axis in self.axes:
            get_path(self.base, axis.path)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @classmethod
    def from_config(cls, cfg: RunConfig) -> "ScanSpec":
        block = cfg.scan
        if block is None:
            raise ConfigError("config has no scan block")
        axes = tuple(ScanAxis(a["path"], tuple(a["values"])) for a in block["axes"])
        variants = tuple((v["name"], dict(v["overrides"])) for v in block["variants"])
        return cls(cfg, axes, block["observable"], block["workers"], variants)


@dataclass(frozen=True)
class ScanResult:
    axes: Tuple[ScanAxis, ...]
    observable: str
    values: np.ndarray = field(repr=False)
    status: np.ndarray = field(repr=False)
    config_hash: str = ""
    variant: str = ""

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @property
    def failed(self) -> int:
        return int(np.count_nonzero(self.status != STATUS_OK))

    def rows(self) -> List[List[Any]]:
        out = []
        for idx in np.ndindex(*self.shape):
            coords = [self.axes[d].values[i] for d, i in enumerate(idx)]
            out.append(coords + [float(self.values[idx]), str(self.status[idx])])
        return out

    def columns(self) -> List[str]:
        return [a.path for a in self.axes] + [self.observable, "status"]

    def to_csv(self, path: str):
        meta = {"config_hash": self.config_hash, "observable": self.observable,
                "shape": "x".join(str(n) for n in self.shape), "kind": "scan"}
        if self.variant:
            meta["variant"] = self.variant
        return write_csv(path, self.columns(), self.rows(), meta)

    @classmethod
    def from_table(cls, table: CsvTable) -> "ScanResult":
        if table.metadata.get("kind") != "scan" or "observable" not in table.metadata:
            raise ValueError("CSV is not a scan result")
        observable = table.metadata["observable"]
        shape = tuple(int(n) for n in table.metadata["shape"].split("x"))
        paths = table.columns[:len(shape)]
        coords = np.array([[float(r[d]) for d in range(len(shape))] for r in table.rows])
        axes = []
        for d, path in enumerate(paths):
            stride = int(np.prod(shape[d + 1:]))
            axes.append(ScanAxis(path, tuple(coords[::stride, d][:shape[d]])))
        values = table.column(observable).reshape(shape)
        status = np.array(table.text_column("status"), dtype=object).reshape(shape)
        return cls(tuple(axes), observable, values, status, table.metadata.get("config_hash", ""),
                   table.metadata.get("variant", ""))


def observable_value(report: ProtocolReport, observable: str) -> float:
    if observable == "P_target":
        return float(report.transfer_efficiency)
    if observable == "max_P2":
        return float(report.max_transient_p2)
    if observable == "infidelity":
        return float(report.infidelity)
    if observable == "loss":
        return float(report.diagnostics.get("final_loss", 0.0))
    raise ValueError(f"unknown observable {observable!r}")


def _evaluate_point(cfg: RunConfig, overrides: Sequence[Tuple[str, float]], observable: str) -> Tuple[float, str]:
    """One grid point; module level so worker processes can unpickle it."""
    try:
        for path, value in overrides:
            cfg = set_path(cfg, path, value)
        return observable_value(run_protocol(cfg), observable), STATUS_OK
    except (PropagationError, ValueError, ArithmeticError, RuntimeError) as e:
        logger.warning("scan point %s failed: %s", dict(overrides), e)
        return float("nan"), f"failed:{type(e).__name__}"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", WORKERS_ENV, raw)
        return 1


def scan(spec: ScanSpec, workers: Optional[int] = None, progress: bool = False,
         variant: str = "") -> ScanResult:
    n_workers = workers if workers is not None else (spec.workers if spec.workers is not None else default_workers())
    shape = spec.shape
    values = np.full(shape, np.nan)
    status = np.full(shape, "pending", dtype=object)
    points = [(idx, [(spec.axes[d].path, spec.axes[d].values[i]) for d, i in enumerate(idx)])
              for idx in np.ndindex(*shape)]
    bar = tqdm(total=len(points), desc=f"scan {variant}".strip(), disable=not progress, leave=False)
    if n_workers <= 1 or len(points) == 1:
        for idx, overrides in points:
            values[idx], status[idx] = _evaluate_point(spec.base, overrides, spec.observable)
            bar.update(1)
    else:
        try:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                futures = {pool.submit(_evaluate_point, spec.base, overrides, spec.observable): idx
                           for idx, overrides in points}
                for fut in as_completed(futures):
                    values[futures[fut]], status[futures[fut]] = fut.result()
                    bar.update(1)
        except Exception as e:
            raise RuntimeError(f"parallel scan failed: {e}") from e
    bar.close()
    result = ScanResult(spec.axes, spec.observable, values, status, config_hash(spec.base), variant)
    if result.failed:
        logger.warning("%d of %d scan points failed", result.failed, len(points))
    return result


def scan_variants(spec: ScanSpec, workers: Optional[int] = None, progress: bool = False) -> Dict[str, ScanResult]:
    """One grid per named variant; a spec without variants gives a single unnamed grid."""
    if not spec.variants:
        return {"": scan(spec, workers, progress)}
    out = {}
    for name, overrides in spec.variants:
        base = apply_overrides(spec.base, overrides)
        sub = ScanSpec(base, spec.axes, spec.observable, spec.workers)
        out[name] = scan(sub, workers, progress, variant=name)
    return out
