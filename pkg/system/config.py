# system/config.py
"""
Declarative run configuration.

A RunConfig is a JSON document with the blocks schema_version, system, pulses,
protocol, integrator, scan (optional) and output. `normalize` merges defaults,
rejects unknown keys at every level and checks types; the normalized form
re-serializes and re-parses to itself. Presets are JSON files under presets/.
"""

import copy
import hashlib
import json
import math
import pathlib
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

TOOLKIT_VERSION = "1.0.0"
SCHEMA_VERSION = "1.0"
PRESET_DIR = pathlib.Path(__file__).resolve().parents[1] / "presets"

TOPOLOGY_NAMES = ("lambda", "ladder", "chain", "m_chain", "tripod", "two_state", "waveguide", "custom")
PULSE_KINDS = ("stirap_pair", "ddp_pair", "fractional_pair", "composite", "pap_train", "tripod",
               "chain", "m_chain", "two_state", "yamazaki", "custom", "none")
PROTOCOL_NAMES = ("stirap", "fractional", "composite", "bright", "tripod", "straddle", "chain",
                  "m_chain", "pap", "waveguide", "two_state")
OBSERVABLES = ("P_target", "max_P2", "infidelity", "loss")
EQUATIONS = ("auto", "tdse", "liouville")
ORDERINGS = ("SCP", "CSP", "C=S-P")
OUTPUT_FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Config parse or validation failure; line/column refer to the source text when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Field:
    default: Any
    kind: str  # float | int | bool | str | list | dict
    nullable: bool = False
    choices: Tuple[str, ...] = ()


def _f(default, nullable=False):
    return Field(default, "float", nullable)


def _i(default, nullable=False):
    return Field(default, "int", nullable)


def _s(default, choices=(), nullable=False):
    return Field(default, "str", nullable, tuple(choices))


# ----------------- schema -----------------

SYSTEM_FIELDS: Dict[str, Field] = {
    "topology": _s("lambda", TOPOLOGY_NAMES),
    "n_levels": _i(None, nullable=True),
    "detuning": _f(0.0),
    "two_photon_detuning": _f(0.0),
    "pump_detuning": _f(None, nullable=True),
    "stokes_detuning": _f(None, nullable=True),
    "decay": _f(0.0),
    "loss_rates": Field(None, "list", nullable=True),
    "chain_detunings": Field(None, "list", nullable=True),
    "dephasing": Field([], "list"),
    "stark": Field([], "list"),
    "counterdiabatic": Field(False, "bool"),
    "j_g": _f(2.0),
    "j_e": _f(2.0),
    "cg_table": Field(None, "list", nullable=True),
    "waveguide": Field(None, "dict", nullable=True),
}

PULSE_FIELDS: Dict[str, Field] = {
    "kind": _s("stirap_pair", PULSE_KINDS),
    "shape": _s("gaussian", ("gaussian", "sin2", "flat")),
    "peak": _f(20.0),
    "peak_p": _f(None, nullable=True),
    "peak_s": _f(None, nullable=True),
    "peak_c": _f(None, nullable=True),
    "width": _f(1.0),
    "delay": _f(1.2),
    "phase_p": _f(0.0),
    "phase_s": _f(0.0),
    "theta": _f(math.pi / 4),
    "alpha": _f(0.0),
    "n_pairs": _i(1),
    "phases": Field(None, "list", nullable=True),
    "pair_spacing": _f(None, nullable=True),
    "pair_kind": _s("resonant_alternating", ("resonant_alternating", "detuned_fixed_order")),
    "pair_delay": _f(None, nullable=True),
    "allow_overlap": Field(False, "bool"),
    "n_pulses": _i(10),
    "envelope": _s("linear_theta", ("linear_theta", "gaussian_pair")),
    "pulse_area": _f(None, nullable=True),
    "t_start": _f(None, nullable=True),
    "t_end": _f(None, nullable=True),
    "windowed": Field(True, "bool"),
    "middle_coupling": _f(None, nullable=True),
    "chirp": _f(10.0),
    "links": Field([], "list"),
    "window": Field(None, "list", nullable=True),
}

PROTOCOL_FIELDS: Dict[str, Field] = {
    "name": _s("stirap", PROTOCOL_NAMES),
    "ordering": _s("SCP", ORDERINGS),
    "initial": _i(1),
    "target": _i(None, nullable=True),
    "equation": _s("auto", EQUATIONS),
    "samples": _i(1025),
    "epsilon": _f(0.01),
}

INTEGRATOR_FIELDS: Dict[str, Field] = {
    "method": _s("exp_midpoint", ("exp_midpoint", "rk_adaptive")),
    "rel_tol": _f(1e-6),
    "abs_tol": _f(1e-10),
    "max_step": _f(None, nullable=True),
    "min_step": _f(1e-9),
}

SCAN_FIELDS: Dict[str, Field] = {
    "axes": Field([], "list"),
    "observable": _s("P_target", OBSERVABLES),
    "workers": _i(None, nullable=True),
    "variants": Field([], "list"),
}

OUTPUT_FIELDS: Dict[str, Field] = {
    "dir": _s("out"),
    "prefix": _s("run"),
    "formats": Field(["csv", "json"], "list"),
}

WAVEGUIDE_FIELDS: Dict[str, Field] = {
    "n_guides": _i(3),
    "kappa0": _f(20.0 * math.e),
    "decay_length": _f(1.0),
    "z_start": _f(-5.0),
    "z_end": _f(5.0),
    "separations": Field([], "list"),
    "mismatch": Field(None, "list", nullable=True),
    "input_guide": _i(1),
    "samples": _i(2001),
}

SEPARATION_FIELDS: Dict[str, Field] = {
    "d_min": _f(1.0),
    "curvature": _f(1.0),
    "z_center": _f(0.0),
}

LINK_FIELDS: Dict[str, Field] = {
    "link": Field([1, 2], "list"),
    "kind": _s("gaussian", ("gaussian", "sin2", "flat", "ddp_f", "ddp_g_windowed")),
    "peak": _f(1.0),
    "width": _f(1.0),
    "center": _f(0.0),
    "phase": _f(0.0),
    "reverse": Field(False, "bool"),
}

BLOCKS: Dict[str, Dict[str, Field]] = {
    "system": SYSTEM_FIELDS,
    "pulses": PULSE_FIELDS,
    "protocol": PROTOCOL_FIELDS,
    "integrator": INTEGRATOR_FIELDS,
    "output": OUTPUT_FIELDS,
}


# ----------------- value checks -----------------

def _check_value(path: str, value: Any, spec: Field) -> Any:
    if value is None:
        if spec.nullable:
            return None
        raise ConfigError(f"{path} must not be null")
    if spec.kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path} must be a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            raise ConfigError(f"{path} must be finite, got {value!r}")
        return value
    if spec.kind == "int":
        if (isinstance(value, bool) or not isinstance(value, (int, float))
                or not math.isfinite(value) or float(value) != int(value)):
            raise ConfigError(f"{path} must be an integer, got {value!r}")
        return int(value)
    if spec.kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"{path} must be true or false, got {value!r}")
        return value
    if spec.kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{path} must be a string, got {value!r}")
        if spec.choices and value not in spec.choices:
            raise ConfigError(f"{path}={value!r} is not one of {list(spec.choices)}")
        return value
    if spec.kind == "list":
        if not isinstance(value, list):
            raise ConfigError(f"{path} must be a list, got {type(value).__name__}")
        return copy.deepcopy(value)
    if spec.kind == "dict":
        if not isinstance(value, dict):
            raise ConfigError(f"{path} must be an object, got {type(value).__name__}")
        return copy.deepcopy(value)
    raise ConfigError(f"unknown field kind {spec.kind!r} at {path}")


def _block(path: str, raw: Any, fields: Dict[str, Field]) -> Dict[str, Any]:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path} must be an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(fields))
    if unknown:
        raise ConfigError(f"unknown key(s) in {path}: {unknown}")
    out = {}
    for key, spec in fields.items():
        value = raw.get(key, copy.deepcopy(spec.default))
        out[key] = _check_value(f"{path}.{key}", value, spec)
    return out


def _number_list(path: str, values: Optional[list], length: Optional[int] = None) -> Optional[List[float]]:
    if values is None:
        return None
    out = []
    for k, v in enumerate(values):
        out.append(_check_value(f"{path}[{k}]", v, Field(0.0, "float")))
    if length is not None and len(out) != length:
        raise ConfigError(f"{path} needs {length} entries, got {len(out)}")
    return out


def _normalize_system(sys_block: Dict[str, Any]) -> Dict[str, Any]:
    rows = []
    for k, row in enumerate(sys_block["dephasing"]):
        if not isinstance(row, list) or len(row) != 3:
            raise ConfigError(f"system.dephasing[{k}] must be [m, n, rate], got {row!r}")
        m = _check_value(f"system.dephasing[{k}][0]", row[0], Field(1, "int"))
        n = _check_value(f"system.dephasing[{k}][1]", row[1], Field(1, "int"))
        rate = _check_value(f"system.dephasing[{k}][2]", row[2], Field(0.0, "float"))
        rows.append([m, n, rate])
    sys_block["dephasing"] = rows
    stark = []
    for k, row in enumerate(sys_block["stark"]):
        if not isinstance(row, list) or len(row) != 3 or not isinstance(row[1], list):
            raise ConfigError(f"system.stark[{k}] must be [level, [a, b], coeff], got {row!r}")
        level = _check_value(f"system.stark[{k}][0]", row[0], Field(1, "int"))
        link = [_check_value(f"system.stark[{k}][1]", x, Field(1, "int")) for x in row[1]]
        coeff = _check_value(f"system.stark[{k}][2]", row[2], Field(0.0, "float"))
        stark.append([level, link, coeff])
    sys_block["stark"] = stark
    for key in ("loss_rates", "chain_detunings", "cg_table"):
        sys_block[key] = _number_list(f"system.{key}", sys_block[key])
    if sys_block["waveguide"] is not None:
        wg = _block("system.waveguide", sys_block["waveguide"], WAVEGUIDE_FIELDS)
        wg["separations"] = [
            _block(f"system.waveguide.separations[{k}]", s, SEPARATION_FIELDS)
            for k, s in enumerate(wg["separations"])
        ]
        wg["mismatch"] = _number_list("system.waveguide.mismatch", wg["mismatch"])
        sys_block["waveguide"] = wg
    return sys_block


def _normalize_pulses(block: Dict[str, Any]) -> Dict[str, Any]:
    block["window"] = _number_list("pulses.window", block["window"], length=2)
    if block["phases"] is not None:
        phases = []
        for k, pair in enumerate(block["phases"]):
            phases.append(_number_list(f"pulses.phases[{k}]", pair, length=2))
        block["phases"] = phases
    block["links"] = [_block(f"pulses.links[{k}]", row, LINK_FIELDS) for k, row in enumerate(block["links"])]
    for k, row in enumerate(block["links"]):
        row["link"] = [_check_value(f"pulses.links[{k}].link", x, Field(1, "int")) for x in row["link"]]
    return block


def _normalize_scan(raw: Any) -> Optional[Dict[str, Any]]:
    if raw is None:
        return None
    block = _block("scan", raw, SCAN_FIELDS)
    axes = []
    for k, axis in enumerate(block["axes"]):
        path = f"scan.axes[{k}]"
        if not isinstance(axis, dict):
            raise ConfigError(f"{path} must be an object, got {axis!r}")
        unknown = sorted(set(axis) - {"path", "values", "linspace"})
        if unknown:
            raise ConfigError(f"unknown key(s) in {path}: {unknown}")
        if not isinstance(axis.get("path"), str):
            raise ConfigError(f"{path}.path must be a dotted parameter path")
        if "linspace" in axis:
            lo, hi, n = _number_list(f"{path}.linspace", axis["linspace"], length=3)
            if n != int(n) or n < 1:
                raise ConfigError(f"{path}.linspace count must be a positive integer, got {n}")
            n = int(n)
            values = [lo + (hi - lo) * j / (n - 1) for j in range(n)] if n > 1 else [lo]
        else:
            values = _number_list(f"{path}.values", axis.get("values"))
            if not values:
                raise ConfigError(f"{path} needs 'values' or 'linspace'")
        axes.append({"path": axis["path"], "values": values})
    if not axes:
        raise ConfigError("scan.axes must list at least one axis")
    block["axes"] = axes
    variants = []
    for k, var in enumerate(block["variants"]):
        if not isinstance(var, dict) or set(var) - {"name", "overrides"} or not isinstance(var.get("name"), str):
            raise ConfigError(f"scan.variants[{k}] must be {{'name': str, 'overrides': {{path: value}}}}")
        overrides = var.get("overrides", {})
        if not isinstance(overrides, dict):
            raise ConfigError(f"scan.variants[{k}].overrides must be an object")
        variants.append({"name": var["name"], "overrides": copy.deepcopy(overrides)})
    block["variants"] = variants
    return block


# ----------------- RunConfig -----------------

@dataclass(frozen=True)
class RunConfig:
    schema_version: str
    system: Dict[str, Any]
    pulses: Dict[str, Any]
    protocol: Dict[str, Any]
    integrator: Dict[str, Any]
    scan: Optional[Dict[str, Any]]
    output: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "system": copy.deepcopy(self.system),
            "pulses": copy.deepcopy(self.pulses),
            "protocol": copy.deepcopy(self.protocol),
            "integrator": copy.deepcopy(self.integrator),
            "scan": copy.deepcopy(self.scan),
            "output": copy.deepcopy(self.output),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @property
    def hash(self) -> str:
        return config_hash(self)

    def get(self, path: str) -> Any:
        return get_path(self, path)

    def with_value(self, path: str, value: Any) -> "RunConfig":
        return set_path(self, path, value)


def normalize(raw: Dict[str, Any]) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"config must be a JSON object, got {type(raw).__name__}")
    allowed = set(BLOCKS) | {"schema_version", "scan"}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {unknown}")
    version = raw.get("schema_version", SCHEMA_VERSION)
    if not isinstance(version, str) or version.split(".")[0] != TOOLKIT_VERSION.split(".")[0]:
        raise ConfigError(f"schema_version {version!r} does not match toolkit major version {TOOLKIT_VERSION}")
    blocks = {name: _block(name, raw.get(name), fields) for name, fields in BLOCKS.items()}
    blocks["system"] = _normalize_system(blocks["system"])
    blocks["pulses"] = _normalize_pulses(blocks["pulses"])
    bad = [f for f in blocks["output"]["formats"] if f not in OUTPUT_FORMATS]
    if bad:
        raise ConfigError(f"output.formats entries {bad} are not in {list(OUTPUT_FORMATS)}")
    return RunConfig(schema_version=version, scan=_normalize_scan(raw.get("scan")), **blocks)


def _locate(text: str, message: str) -> Tuple[Optional[int], Optional[int]]:
    """Line/column of the key a validation message names."""
    quoted = re.findall(r"'(\w+)'", message)
    token = quoted[0] if quoted else message.split()[0].split(".")[-1].split("[")[0]
    pos = text.find(f'"{token}"')
    if not token or pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def parse_config(text: str) -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed config: {e.msg}", e.lineno, e.colno) from e
    try:
        return normalize(raw)
    except ConfigError as e:
        if e.line is not None:
            raise
        line, column = _locate(text, str(e))
        raise ConfigError(str(e), line, column) from e


def load_config(path: str) -> RunConfig:
    p = pathlib.Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config(text)


# ----------------- presets -----------------

_PRESET_CACHE: Dict[str, RunConfig] = {}


def list_presets() -> List[str]:
    if not PRESET_DIR.exists():
        return []
    return sorted(p.stem for p in PRESET_DIR.glob("*.json"))


def load_preset(name: str) -> RunConfig:
    if name in _PRESET_CACHE:
        return _PRESET_CACHE[name]
    path = PRESET_DIR / f"{name}.json"
    if not path.exists():
        raise ConfigError(f"unknown preset {name!r}; available: {list_presets()}")
    cfg = load_config(str(path))
    _PRESET_CACHE[name] = cfg
    return cfg


# ----------------- hashing and dotted paths -----------------

def canonical_json(cfg: RunConfig) -> str:
    return json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(canonical_json(cfg).encode("utf-8")).hexdigest()[:16]


def get_path(cfg: RunConfig, path: str) -> Any:
    node: Any = cfg.to_dict()
    for part in path.split("."):
        if isinstance(node, dict) and part in node:
            node = node[part]
        elif isinstance(node, list) and part.isdigit() and int(part) < len(node):
            node = node[int(part)]
        else:
            raise ConfigError(f"parameter path {path!r} does not resolve (stuck at {part!r})")
    return node


def set_path(cfg: RunConfig, path: str, value: Any) -> RunConfig:
    """New normalized config with the leaf at `path` replaced."""
    data = cfg.to_dict()
    parts = path.split(".")
    node: Any = data
    for part in parts[:-1]:
        if isinstance(node, dict) and isinstance(node.get(part), (dict, list)):
            node = node[part]
        elif isinstance(node, list) and part.isdigit() and int(part) < len(node):
            node = node[int(part)]
        else:
            raise ConfigError(f"parameter path {path!r} does not resolve (stuck at {part!r})")
    leaf = parts[-1]
    if isinstance(node, dict):
        if leaf not in node:
            raise ConfigError(f"parameter path {path!r} does not resolve (no key {leaf!r})")
        node[leaf] = value
    elif isinstance(node, list) and leaf.isdigit() and int(leaf) < len(node):
        node[int(leaf)] = value
    else:
        raise ConfigError(f"parameter path {path!r} does not resolve")
    return normalize(data)


def apply_overrides(cfg: RunConfig, overrides: Dict[str, Any]) -> RunConfig:
    for path in sorted(overrides):
        cfg = set_path(cfg, path, overrides[path])
    return cfg
