# protocols/setup.py
"""Translate a normalized RunConfig into pulses, a model, an output grid and integrator options."""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from core import TimeGrid
from models import (
    LINK_C,
    ModelSpec,
    build_chain,
    build_custom,
    build_ladder,
    build_lambda,
    build_lambda_from_lasers,
    build_m_chain,
    build_tripod,
    stark_terms,
)
from propagation import IntegratorOptions, yamazaki_drive
from pulses import (
    LINK_P,
    PulseSet,
    PulseShape,
    composite_sequence,
    make_composite,
    make_counterdiabatic,
    make_ddp_pair,
    make_fractional_pair,
    make_pap_train,
    make_stirap_pair,
    normalize_link,
)
from pulses.shapes import TAIL_WIDTHS
from system.config import RunConfig

TRIPOD_ORDERINGS = {
    # (S center, C center, P center) in units of the delay
    "SCP": (-1.0, 0.0, 1.0),
    "CSP": (0.0, -1.0, 1.0),
    "C=S-P": (-0.5, -0.5, 0.5),
}


@dataclass(frozen=True)
class TwoStateDrive:
    detuning: Callable
    coupling: Callable
    grid: TimeGrid


def peaks(cfg: RunConfig) -> Tuple[float, float, float]:
    p = cfg.pulses
    base = p["peak"]
    return (base if p["peak_p"] is None else p["peak_p"],
            base if p["peak_s"] is None else p["peak_s"],
            base if p["peak_c"] is None else p["peak_c"])


def _tail(cfg: RunConfig) -> float:
    w = cfg.pulses["width"]
    return w if cfg.pulses["shape"] == "sin2" else TAIL_WIDTHS * w


def _stirap_window(cfg: RunConfig) -> Tuple[float, float]:
    half = abs(cfg.pulses["delay"]) / 2.0 + _tail(cfg)
    return -half, half


def _linear_theta_envelopes(t0: float, t1: float, peak: float):
    def theta(t):
        return 0.5 * np.pi * np.clip((np.asarray(t, dtype=float) - t0) / (t1 - t0), 0.0, 1.0)

    return (lambda t: peak * np.sin(theta(t))), (lambda t: peak * np.cos(theta(t)))


def _pap_pulses(cfg: RunConfig) -> PulseSet:
    p = cfg.pulses
    peak_p, peak_s, _ = peaks(cfg)
    lo, hi = _stirap_window(cfg)
    t0 = lo if p["t_start"] is None else p["t_start"]
    t1 = hi if p["t_end"] is None else p["t_end"]
    if p["envelope"] == "linear_theta":
        envelopes = _linear_theta_envelopes(t0, t1, p["peak"])
    else:
        envelopes = (PulseShape(p["shape"], peak_p, p["width"], center=p["delay"] / 2.0),
                     PulseShape(p["shape"], peak_s, p["width"], center=-p["delay"] / 2.0))
    return make_pap_train(p["n_pulses"], envelopes, t0, t1, p["pulse_area"])


def _tripod_pulses(cfg: RunConfig) -> PulseSet:
    p = cfg.pulses
    peak_p, peak_s, peak_c = peaks(cfg)
    s_at, c_at, p_at = TRIPOD_ORDERINGS[cfg.protocol["ordering"]]
    tau, w, kind = p["delay"], p["width"], p["shape"]
    links = {
        LINK_P: (PulseShape(kind, peak_p, w, center=p_at * tau),),
        (3, 2): (PulseShape(kind, peak_s, w, center=s_at * tau),),
    }
    if peak_c != 0.0:
        links[LINK_C] = (PulseShape(kind, peak_c, w, center=c_at * tau),)
    else:
        links[LINK_C] = (PulseShape("flat", 0.0, w),)
    half = abs(tau) + _tail(cfg)
    return PulseSet(links, window=(-half, half))


def _chain_pulses(cfg: RunConfig) -> PulseSet:
    n = cfg.system["n_levels"]
    if n is None or n < 3:
        raise ValueError(f"chain runs need system.n_levels >= 3, got {n}")
    p = cfg.pulses
    peak_p, peak_s, _ = peaks(cfg)
    ends = make_stirap_pair(peak_p, peak_s, p["width"], p["delay"], p["shape"], p["phase_p"], p["phase_s"],
                            link_p=(1, 2), link_s=(n - 1, n))
    lo, hi = ends.span()
    middle = p["peak"] if p["middle_coupling"] is None else p["middle_coupling"]
    links = dict(ends.links)
    for j in range(2, n - 1):
        links[(j, j + 1)] = (PulseShape("flat", middle, hi - lo, center=0.5 * (lo + hi)),)
    ordered = {(j, j + 1): links[(j, j + 1)] for j in range(1, n)}
    return PulseSet(ordered, window=(lo, hi))


def _custom_pulses(cfg: RunConfig) -> PulseSet:
    rows = cfg.pulses["links"]
    if not rows:
        raise ValueError("custom pulse sets need at least one entry in pulses.links")
    links = {}
    for row in rows:
        key = normalize_link(row["link"])
        shape = PulseShape(row["kind"], row["peak"], row["width"], center=row["center"],
                           phase=row["phase"], reverse=row["reverse"])
        links[key] = links.get(key, ()) + (shape,)
    return PulseSet(links)


def build_pulses(cfg: RunConfig) -> PulseSet:
    p = cfg.pulses
    kind = p["kind"]
    peak_p, peak_s, _ = peaks(cfg)
    if kind == "stirap_pair":
        ps = make_stirap_pair(peak_p, peak_s, p["width"], p["delay"], p["shape"], p["phase_p"], p["phase_s"])
    elif kind == "ddp_pair":
        ps = make_ddp_pair(p["peak"], p["width"], p["windowed"])
    elif kind == "fractional_pair":
        ps = make_fractional_pair(p["peak"], p["width"], p["delay"], p["theta"], p["alpha"], p["shape"])
    elif kind == "composite":
        pair_delay = p["delay"] if p["pair_delay"] is None else p["pair_delay"]
        seq = composite_sequence(p["n_pairs"], p["phases"], pair_spacing=p["pair_spacing"],
                                 pair_kind=p["pair_kind"], pair_delay=pair_delay)
        ps = make_composite(seq, p["peak"], p["width"], p["allow_overlap"])
    elif kind == "pap_train":
        ps = _pap_pulses(cfg)
    elif kind == "tripod":
        ps = _tripod_pulses(cfg)
    elif kind == "chain":
        ps = _chain_pulses(cfg)
    elif kind == "custom":
        ps = _custom_pulses(cfg)
    else:
        raise ValueError(f"pulses.kind={kind!r} does not describe a level-system pulse set")
    if cfg.system["counterdiabatic"]:
        ps = make_counterdiabatic(ps)
    if p["window"] is not None:
        ps = ps.with_window(tuple(p["window"]))
    return ps


def _m_chain_model(cfg: RunConfig) -> ModelSpec:
    p, s = cfg.pulses, cfg.system
    tau, w = p["delay"], p["width"]
    f_minus = PulseShape(p["shape"], p["peak"], w, center=-tau / 2.0)
    f_plus = PulseShape(p["shape"], p["peak"], w, center=tau / 2.0)
    window = p["window"] if p["window"] is not None else _stirap_window(cfg)
    return build_m_chain(s["j_g"], s["j_e"], f_plus, f_minus, s["cg_table"], s["chain_detunings"],
                         window=tuple(window))


def build_model(cfg: RunConfig, pulses: Optional[PulseSet] = None) -> ModelSpec:
    s = cfg.system
    topology = s["topology"]
    if topology == "m_chain":
        return _m_chain_model(cfg)
    if topology in ("two_state", "waveguide"):
        raise ValueError(f"topology {topology!r} has no level-system model; use its dedicated runner")
    ps = pulses if pulses is not None else build_pulses(cfg)
    stark = stark_terms(s["stark"])
    dephasing = [tuple(row) for row in s["dephasing"]] or None
    if topology in ("lambda", "ladder"):
        lasers = s["pump_detuning"] is not None or s["stokes_detuning"] is not None
        if topology == "ladder" or lasers:
            pump = s["detuning"] if s["pump_detuning"] is None else s["pump_detuning"]
            stokes = s["stokes_detuning"] or 0.0
            if topology == "ladder":
                return build_ladder(ps, pump, stokes, s["decay"], stark, dephasing)
            return build_lambda_from_lasers(ps, pump, stokes, s["decay"], stark, dephasing)
        return build_lambda(ps, s["detuning"], s["two_photon_detuning"], s["decay"], stark, dephasing)
    if topology == "chain":
        n = ps.max_level()
        det = s["chain_detunings"] if s["chain_detunings"] is not None else [0.0] * n
        return build_chain(ps, det, s["loss_rates"], stark=stark, dephasing=dephasing)
    if topology == "tripod":
        return build_tripod(ps, dephasing=dephasing)
    dim = s["n_levels"] if s["n_levels"] is not None else ps.max_level()
    return build_custom(dim, ps, s["chain_detunings"], s["loss_rates"], stark, dephasing)


def build_two_state_drive(cfg: RunConfig) -> TwoStateDrive:
    p = cfg.pulses
    samples = cfg.protocol["samples"]
    if p["kind"] == "yamazaki":
        detuning, coupling, grid = yamazaki_drive(p["peak"], p["chirp"], p["width"], samples)
        return TwoStateDrive(detuning, coupling, grid)
    peak_omega, peak_delta, _ = peaks(cfg)
    tau, w = p["delay"], p["width"]
    delta = PulseShape(p["shape"], peak_delta, w, center=-tau / 2.0)
    omega = PulseShape(p["shape"], peak_omega, w, center=tau / 2.0)
    lo, hi = _stirap_window(cfg) if p["window"] is None else tuple(p["window"])
    return TwoStateDrive(delta, omega, TimeGrid.uniform(lo, hi, samples))


def build_grid(cfg: RunConfig, model: ModelSpec) -> TimeGrid:
    lo, hi = model.pulse_set.span()
    return TimeGrid.uniform(lo, hi, cfg.protocol["samples"])


def build_options(cfg: RunConfig) -> IntegratorOptions:
    i = cfg.integrator
    return IntegratorOptions(method=i["method"], rel_tol=i["rel_tol"], abs_tol=i["abs_tol"],
                             max_step=i["max_step"], min_step=i["min_step"],
                             dense_output_samples=cfg.protocol["samples"])


def use_liouville(cfg: RunConfig, model: ModelSpec) -> bool:
    equation = cfg.protocol["equation"]
    if equation == "auto":
        return model.has_dephasing
    return equation == "liouville"
