"""Parameter sweeps over the steady-state entanglement, with figure presets."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dynamics import build_diffusion, build_drift, is_stable
from .entanglement import Pair, pair_log_negativity
from .exceptions import ConfigError, MagnomechError
from .lyapunov import solve_lyapunov
from .model import PARAM_FIELDS, SystemParams, mhz, reference_parameters
from .steady_state import solve_steady_state

CSV_HEADER = (
    "axis",
    "axis_value",
    "curve",
    "curve_value",
    "en_am",
    "en_bm",
    "eta_am",
    "eta_bm",
    "ms_abs",
    "stable",
)
THREADS_ENV = "MAGNOMECH_THREADS"
PRESETS = ("fig2", "fig3", "fig4", "fig5")


def fmt(value) -> str:
    """Round-trip-exact text form of a float (17 significant digits)."""
    if value is None:
        return ""
    return format(float(value), ".17g")


@dataclass(frozen=True)
class PointResult:
    stable: bool
    verdict: Optional[str] = None
    max_real_part: Optional[float] = None
    en_am: Optional[float] = None
    en_bm: Optional[float] = None
    eta_am: Optional[float] = None
    eta_bm: Optional[float] = None
    ms_abs: Optional[float] = None
    error: Optional[str] = None


def evaluate_point(params: SystemParams) -> PointResult:
    """Steady state, drift/diffusion, stability, Lyapunov and E_N for one point.

    Failures are reported in the result instead of raised. Only stable
    points carry entanglement values.
    """
    try:
        ss = solve_steady_state(params)
    except MagnomechError as exc:
        return PointResult(stable=False, error=f"{type(exc).__name__}: {exc}")
    ms_abs = abs(ss.m_s)
    try:
        A = build_drift(params, ss)
        report = is_stable(A)
        if not report.stable:
            return PointResult(
                stable=False,
                verdict=report.verdict.value,
                max_real_part=report.max_real_part,
                ms_abs=ms_abs,
            )
        V = solve_lyapunov(A, build_diffusion(params), check_stability=False)
        am = pair_log_negativity(V, Pair.CAVITY_MAGNON)
        bm = pair_log_negativity(V, Pair.PHONON_MAGNON)
    except MagnomechError as exc:
        return PointResult(stable=False, ms_abs=ms_abs, error=f"{type(exc).__name__}: {exc}")
    return PointResult(
        stable=True,
        verdict=report.verdict.value,
        max_real_part=report.max_real_part,
        en_am=am.e_n,
        en_bm=bm.e_n,
        eta_am=am.eta,
        eta_bm=bm.eta,
        ms_abs=ms_abs,
    )


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D grid over one ``SystemParams`` field, optionally per curve.

    ``grid`` and ``curve_values`` are in SI units (rad/s, rad, K).
    """

    base: SystemParams
    axis: str
    grid: tuple
    curve_axis: Optional[str] = None
    curve_values: tuple = ()
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))
        object.__setattr__(self, "curve_values", tuple(float(v) for v in self.curve_values))
        for name in (self.axis, self.curve_axis):
            if name is not None and name not in PARAM_FIELDS:
                raise ConfigError(f"unknown sweep axis {name!r}")
        if not self.grid:
            raise ConfigError("sweep grid is empty")
        diffs = np.diff(self.grid)
        if len(diffs) and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ConfigError("sweep grid must be strictly monotone")
        if self.curve_axis is not None and not self.curve_values:
            raise ConfigError("curve axis given without curve values")
        if self.curve_axis is None and self.curve_values:
            raise ConfigError("curve values given without a curve axis")

    def points(self):
        """Yield ``(curve_value, axis_value, params)`` in output order."""
        curves = self.curve_values if self.curve_axis is not None else (None,)
        for cv in curves:
            base = self.base if cv is None else self.base.replace(**{self.curve_axis: cv})
            for av in self.grid:
                yield cv, av, base.replace(**{self.axis: av})


@dataclass(frozen=True)
class SweepRow:
    axis: str
    axis_value: float
    curve: Optional[str]
    curve_value: Optional[float]
    result: PointResult

    def __getattr__(self, name):
        # Expose the point fields (en_am, stable, ...) directly on the row.
        if name in PointResult.__dataclass_fields__:
            return getattr(self.result, name)
        raise AttributeError(name)


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list = field(default_factory=list)

    def column(self, name, curve_value=None):
        rows = self.rows if curve_value is None else [r for r in self.rows if r.curve_value == curve_value]
        return np.array([np.nan if getattr(r, name) is None else getattr(r, name) for r in rows], dtype=float)

    def curve(self, curve_value):
        return [r for r in self.rows if r.curve_value == curve_value]

    def meta(self) -> dict:
        return sweep_meta(self.spec)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            p = r.result
            writer.writerow(
                [
                    r.axis,
                    fmt(r.axis_value),
                    r.curve or "",
                    fmt(r.curve_value),
                    fmt(p.en_am),
                    fmt(p.en_bm),
                    fmt(p.eta_am),
                    fmt(p.eta_bm),
                    fmt(p.ms_abs),
                    "true" if p.stable else "false",
                ]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        records = []
        for r in self.rows:
            p = r.result
            records.append(
                {
                    "axis": r.axis,
                    "axis_value": r.axis_value,
                    "curve": r.curve,
                    "curve_value": r.curve_value,
                    "en_am": p.en_am,
                    "en_bm": p.en_bm,
                    "eta_am": p.eta_am,
                    "eta_bm": p.eta_bm,
                    "ms_abs": p.ms_abs,
                    "stable": p.stable,
                    "verdict": p.verdict,
                    "max_real_part": p.max_real_part,
                    "error": p.error,
                }
            )
        return json.dumps({"meta": self.meta(), "rows": records}, indent=2) + "\n"


def params_meta(params: SystemParams) -> dict:
    """Flat SI echo of every parameter, readable back as a config."""
    return {name: getattr(params, name) for name in PARAM_FIELDS}


def sweep_meta(spec: SweepSpec) -> dict:
    meta = params_meta(spec.base)
    if spec.label is not None:
        meta["label"] = spec.label
    meta["sweep_axis"] = spec.axis
    meta["sweep_values"] = list(spec.grid)
    if spec.curve_axis is not None:
        meta["curve_axis"] = spec.curve_axis
        meta["curve_values"] = list(spec.curve_values)
    return meta


def thread_count(default=1):
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return default
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, n)


def run_sweep(spec: SweepSpec, workers=None) -> SweepResult:
    """Evaluate every grid point; rows keep grid order within each curve.

    ``workers`` defaults to ``$MAGNOMECH_THREADS`` (or 1). Points are
    independent, so the result does not depend on the worker count.
    """
    if workers is None:
        workers = thread_count()
    points = list(spec.points())
    params = [p for _, _, p in points]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate_point, params))
    else:
        results = [evaluate_point(p) for p in params]
    rows = [
        SweepRow(
            axis=spec.axis,
            axis_value=av,
            curve=spec.curve_axis,
            curve_value=cv,
            result=res,
        )
        for (cv, av, _), res in zip(points, results)
    ]
    return SweepResult(spec=spec, rows=rows)


def preset(name, gamma_gain, base: Optional[SystemParams] = None) -> SweepSpec:
    """Sweep reproducing one of the phase, squeezing or temperature figures.

    ``gamma_gain`` (rad/s) must be given explicitly: the net cavity gain
    is a free parameter of the model. ``base`` overrides the reference
    parameters before the preset-specific values are applied.

    - ``fig2``: theta over [0, 2pi] (401 points), chi/2pi = 0.4 MHz,
      curves g_ma/2pi in {3.5, 4.7} MHz.
    - ``fig3``: chi over [0, 0.2 omega_b] (201 points), theta = 0.8 pi,
      curves g_ma/2pi in {3.5, 4.7} MHz.
    - ``fig4``: T over [0, 300] mK (301 points), theta = 0.8 pi,
      g_ma/2pi = 3.5 MHz, curves chi in {0.04, 0.1, 0.15} omega_b.
    - ``fig5``: as ``fig4`` with g_ma/2pi = 4.7 MHz.
    """
    if gamma_gain is None or not math.isfinite(gamma_gain):
        raise ConfigError("preset requires an explicit finite gamma_gain")
    if base is None:
        base = reference_parameters()
    base = base.replace(gamma_gain=float(gamma_gain))
    g_curves = (mhz(3.5), mhz(4.7))
    if name == "fig2":
        return SweepSpec(
            base=base.replace(chi=mhz(0.4)),
            axis="theta",
            grid=tuple(np.linspace(0.0, 2.0 * math.pi, 401)),
            curve_axis="g_ma",
            curve_values=g_curves,
            label=name,
        )
    if name == "fig3":
        return SweepSpec(
            base=base.replace(theta=0.8 * math.pi),
            axis="chi",
            grid=tuple(np.linspace(0.0, 0.2 * base.omega_b, 201)),
            curve_axis="g_ma",
            curve_values=g_curves,
            label=name,
        )
    if name in ("fig4", "fig5"):
        g_ma = mhz(3.5) if name == "fig4" else mhz(4.7)
        return SweepSpec(
            base=base.replace(theta=0.8 * math.pi, g_ma=g_ma),
            axis="temperature",
            grid=tuple(np.linspace(0.0, 0.3, 301)),
            curve_axis="chi",
            curve_values=tuple(f * base.omega_b for f in (0.04, 0.1, 0.15)),
            label=name,
        )
    raise ConfigError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")


def figure_pairing(name):
    """``(pair column, curve value)`` plotted in each figure.

    The cavity-magnon curve is drawn at g_ma/2pi = 3.5 MHz and the
    phonon-magnon curve at 4.7 MHz.
    """
    return {
        "fig2": (("en_am", mhz(3.5)), ("en_bm", mhz(4.7))),
        "fig3": (("en_am", mhz(3.5)), ("en_bm", mhz(4.7))),
        "fig4": (("en_am", None),),
        "fig5": (("en_bm", None),),
    }[name]

