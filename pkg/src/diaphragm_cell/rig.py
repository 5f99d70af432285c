"""End-to-end experiment runner.

A :class:`Rig` owns one configured instrument: it calibrates the pickup to
the capacitance anchors, sizes the amplifier so the top of the pressure
range lands on ADC full scale, and burns the linearization table by sweeping
its own forward chain.  It then pushes pressures through

    mechanics -> pickup -> bridge -> rectifier/ADC -> table -> DAC

and logs one :class:`ExperimentRecord` per sample.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import bridge as br
from . import digitizer as dg
from . import mechanics as mech
from . import pickup as pk
from .errors import ChainError, ConfigError, ModelError

RECORD_COLUMNS = ("time_s", "applied_pa", "drift_fd_m", "drift_fdr_m", "capacitance_f",
                  "error_v", "adc_code", "measured_pa")


class WaveformKind(str, enum.Enum):
    CONSTANT = "constant"
    STEP = "step"
    RAMP = "ramp"
    SINE = "sine"


@dataclass(frozen=True)
class WaveformSpec:
    """Pressure stimulus.

    ``constant``: ``offset``.  ``step``: ``offset`` until ``period`` then
    ``offset + amplitude``.  ``ramp``: ``offset`` to ``offset + amplitude``
    linearly over ``duration``.  ``sine``: ``offset + amplitude*sin(2 pi t/period)``.
    """

    kind: WaveformKind = WaveformKind.RAMP
    amplitude: float = 10.0
    offset: float = 0.0
    period: float = 1.0
    duration: float = 4095.0
    sample_interval: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", WaveformKind(self.kind))
        if not self.sample_interval > 0:
            raise ConfigError("sample_interval must be > 0")
        if not self.duration >= self.sample_interval:
            raise ConfigError("duration must be >= sample_interval")
        if self.kind in (WaveformKind.STEP, WaveformKind.SINE) and not self.period > 0:
            raise ConfigError("period must be > 0 for step and sine waveforms")

    @property
    def sample_count(self) -> int:
        return int(math.floor(self.duration / self.sample_interval + 1e-9)) + 1


class Waveform(NamedTuple):
    times: np.ndarray
    pressures: np.ndarray
    clamped: int


def generate_waveform(spec: WaveformSpec) -> Waveform:
    """Sample the stimulus; negative pressures are clamped to zero with a warning."""
    t = np.arange(spec.sample_count) * spec.sample_interval
    if spec.kind is WaveformKind.CONSTANT:
        p = np.full_like(t, spec.offset)
    elif spec.kind is WaveformKind.STEP:
        p = np.where(t < spec.period, spec.offset, spec.offset + spec.amplitude)
    elif spec.kind is WaveformKind.RAMP:
        p = spec.offset + spec.amplitude * t / t[-1] if t[-1] > 0 else np.full_like(t, spec.offset)
    else:
        p = spec.offset + spec.amplitude * np.sin(2 * np.pi * t / spec.period)
    negative = p < 0
    clamped = int(negative.sum())
    if clamped:
        warnings.warn(f"{clamped} negative waveform samples clamped to 0 Pa", stacklevel=2)
        p = np.where(negative, 0.0, p)
    return Waveform(t, p, clamped)


@dataclass(frozen=True)
class CurrentToPressureSpec:
    current_min: float = 4e-3
    current_max: float = 20e-3
    pressure_min: float = 0.0
    pressure_max: float = 10.0

    def __post_init__(self):
        if not self.current_max > self.current_min:
            raise ConfigError("current_max must exceed current_min")
        if not self.pressure_max > self.pressure_min:
            raise ConfigError("pressure_max must exceed pressure_min")


def current_to_pressure(spec: CurrentToPressureSpec, current: float) -> float:
    i = min(max(current, spec.current_min), spec.current_max)
    frac = (i - spec.current_min) / (spec.current_max - spec.current_min)
    return spec.pressure_min + frac * (spec.pressure_max - spec.pressure_min)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to build and exercise one instrument.

    ``anchor_capacitances`` are the pickup readings at zero pressure and at
    ``cell.anchor_pressure``; with ``calibrate_pickup`` the pickup slope is
    fitted so the configured cell reproduces both exactly (in anchored drift).
    With ``auto_gain`` the amplifier gain is chosen so that
    ``pressure_range[1]`` gives exactly ADC full scale.
    """

    cell: mech.CellSpec = field(default_factory=mech.CellSpec)
    pickup: pk.PlateArray = field(default_factory=pk.PlateArray)
    bridge: br.BridgeNetwork = field(default_factory=br.BridgeNetwork)
    adc: dg.AdcSpec = field(default_factory=dg.AdcSpec)
    waveform: WaveformSpec = field(default_factory=WaveformSpec)
    drift_mode: mech.DriftMode = mech.DriftMode.ANCHORED
    pressure_range: tuple = (0.0, 10.0)
    anchor_capacitances: tuple = (2e-12, 15e-12)
    calibrate_pickup: bool = True
    auto_gain: bool = True
    max_groove_length: float = 0.006
    table_samples: int = 16384
    fig4_points: int = 21
    fig5_max_sectors: int = 8
    fig9_points: int = 101
    output_dir: str = "."

    def __post_init__(self):
        object.__setattr__(self, "drift_mode", mech.DriftMode(self.drift_mode))
        lo, hi = self.pressure_range
        if not 0 <= lo < hi:
            raise ConfigError(f"pressure_range must satisfy 0 <= min < max, got {self.pressure_range}")
        object.__setattr__(self, "pressure_range", (float(lo), float(hi)))
        if self.fig5_max_sectors < 1:
            raise ConfigError("fig5_max_sectors must be >= 1")
        if self.fig4_points < 2 or self.fig9_points < 2:
            raise ConfigError("figure datasets need at least 2 points")


@dataclass(frozen=True)
class ExperimentRecord:
    time: float
    applied_pressure: float
    drift: mech.DriftReport
    capacitance: float
    saturated: bool
    error_amplitude: float
    amplified_voltage: float
    adc_code: int
    pressure_code: int
    output_voltage: float
    measured_pressure: float

    def row(self) -> list:
        return [_fmt(self.time), _fmt(self.applied_pressure),
                _fmt(self.drift.one_side_total), _fmt(self.drift.relative_drift),
                _fmt(self.capacitance), _fmt(self.error_amplitude),
                str(self.adc_code), _fmt(self.measured_pressure)]


@dataclass
class ExperimentResult:
    records: list
    summary: dict


def _fmt(x) -> str:
    return format(float(x), ".9g")


class Rig:
    """A calibrated, ready-to-run instrument built from a :class:`RunConfig`.

    Parameters
    ----------
    config : RunConfig
    table : LinearizationTable, optional
        Use this table instead of building one from the forward chain.
    """

    def __init__(self, config: RunConfig | None = None, table: dg.LinearizationTable | None = None):
        self.config = config or RunConfig()
        self.pickup = self._calibrated_pickup()
        self.bridge = self._sized_bridge()
        self.table = table if table is not None else self.build_table()

    # -- setup -------------------------------------------------------------

    def _calibrated_pickup(self) -> pk.PlateArray:
        cfg = self.config
        if not cfg.calibrate_pickup:
            return cfg.pickup
        cell = cfg.cell
        x_anchor = mech.assembly_drift(cell, cell.anchor_pressure,
                                       mech.DriftMode.ANCHORED).effective_pickup_displacement
        x_zero = mech.assembly_drift(cell, 0.0, mech.DriftMode.ANCHORED).effective_pickup_displacement
        c0, c1 = cfg.anchor_capacitances
        return pk.calibrate(cfg.pickup, [(x_zero, c0), (x_anchor, c1)])

    def _sized_bridge(self) -> br.BridgeNetwork:
        cfg = self.config
        if not cfg.auto_gain:
            return cfg.bridge
        top = self.capacitance(cfg.pressure_range[1])
        e = br.error_signal(cfg.bridge, top).amplitude
        if not e > 0:
            raise ModelError("bridge error is zero at full-scale pressure; cannot size gain")
        return cfg.bridge.with_gain(cfg.adc.full_scale_voltage / e)

    def analog_code(self, pressure: float) -> float:
        """Unquantized ADC input (in codes) for ``pressure``."""
        v = dg.rectify_peak(br.amplified_output(
            self.bridge, br.error_signal(self.bridge, self.capacitance(pressure))))
        return v / self.config.adc.full_scale_voltage * self.config.adc.max_code

    def build_table(self) -> dg.LinearizationTable:
        cfg = self.config
        params = {
            "drift_mode": cfg.drift_mode.value,
            "structure": cfg.cell.structure.value,
            "sector_count": cfg.cell.sector_count,
            "sweep_samples": cfg.table_samples,
            "gain": _fmt(self.bridge.gain),
        }
        return dg.build_table(self.analog_code, cfg.pressure_range, bits=cfg.adc.bits,
                              samples=cfg.table_samples, params=params)

    # -- forward chain ---------------------------------------------------------

    def drift(self, pressure: float, cell: mech.CellSpec | None = None) -> mech.DriftReport:
        return mech.assembly_drift(cell or self.config.cell, pressure, self.config.drift_mode)

    def capacitance(self, pressure: float, cell: mech.CellSpec | None = None) -> float:
        d = self.drift(pressure, cell).effective_pickup_displacement
        return pk.array_capacitance(self.pickup, d).capacitance

    def run_chain(self, pressure: float, time: float = 0.0) -> ExperimentRecord:
        """Push one pressure through every stage."""
        adc = self.config.adc
        stage = "mechanics"
        try:
            drift = self.drift(pressure)
            stage = "pickup"
            reading = pk.array_capacitance(self.pickup, drift.effective_pickup_displacement)
            stage = "bridge"
            err = br.error_signal(self.bridge, reading.capacitance)
            out = br.amplified_output(self.bridge, err)
            stage = "digitizer"
            code = dg.adc_code(adc, dg.rectify_peak(out))
            pcode = dg.linearize(self.table, code)
            vout = dg.dac_voltage(adc, pcode)
        except ChainError:
            raise
        except ModelError as exc:
            raise ChainError(stage, str(exc)) from exc
        return ExperimentRecord(
            time=float(time),
            applied_pressure=float(pressure),
            drift=drift,
            capacitance=reading.capacitance,
            saturated=reading.saturated,
            error_amplitude=err.amplitude,
            amplified_voltage=out.amplitude,
            adc_code=code,
            pressure_code=pcode,
            output_voltage=vout,
            measured_pressure=float(self.table.to_pressure(pcode)),
        )

    def run_experiment(self, waveform: WaveformSpec | None = None) -> ExperimentResult:
        """Drive a waveform through the chain and summarise the agreement."""
        wave = generate_waveform(waveform or self.config.waveform)
        records = []
        display = dg.DisplayState(last_latched=float(wave.times[0]) if len(wave.times) else 0.0)
        for i, (t, p) in enumerate(zip(wave.times, wave.pressures)):
            try:
                rec = self.run_chain(float(p), float(t))
            except ChainError as exc:
                raise ChainError(exc.stage, str(exc.__cause__ or exc), index=i) from exc
            records.append(rec)
            display = dg.display_tick(display, float(t), rec.pressure_code)
        err = np.array([r.measured_pressure - r.applied_pressure for r in records])
        lsb = self.table.pressure_scale
        summary = {
            "samples": len(records),
            "max_abs_error_pa": float(np.max(np.abs(err))),
            "mean_abs_error_pa": float(np.mean(np.abs(err))),
            "max_abs_error_lsb": float(np.max(np.abs(err)) / lsb),
            "clamped_samples": wave.clamped,
            "saturated_samples": sum(r.saturated for r in records),
            "sector_length_warning": mech.sector_length_exceeded(
                self.config.cell.corrugation, self.config.max_groove_length),
            "display_digits": display.bcd_digits,
        }
        return ExperimentResult(records, summary)

    # -- datasets ----------------------------------------------------------------

    def fig4_rows(self):
        cfg = self.config
        header = ["pressure_pa", "single_plain_f", "dual_plain_f", "corrugated_twin_dual_f"]
        cells = [replace(cfg.cell, structure=s) for s in mech.Structure]
        rows = []
        for p in np.linspace(*cfg.pressure_range, cfg.fig4_points):
            rows.append([_fmt(p)] + [_fmt(self.capacitance(float(p), c)) for c in cells])
        return header, rows

    def fig5_rows(self):
        cfg = self.config
        header = ["sector_count", "capacitance_f"]
        rows = []
        for n in range(1, cfg.fig5_max_sectors + 1):
            cell = replace(cfg.cell, structure=mech.Structure.CORRUGATED_TWIN_DUAL,
                           corrugation=replace(cfg.cell.corrugation, sector_count=n))
            rows.append([str(n), _fmt(self.capacitance(cell.anchor_pressure, cell))])
        return header, rows

    def fig9_rows(self):
        cfg = self.config
        header = ["applied_pa", "measured_pa", "error_pa"]
        rows = []
        for p in np.linspace(*cfg.pressure_range, cfg.fig9_points):
            rec = self.run_chain(float(p))
            rows.append([_fmt(p), _fmt(rec.measured_pressure),
                         _fmt(rec.measured_pressure - rec.applied_pressure)])
        return header, rows

    def emit_figure_datasets(self, outdir=None) -> dict:
        """Write ``fig4.csv``, ``fig5.csv`` and ``fig9.csv``; return their paths."""
        outdir = Path(outdir if outdir is not None else self.config.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = {}
        for name, builder in (("fig4", self.fig4_rows), ("fig5", self.fig5_rows),
                              ("fig9", self.fig9_rows)):
            path = outdir / f"{name}.csv"
            header, rows = builder()
            path.write_text(csv_text(header, rows))
            paths[name] = path
        return paths


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_records_csv(records, path) -> Path:
    path = Path(path)
    path.write_text(csv_text(RECORD_COLUMNS, [r.row() for r in records]))
    return path


def run_chain(config: RunConfig, pressure: float) -> ExperimentRecord:
    return Rig(config).run_chain(pressure)


def run_experiment(config: RunConfig) -> ExperimentResult:
    return Rig(config).run_experiment()


def emit_figure_datasets(config: RunConfig, outdir=None) -> dict:
    return Rig(config).emit_figure_datasets(outdir)
