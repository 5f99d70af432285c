"""TOML run configuration with unit-suffixed quantities.

Dimensioned values may be given as a bare number (SI) or as a string with an
explicit unit, e.g. ``rim_radius = "2.5 cm"`` or ``c2 = "10 pF"``.  Sections:
``material``, ``shell``, ``corrugation``, ``pickup``, ``bridge``, ``adc``,
``run`` and ``run.waveform``.  Anything omitted keeps its default.
"""

from __future__ import annotations

import re
import sys
from dataclasses import fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import bridge as br
from . import digitizer as dg
from . import mechanics as mech
from . import pickup as pk
from . import rig
from .errors import CellError, ConfigError

_PREFIX = {"G": 1e9, "M": 1e6, "k": 1e3, "": 1.0, "m": 1e-3, "u": 1e-6, "µ": 1e-6,
           "n": 1e-9, "p": 1e-12}
_BASE = {"m": "length", "Pa": "pressure", "F": "capacitance", "H": "inductance",
         "V": "voltage", "Hz": "frequency", "ohm": "resistance", "s": "time",
         "A": "current", "F/m": "permittivity"}
_EXTRA = {"cm": ("length", 1e-2), "N/m^2": ("pressure", 1.0), "GN/m^2": ("pressure", 1e9)}

_QTY = re.compile(r"^\s*([-+0-9.eE]+)\s*([^\s]*)\s*$")


def _unit_factor(unit: str):
    if unit in _EXTRA:
        return _EXTRA[unit]
    for base, dim in sorted(_BASE.items(), key=lambda kv: -len(kv[0])):
        if unit.endswith(base) and unit[: -len(base)] in _PREFIX:
            return dim, _PREFIX[unit[: -len(base)]]
    raise ConfigError(f"unknown unit {unit!r}")


def parse_quantity(value, dimension: str) -> float:
    """Convert a config value to SI.

    >>> parse_quantity("2.5 cm", "length")
    0.025
    >>> parse_quantity("15 pF", "capacitance")
    1.5e-11
    """
    if isinstance(value, bool):
        raise ConfigError(f"expected a {dimension}, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    m = _QTY.match(str(value))
    if not m:
        raise ConfigError(f"cannot parse quantity {value!r}")
    try:
        number = float(m.group(1))
    except ValueError:
        raise ConfigError(f"cannot parse quantity {value!r}") from None
    if not m.group(2):
        return number
    dim, factor = _unit_factor(m.group(2))
    if dim != dimension:
        raise ConfigError(f"{value!r} is a {dim}, expected a {dimension}")
    return number * factor


# field name -> dimension; fields absent here are taken verbatim
_DIMS = {
    "material": {"young_modulus": "pressure"},
    "shell": {"rim_radius": "length", "thickness": "length", "shell_height": "length"},
    "corrugation": {"groove_length": "length", "groove_radius": "length",
                    "groove_vertex_height": "length"},
    "pickup": {"outer_radius": "length", "inner_radius": "length", "plate_length": "length",
               "innermost_plate_length": "length", "baseline_overlap": "length",
               "permittivity": "permittivity", "baseline_capacitance": "capacitance",
               "slope": "permittivity", "anchor_capacitance": "capacitance"},
    "bridge": {"c2": "capacitance", "l3": "inductance", "c3": "capacitance",
               "l4": "inductance", "c4": "capacitance", "excitation_amplitude": "voltage",
               "excitation_frequency": "frequency", "r1": "resistance", "r2": "resistance"},
    "adc": {"full_scale_voltage": "voltage"},
    "run": {"reference_pressure": "pressure", "anchor_pressure": "pressure",
            "anchor_end_drift": "length", "pressure_min": "pressure",
            "pressure_max": "pressure", "max_groove_length": "length"},
    "waveform": {"amplitude": "pressure", "offset": "pressure", "period": "time",
                 "duration": "time", "sample_interval": "time"},
}


def _section(raw: dict, name: str, allowed) -> dict:
    sec = raw.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"[{name}] must be a table")
    unknown = set(sec) - set(allowed)
    if unknown:
        raise ConfigError(f"[{name}] unknown keys: {', '.join(sorted(unknown))}")
    dims = _DIMS.get(name, {})
    return {k: parse_quantity(v, dims[k]) if k in dims else v for k, v in sec.items()}


def _names(cls):
    return [f.name for f in fields(cls)]


_RUN_KEYS = ["structure", "drift_mode", "reference_pressure", "anchor_pressure",
             "anchor_end_drift", "pressure_min", "pressure_max", "calibrate_pickup",
             "auto_gain", "max_groove_length", "table_samples", "fig4_points",
             "fig5_max_sectors", "fig9_points", "output_dir", "waveform"]


def config_from_dict(raw: dict) -> rig.RunConfig:
    """Build a :class:`~diaphragm_cell.rig.RunConfig` from parsed TOML."""
    unknown = set(raw) - {"material", "shell", "corrugation", "pickup", "bridge", "adc", "run"}
    if unknown:
        raise ConfigError(f"unknown sections: {', '.join(sorted(unknown))}")
    try:
        material = mech.Material(**_section(raw, "material", _names(mech.Material)))
        shell = mech.ShellGeometry(**_section(raw, "shell", _names(mech.ShellGeometry)))
        corr = mech.CorrugationGeometry(**_section(raw, "corrugation",
                                                   _names(mech.CorrugationGeometry)))
        pick = _section(raw, "pickup", _names(pk.PlateArray) + ["anchor_capacitance"])
        bridge = br.BridgeNetwork(**_section(raw, "bridge", _names(br.BridgeNetwork)))
        adc = dg.AdcSpec(**_section(raw, "adc", _names(dg.AdcSpec)))
        run = _section(raw, "run", _RUN_KEYS)
        wave_raw = run.pop("waveform", {})
        waveform = rig.WaveformSpec(**_section({"waveform": wave_raw}, "waveform",
                                               _names(rig.WaveformSpec)))

        cell_kw = {k: run.pop(k) for k in ("structure", "reference_pressure",
                                           "anchor_pressure", "anchor_end_drift") if k in run}
        cell = mech.CellSpec(material, shell, corr, **cell_kw)

        defaults = rig.RunConfig()
        anchor_c = (pick.get("baseline_capacitance", defaults.anchor_capacitances[0]),
                    pick.pop("anchor_capacitance", defaults.anchor_capacitances[1]))
        plates = pk.PlateArray(**pick)
        lo = run.pop("pressure_min", defaults.pressure_range[0])
        hi = run.pop("pressure_max", defaults.pressure_range[1])
        return rig.RunConfig(cell=cell, pickup=plates, bridge=bridge, adc=adc,
                             waveform=waveform, pressure_range=(lo, hi),
                             anchor_capacitances=anchor_c, **run)
    except ConfigError:
        raise
    except (CellError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> rig.RunConfig:
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config_from_dict(raw)


DEFAULT_TOML = """\
# Reference geometry; every value below is also the built-in default.
[material]
young_modulus = "200 GPa"
poisson_ratio = 0.3

[shell]
rim_radius = "2.5 cm"
thickness = "0.6 mm"
shell_height = "0.5 cm"

[corrugation]
sector_count = 8
groove_length = "0.5 cm"
groove_radius = "2 cm"
groove_vertex_height = "0.6 cm"

[pickup]
plate_pair_count = 4
outer_radius = "2 cm"
inner_radius = "1 cm"
plate_length = "1.5 cm"
innermost_plate_length = "1.2 cm"
baseline_overlap = "0.3 cm"
baseline_capacitance = "2 pF"
anchor_capacitance = "15 pF"

[bridge]
c2 = "10 pF"
c3 = "10 nF"
c4 = "18 nF"
excitation_amplitude = "1 V"
excitation_frequency = "10 kHz"
r1 = "1 kohm"

[adc]
bits = 12
full_scale_voltage = "5 V"

[run]
structure = "corrugated"
drift_mode = "anchored"
anchor_pressure = "10 Pa"
anchor_end_drift = "0.2 cm"
pressure_min = "0 Pa"
pressure_max = "10 Pa"
max_groove_length = "0.6 cm"

[run.waveform]
kind = "ramp"
amplitude = "10 Pa"
offset = "0 Pa"
duration = "4095 s"
sample_interval = "1 s"
"""
