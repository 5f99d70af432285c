"""Rectifier, ADC, linearization table, DAC and BCD display latch.

Codes are plain ``int`` (or integer numpy arrays); voltages are volts.  The
linearization table maps every ADC code to a pressure code on the same
``2**bits`` grid, with ``pressure_scale`` pascals per pressure code above
``pressure_min``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bridge import PhasorSignal
from .errors import ConfigError, NonMonotoneResponseError, OutOfRangeError


@dataclass(frozen=True)
class AdcSpec:
    bits: int = 12
    full_scale_voltage: float = 5.0

    def __post_init__(self):
        if not 1 <= self.bits <= 16:
            raise ConfigError(f"bits must be in [1, 16], got {self.bits}")
        if not self.full_scale_voltage > 0:
            raise ConfigError("full_scale_voltage must be > 0")

    @property
    def max_code(self) -> int:
        return (1 << self.bits) - 1

    @property
    def lsb(self) -> float:
        return self.full_scale_voltage / self.max_code


def rectify_peak(signal: PhasorSignal) -> float:
    """Ideal precision peak rectifier: the DC level equals the amplitude."""
    return float(signal.amplitude)


def adc_code(spec: AdcSpec, voltage):
    """Round-half-up conversion, saturating at both ends.

    Accepts a scalar or an array; scalars give ``int``.
    """
    x = np.floor(np.asarray(voltage, dtype=float) / spec.full_scale_voltage * spec.max_code + 0.5)
    code = np.clip(x, 0, spec.max_code).astype(np.int64)
    return int(code) if code.ndim == 0 else code


def _check_code(code, max_code):
    c = np.asarray(code)
    if np.any(c < 0) or np.any(c > max_code):
        raise OutOfRangeError(f"code outside [0, {max_code}]")


def dac_voltage(spec: AdcSpec, code):
    _check_code(code, spec.max_code)
    v = np.asarray(code, dtype=float) / spec.max_code * spec.full_scale_voltage
    return float(v) if v.ndim == 0 else v


@dataclass(frozen=True, eq=False)
class LinearizationTable:
    """Lookup table from ADC code to linearized pressure code.

    Attributes
    ----------
    entries : ndarray of uint16
        ``2**bits`` pressure codes, non-decreasing.
    pressure_min, pressure_max : float
        Pressures represented by code 0 and by the top code.
    params : dict
        Free-form generation parameters, written to the export header.
    """

    entries: np.ndarray
    pressure_min: float
    pressure_max: float
    bits: int = 12
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.uint16)
        object.__setattr__(self, "entries", e)
        if e.shape != (1 << self.bits,):
            raise ConfigError(f"table must have {1 << self.bits} entries, got {e.shape}")
        if np.any(np.diff(e.astype(np.int64)) < 0):
            raise NonMonotoneResponseError("table entries must be non-decreasing")
        if np.any(e > self.max_code):
            raise ConfigError("table entry exceeds code range")

    @property
    def max_code(self) -> int:
        return (1 << self.bits) - 1

    @property
    def pressure_scale(self) -> float:
        return (self.pressure_max - self.pressure_min) / self.max_code

    def to_pressure(self, pressure_code):
        return self.pressure_min + np.asarray(pressure_code, dtype=float) * self.pressure_scale

    def pressure_code(self, pressure):
        """Continuous (unrounded) pressure code of ``pressure``."""
        return (np.asarray(pressure, dtype=float) - self.pressure_min) / self.pressure_scale

    def __eq__(self, other):
        if not isinstance(other, LinearizationTable):
            return NotImplemented
        return (np.array_equal(self.entries, other.entries) and self.bits == other.bits
                and self.pressure_min == other.pressure_min
                and self.pressure_max == other.pressure_max)


def build_table(forward, pressure_range, bits=12, samples=None, params=None) -> LinearizationTable:
    """Invert a monotone pressure response into a lookup table.

    Parameters
    ----------
    forward : callable
        Maps a pressure (Pa) to a real-valued ADC code.  It is called once
        per sweep point with a scalar.  Passing the unrounded code puts each
        table entry at the centre of its ADC bin.
    pressure_range : (float, float)
        Pressures mapped to pressure codes ``0`` and ``2**bits - 1``.
    samples : int, optional
        Sweep density; at least ``2**bits`` (default ``4 * 2**bits``).

    Raises
    ------
    NonMonotoneResponseError
        If the swept response drops by more than one code anywhere.
    """
    pmin, pmax = map(float, pressure_range)
    if not pmax > pmin:
        raise ConfigError(f"empty pressure range [{pmin}, {pmax}]")
    n_codes = 1 << bits
    max_code = n_codes - 1
    samples = 4 * n_codes if samples is None else int(samples)
    if samples < n_codes:
        raise ConfigError(f"need at least {n_codes} sweep samples, got {samples}")

    p = np.linspace(pmin, pmax, samples)
    y = np.array([float(forward(pi)) for pi in p])
    if not np.all(np.isfinite(y)):
        raise NonMonotoneResponseError("forward response is not finite")
    drops = y[:-1] - y[1:]
    if np.any(drops > 1.0):
        i = int(np.argmax(drops))
        raise NonMonotoneResponseError(
            f"response falls by {drops[i]:.3g} codes between {p[i]:.6g} and {p[i + 1]:.6g} Pa"
        )
    y = np.maximum.accumulate(y)

    # keep one sweep point per distinct response value so interp sees a strictly
    # increasing abscissa; the midpoint of a flat run is its best pre-image
    uniq, first, counts = np.unique(y, return_index=True, return_counts=True)
    p_mid = 0.5 * (p[first] + p[first + counts - 1])

    codes = np.arange(n_codes, dtype=float)
    pre = np.interp(codes, uniq, p_mid, left=pmin, right=pmax)
    pcode = (pre - pmin) / (pmax - pmin) * max_code
    entries = np.clip(np.floor(pcode + 0.5), 0, max_code).astype(np.uint16)
    entries[codes < uniq[0]] = 0
    entries[codes > uniq[-1]] = max_code
    entries = np.maximum.accumulate(entries)
    return LinearizationTable(entries, pmin, pmax, bits, dict(params or {}))


def linearize(table: LinearizationTable, code) -> int:
    _check_code(code, table.max_code)
    out = table.entries[np.asarray(code, dtype=np.int64)]
    return int(out) if np.ndim(out) == 0 else out.astype(np.int64)


def to_bcd(value: int, digits: int = 4) -> tuple:
    """Decimal digits of ``value``, most significant first, zero padded."""
    value = int(value)
    if not 0 <= value < 10**digits:
        raise OutOfRangeError(f"{value} does not fit in {digits} BCD digits")
    return tuple(int(ch) for ch in f"{value:0{digits}d}")


@dataclass(frozen=True)
class DisplayState:
    bcd_digits: tuple = (0, 0, 0, 0)
    latch_period: float = 1.0
    last_latched: float = 0.0


def display_tick(state: DisplayState, now: float, value: int) -> DisplayState:
    """Advance the display latch to time ``now``.

    The latch fires at most once per call however many periods have passed,
    and its timestamp advances by whole periods only.
    """
    elapsed = now - state.last_latched
    if elapsed < 0:
        raise OutOfRangeError("display clock ran backwards")
    periods = math.floor(elapsed / state.latch_period + 1e-12)
    if periods < 1:
        return state
    return DisplayState(to_bcd(value), state.latch_period,
                        state.last_latched + periods * state.latch_period)


def export_table(table: LinearizationTable, path) -> tuple:
    """Write ``path`` (raw little-endian uint16 words) and ``path.txt`` header.

    Returns the two paths written.
    """
    path = Path(path)
    header = path.with_name(path.name + ".txt")
    path.write_bytes(table.entries.astype("<u2").tobytes())
    lines = [
        f"bits = {table.bits}",
        f"entries = {table.entries.size}",
        f"pressure_min_pa = {table.pressure_min!r}",
        f"pressure_max_pa = {table.pressure_max!r}",
        f"pressure_scale_pa_per_code = {table.pressure_scale!r}",
    ]
    lines += [f"{k} = {v}" for k, v in sorted(table.params.items())]
    header.write_text("\n".join(lines) + "\n")
    return path, header


def import_table(path) -> LinearizationTable:
    path = Path(path)
    header = path.with_name(path.name + ".txt")
    meta = {}
    for line in header.read_text().splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            meta[k.strip()] = v.strip()
    try:
        bits = int(meta.pop("bits"))
        pmin = float(meta.pop("pressure_min_pa"))
        pmax = float(meta.pop("pressure_max_pa"))
    except KeyError as exc:
        raise ConfigError(f"{header}: missing header field {exc}") from None
    for k in ("entries", "pressure_scale_pa_per_code"):
        meta.pop(k, None)
    raw = np.frombuffer(path.read_bytes(), dtype="<u2")
    if np.any(raw > (1 << bits) - 1):
        raise ConfigError(f"{path}: entry uses more than {bits} bits")
    return LinearizationTable(raw.copy(), pmin, pmax, bits, meta)
