"""Simulator of a corrugated twin-dual-diaphragm capacitive pressure cell."""

from .errors import (CellError, ChainError, ConfigError, IllPosedError, InvalidGeometryError,
                     ModelError, NoBalanceError, NonMonotoneResponseError, OutOfRangeError,
                     ResonanceError)
from .mechanics import (CellSpec, CorrugationGeometry, DriftMode, DriftReport, Material,
                        ShellGeometry, Structure, assembly_drift, vertex_drift)
from .pickup import PlateArray, array_capacitance, calibrate
from .bridge import BridgeNetwork, PhasorSignal, balance_capacitance, error_signal
from .digitizer import AdcSpec, LinearizationTable, build_table, linearize
from .rig import RunConfig, Rig, WaveformSpec, generate_waveform

__version__ = "0.1.0"
