"""Exception hierarchy.

Config problems and model problems are kept apart so the CLI can map them to
distinct exit codes.
"""


class CellError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(CellError, ValueError):
    """Invalid configuration value or malformed config file."""


class ModelError(CellError):
    """The physical model cannot be evaluated for the given inputs."""


class InvalidGeometryError(ModelError, ValueError):
    pass


class OutOfRangeError(ModelError, ValueError):
    pass


class IllPosedError(ModelError, ValueError):
    pass


class ResonanceError(ModelError):
    """An LC arm is driven at (or numerically at) its resonance."""


class NoBalanceError(ModelError):
    """No positive transducer capacitance nulls the bridge."""


class NonMonotoneResponseError(ModelError):
    """The forward pressure response cannot be inverted by a lookup table."""


class ChainError(ModelError):
    """A stage of the signal chain failed.

    Attributes
    ----------
    stage : str
        Name of the failing stage (``mechanics``, ``pickup``, ``bridge``,
        ``digitizer``).
    index : int or None
        Sample index within an experiment run, when known.
    """

    def __init__(self, stage, message, index=None):
        self.stage = stage
        self.index = index
        where = f"sample {index}, " if index is not None else ""
        super().__init__(f"{where}stage {stage!r}: {message}")
