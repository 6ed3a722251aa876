"""Exception hierarchy shared by all simulator modules.

Every error raised by cimsim derives from :class:`CimSimError` so callers
(and the CLI) can map failures to exit-code categories.
"""


class CimSimError(Exception):
    """Base class for all cimsim errors."""


class ConfigError(CimSimError):
    """Invalid experiment configuration or configuration file."""


class MappingError(CimSimError):
    """Weight matrix does not fit the target crossbar geometry."""


class ValidationError(CimSimError):
    """A value violates a documented invariant (e.g. negative conductance)."""


class PairingError(CimSimError):
    """Differential readout requested on an odd number of columns."""


class EncodingError(CimSimError):
    """Input vector not representable under the selected encoding scheme."""


class CalibrationError(CimSimError):
    """Threshold or scale calibration received unusable data."""


class ProfilingError(CimSimError):
    """Profiling run received an empty or unusable sample set."""


class ModelLoadError(CimSimError):
    """Model manifest or weight blob failed validation."""


class PlanningError(CimSimError):
    """Tile planning received degenerate matrix or crossbar dimensions."""


class EnergyError(CimSimError):
    """Energy aggregation over tiles is undefined (no MACs executed)."""


class SimulationError(CimSimError):
    """A module error occurred during simulation; message carries layer/tile context."""
