"""
Error hierarchy for the outage simulator
"""


class SimulationError(Exception):
    """Base class for all simulator errors"""


class InvalidParameterError(SimulationError, ValueError):
    """A physical or algorithmic parameter violates its invariant"""

    def __init__(self, message: str, field: str = None):
        self.field = field
        super().__init__(message)


class InvalidGeometryError(SimulationError, ValueError):
    """A node distance is non-positive or not finite"""

    def __init__(self, message: str, field: str = None):
        self.field = field
        super().__init__(message)


class DegenerateChannelError(SimulationError, ValueError):
    """Both SU-side effective gains vanish, so θ* is undefined"""


class ConfigError(SimulationError, ValueError):
    """Configuration file could not be parsed or validated"""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class ResultsWriteError(SimulationError):
    """Results could not be written to the requested path"""
