"""
Exception hierarchy shared by the models, the CLI and the HTTP surface
"""


class MotionShiftError(Exception):
    """Base class for every error raised by the package"""


class ParameterError(MotionShiftError, ValueError):
    """A physical parameter, basis or schedule violates its invariants"""


class DimensionError(ParameterError):
    """State vector and operator dimensions do not match"""


class SingularityError(MotionShiftError, ArithmeticError):
    """A closed form was evaluated at (or too close to) one of its poles"""


class BracketingError(MotionShiftError):
    """The search bracket holds no interior maximum or derivative root"""


class AmbiguityError(BracketingError):
    """The search bracket holds more than one interior maximum"""

    def __init__(self, message, grid=None, values=None, maxima=None):
        super().__init__(message)
        self.grid = grid
        self.values = values
        self.maxima = maxima


class ConfigError(MotionShiftError, ValueError):
    """Invalid run configuration; ``field`` names the offending option"""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
