"""
Exception hierarchy shared by every layer.

Library code raises these; only the CLI maps them to exit codes.
"""

from typing import Optional


class GLError(Exception):
    """Base class for all errors raised by multiclass_gl."""


class ConfigError(GLError, ValueError):
    """Invalid parameters, unknown names, or inconsistent run settings."""


class DataFormatError(GLError, ValueError):
    """Malformed input file (CSV, IDX, image, scribbles)."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        offset: Optional[int] = None,
    ):
        self.line = line
        self.offset = offset
        location = ""
        if line is not None:
            location = f" (line {line})"
        elif offset is not None:
            location = f" (offset {offset})"
        super().__init__(f"{message}{location}")


class ContractError(GLError, ValueError):
    """Arguments that disagree in size or domain."""


class NumericalError(GLError, ArithmeticError):
    """Non-finite values or solver failure."""


class NumericalDivergenceError(NumericalError):
    """A state update produced a non-finite value."""

    def __init__(self, vertex: int, value: float, iteration: Optional[int] = None):
        self.vertex = vertex
        self.value = value
        self.iteration = iteration
        where = f" at iteration {iteration}" if iteration is not None else ""
        super().__init__(f"Non-finite state value {value!r} at vertex {vertex}{where}")
