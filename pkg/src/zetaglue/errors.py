"""Exception types shared across the library.

The CLI maps these onto process exit codes: validation problems exit with
2, numerical non-convergence with 3, and inadmissible (singular) parameter
combinations with 4.
"""


class ZetaGlueError(Exception):
    """Base class for all library errors."""


class ValidationError(ZetaGlueError):
    """Malformed input: bad domain, unsupported combination, schema violation."""


class InsufficientSpectrumError(ValidationError):
    """A stored spectrum is truncated below the cutoff a computation needs.

    ``max_trusted`` carries the largest eigenvalue cutoff the stored data
    can certify.
    """

    def __init__(self, message: str, max_trusted: float):
        super().__init__(f"{message} (largest trustworthy cutoff: {max_trusted:.6g})")
        self.max_trusted = max_trusted


class HeatDataRequiredError(ValidationError):
    """An explicit cross-section was used without heat-trace coefficients."""


class MissingHeatCoefficientError(ValidationError):
    """A heat coefficient needed by a closed-form constant is not stored."""

    def __init__(self, index: int):
        super().__init__(f"heat coefficient a_{index} is required but not available")
        self.index = index


class SingularParameterError(ZetaGlueError):
    """A shift or Robin parameter collides with a spectral value."""


class ConvergenceError(ZetaGlueError):
    """A numerical backend could not reach the requested tolerance.

    ``achieved`` reports the tolerance that was actually reached.
    """

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved tolerance: {achieved:.3g})")
        self.achieved = achieved
