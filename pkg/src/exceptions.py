"""Exception hierarchy for the lab."""

from typing import Any, Optional


class KGScatterError(Exception):
    """Base class for every error raised by the lab."""


class InvalidInputError(KGScatterError, ValueError):
    """Rejected input: non-finite symbol, bad grid, non-admissible pair, ..."""


class BandOverflowError(KGScatterError, ValueError):
    """A boost would move spectral support outside the resolved band."""

    def __init__(self, nu: float, nu_max: float):
        self.nu = nu
        self.nu_max = nu_max
        super().__init__(
            f"boost nu={nu:.6g} exceeds nu_max={nu_max:.6g}; "
            "enlarge n_points or shrink |nu|"
        )


class BlowupDetected(KGScatterError, RuntimeError):
    """L-infinity escape or nonlinearity overflow during an evolution."""

    def __init__(self, time: Optional[float], max_abs: float, trajectory: Any = None):
        self.time = time
        self.max_abs = max_abs
        # Partial trajectory up to the last clean snapshot
        self.trajectory = trajectory
        where = "" if time is None else f" at t={time:.6g}"
        super().__init__(f"blowup detected{where} (max|u|={max_abs:.6g})")


class SlabEscapeError(KGScatterError, ValueError):
    """A boosted slice needs data outside the trajectory's time span."""


class DegenerateFitError(KGScatterError, ValueError):
    """A decay fit has no usable samples."""


class ConfigError(KGScatterError, ValueError):
    """Scenario file could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"{field}: "
        super().__init__(prefix + message)
