"""Exception hierarchy shared by all modules."""


class ActuatorError(Exception):
    """Base class for errors raised by nvactuator."""


class DegenerateFrame(ActuatorError):
    """The two rotation axes coincide (or a speed vanishes), so the frame cannot steer the goal."""


class ResonanceError(ActuatorError):
    """An enhancement-factor denominator vanishes (electron transition resonant with the drive)."""


class NoSolutionFound(ActuatorError):
    """No admissible switching sequence reached the requested infidelity."""

    def __init__(self, message, best_infidelity=float("nan")):
        super().__init__(message)
        self.best_infidelity = best_infidelity


class SpinDataError(ActuatorError, ValueError):
    """Malformed spin table input."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row
