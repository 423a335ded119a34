"""Exception types shared across the package."""


class PursuitError(Exception):
    """Base class for every error raised by vtpursuit."""


class ParseError(PursuitError):
    """Scenario or assignment file is malformed (bad JSON, wrong types, unknown keys)."""


class ValidationError(PursuitError):
    """A scenario violates one or more model assumptions.

    Carries the full list of violation descriptions so callers can report
    every problem at once instead of the first one found.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidSpeed(PursuitError):
    """An agent speed is zero or negative."""


class NegativeTime(PursuitError):
    """A propagation time is negative."""


class SpeedRatioOutOfRange(PursuitError):
    """The evader/pursuer speed ratio is outside the open interval (0, 1)."""


class DegenerateFoci(PursuitError):
    """The two foci of an Apollonius circle coincide (zero separation)."""


class NumericalError(PursuitError):
    """A trig argument drifted too far outside its mathematical range."""


class InvalidGridSize(PursuitError):
    """A candidate lattice side length is smaller than 1."""


class Infeasible(PursuitError):
    """No assignment satisfies the problem constraints."""


class InstanceTooLarge(PursuitError):
    """Instance exceeds the size guards of the brute-force solver."""


class InfeasibleAssignment(PursuitError):
    """An assignment handed to the simulator violates the problem constraints."""
