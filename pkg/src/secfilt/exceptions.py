"""Exception hierarchy shared by all solvers.

Input problems (bad matrices, dimensions, parameter ranges) derive from
InputError; numerical failures inside a solver derive from SolverError.
The CLI maps these to exit codes 2 and 3 respectively.
"""


class SecrecyDesignError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SecrecyDesignError):
    """The caller supplied invalid data or parameters."""


class SolverError(SecrecyDesignError):
    """A numerical procedure failed to produce a certified solution."""


class NotPositiveDefinite(InputError):
    pass


class RankDeficient(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class BadDimension(InputError):
    pass


class CollinearChannels(InputError):
    pass


class NonPositivePower(InputError):
    pass


class NonPositiveGamma(InputError):
    pass


class GammaTooLarge(InputError):
    pass


class DegreesOfFreedom(InputError):
    pass


class AlphabetTooLarge(InputError):
    pass


class NotDegraded(InputError):
    pass


class OutOfInterval(InputError):
    pass


class WrongRegime(InputError):
    pass


class RegimeUndefined(SolverError):
    pass


class BisectionFailed(SolverError):
    pass


class ConvergenceFailed(SolverError):
    pass
