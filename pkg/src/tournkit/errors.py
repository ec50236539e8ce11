"""Exception taxonomy shared across the package."""


class TournamentError(ValueError):
    """Base class for all domain errors raised by this package."""


# -- tournament construction / access --------------------------------------

class DimensionMismatch(TournamentError):
    """Matrix or file dimensions do not match the declared n."""


class NotAntisymmetric(TournamentError):
    """Some pair has both or neither dominance direction set."""


class SelfLoop(TournamentError):
    """A diagonal adjacency entry is set."""


class OutOfRange(TournamentError):
    """An alternative id is outside [0, n)."""


class SamePair(TournamentError):
    """A pairwise query was made with i == j."""


class EmptySubset(TournamentError):
    """restrict() was called with an empty subset."""


class DuplicateId(TournamentError):
    """restrict() was called with repeated alternative ids."""


class FormatError(TournamentError):
    """A text payload could not be parsed at all."""


# -- solutions --------------------------------------------------------------

class InvalidK(TournamentError):
    """k-king queries require k >= 2 (or the MAX sentinel)."""


class InvalidR(TournamentError):
    """r-dominating-set queries require 1 <= r <= n."""


# -- random models ----------------------------------------------------------

class InvalidP(TournamentError):
    """Model probability parameter outside [0, 0.5]."""


class BadMatrix(TournamentError):
    """Probability matrix is not square or rows/columns are inconsistent."""


# -- single elimination -----------------------------------------------------

class NotPowerOfTwo(TournamentError):
    """Bracket operations require n to be a power of two."""


class InvalidPermutation(TournamentError):
    """Bracket leaves are not a permutation of the alternatives."""


class NotSuperking(TournamentError):
    """superking_bracket() requires a superking input."""


class ConstructionFailed(TournamentError):
    """A constructed bracket failed playout verification."""


class TooLarge(TournamentError):
    """Exhaustive search is restricted to n <= 16."""


# -- experiments ------------------------------------------------------------

class InvalidConfig(TournamentError):
    """Experiment grid configuration is malformed."""


class IoFailure(TournamentError):
    """CSV or file output could not be written."""
