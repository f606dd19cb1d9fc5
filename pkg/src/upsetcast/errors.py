"""Exception types raised across the package.

Three coarse families matter to callers (the service maps them to error
kinds and the CLI to exit codes):

* ``ParseError``       unreadable input file content (carries a line number)
* ``ValidationError``  well-formed input that violates a domain contract
* anything else        runtime failure
"""


class UpsetcastError(Exception):
    """Base class for every deliberate error raised by this package."""


class ParseError(UpsetcastError):
    """A file could not be parsed. Records the offending line."""

    def __init__(self, path: str, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class ValidationError(UpsetcastError, ValueError):
    """Parsed data or configuration violates a domain invariant."""


# domain
class OddsOutOfRange(ValidationError):
    """A decimal odds component is not strictly greater than 1."""


class FavoriteNotMinimum(ValidationError):
    """The favorite's odds are not the minimum component of the triple."""


class SameTeams(ValidationError):
    """A game lists the same team as favorite and underdog."""


# odds
class MissingOutcome(ValidationError):
    """An operation needing a realized outcome got a game without one."""


class EmptyList(ValidationError):
    """An aggregate over bookmaker odds received no input."""


# ingest
class DuplicateTweetId(ValidationError):
    """The same tweet id appears more than once in one corpus."""


# sentiment
class MissingPrecomputedScore(ValidationError):
    """Passthrough scoring hit a tweet without a stored sentiment score."""


class EmptyCorpus(ValidationError):
    """A benchmark corpus contained no labeled items."""


# stats
class EmptyInput(ValidationError):
    """Ranking requires at least one value."""


class EmptySample(ValidationError):
    """Both samples of a rank test must be non-empty."""


# features
class CorpusNotFiltered(ValidationError):
    """Feature extraction was handed a corpus that fails the volume filter."""


class UnlabeledGame(ValidationError):
    """A labeled-data operation received a game without a class label."""


# learn
class MissingClass(ValidationError):
    """Training data does not contain every class."""


class DimensionMismatch(ValidationError):
    """Feature vector length differs from what a model was fitted on."""


class KTooLarge(ValidationError):
    """More cross-validation folds requested than there are examples."""


class LengthMismatch(ValidationError):
    """Aligned prediction/score/label sequences have different lengths."""


# betting
class ZeroTotalStake(ValidationError):
    """A settlement was requested for an allocation that stakes nothing."""


# signals
class EventOutOfRange(ValidationError):
    """A match event's minute falls outside the analyzed duration."""


class OverlappingGroups(ValidationError):
    """A user appears in both the favorite and underdog fan groups."""


# config / synth
class InvalidConfig(ValidationError):
    """A configuration value violates its declared range."""
