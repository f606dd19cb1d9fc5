"""Validated core types shared by the whole pipeline.

All types here are immutable after construction and safe to share across
threads. Validation happens in ``__post_init__`` so an instance that exists
is an instance that is valid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from .errors import (
    FavoriteNotMinimum,
    OddsOutOfRange,
    SameTeams,
    ValidationError,
)


class OutcomeKind(enum.Enum):
    """The three possible results of a match, seen from the bookmaker line."""

    FAVORITE_WIN = "F"
    DRAW = "D"
    UNDERDOG_WIN = "U"


class ClassLabel(enum.Enum):
    """Classification target: did a potential upset actually turn into one."""

    UPSET = "upset"
    BASELINE = "baseline"


def as_utc(instant: datetime) -> datetime:
    """Normalize an aware datetime to UTC at second resolution."""
    if instant.tzinfo is None:
        raise ValidationError(f"naive datetime not allowed: {instant!r}")
    return instant.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class OddsTriple:
    """Averaged decimal odds for the three outcomes of one match.

    Decimal convention: a winning stake ``s`` at odds ``o`` returns ``s * o``
    with the stake included, so every playable odd is strictly greater
    than 1 (an odd of exactly 1 would return only the stake).
    """

    fav: float
    draw: float
    und: float

    def __post_init__(self):
        for name, value in (("fav", self.fav), ("draw", self.draw), ("und", self.und)):
            if not value > 1.0:  # also rejects NaN
                raise OddsOutOfRange(f"{name} odds must be > 1, got {value!r}")

    @property
    def max_odds(self) -> float:
        return max(self.fav, self.draw, self.und)

    @property
    def min_odds(self) -> float:
        return min(self.fav, self.draw, self.und)

    def for_outcome(self, outcome: OutcomeKind) -> float:
        """Decimal odds paid if ``outcome`` materializes."""
        if outcome is OutcomeKind.FAVORITE_WIN:
            return self.fav
        if outcome is OutcomeKind.DRAW:
            return self.draw
        return self.und


@dataclass(frozen=True)
class GameRecord:
    """One match with its averaged odds and, once played, its outcome.

    The favorite is by definition the outcome carrying the minimum odds;
    ties between the favorite's odds and another component are allowed
    (the input labeling is authoritative), but a favorite whose odds are
    strictly above another component is rejected.
    """

    game_id: str
    favorite: str
    underdog: str
    kickoff: datetime
    odds: OddsTriple
    outcome: Optional[OutcomeKind] = None
    tournament: str = ""

    def __post_init__(self):
        if not self.game_id:
            raise ValidationError("game_id must be non-empty")
        if self.favorite == self.underdog:
            raise SameTeams(f"{self.game_id}: favorite and underdog are both {self.favorite!r}")
        if self.odds.fav > min(self.odds.draw, self.odds.und):
            raise FavoriteNotMinimum(
                f"{self.game_id}: favorite odds {self.odds.fav} exceed "
                f"another component of {self.odds}"
            )
        object.__setattr__(self, "kickoff", as_utc(self.kickoff))


def validate_game(
    game_id: str,
    favorite: str,
    underdog: str,
    kickoff: datetime,
    odds_fav: float,
    odds_draw: float,
    odds_und: float,
    outcome: Optional[OutcomeKind] = None,
    tournament: str = "",
) -> GameRecord:
    """Build a validated ``GameRecord`` from raw field values."""
    odds = OddsTriple(fav=odds_fav, draw=odds_draw, und=odds_und)
    return GameRecord(
        game_id=game_id,
        favorite=favorite,
        underdog=underdog,
        kickoff=kickoff,
        odds=odds,
        outcome=outcome,
        tournament=tournament,
    )


def _normalize_hashtag(tag: str) -> str:
    return tag.lstrip("#").lower()


@dataclass(frozen=True)
class TweetRecord:
    """One message from the stream, with optional precomputed sentiment.

    Hashtags are stored lowercase without the leading ``#`` regardless of
    how they arrive. ``precomputed_sentiment``, when present, must lie in
    [0, 1]; it is what the passthrough scorer returns verbatim.
    """

    tweet_id: str
    timestamp: datetime
    user_id: str
    text: str
    hashtags: tuple[str, ...] = ()
    retweeted_user: Optional[str] = None
    mentioned_users: tuple[str, ...] = ()
    precomputed_sentiment: Optional[float] = None

    def __post_init__(self):
        if not self.tweet_id:
            raise ValidationError("tweet_id must be non-empty")
        object.__setattr__(self, "timestamp", as_utc(self.timestamp))
        object.__setattr__(
            self, "hashtags", tuple(_normalize_hashtag(h) for h in self.hashtags)
        )
        object.__setattr__(self, "mentioned_users", tuple(self.mentioned_users))
        score = self.precomputed_sentiment
        if score is not None and not 0.0 <= score <= 1.0:
            raise ValidationError(
                f"{self.tweet_id}: precomputed sentiment {score!r} outside [0, 1]"
            )
