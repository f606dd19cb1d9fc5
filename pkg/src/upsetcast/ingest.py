"""Corpus assembly: hashtag attribution, pre-game slicing, volume filtering.

Each tweet is attributed to exactly one of four buckets per game based on
its hashtags: favorite fans, underdog fans, match-both (mentions both
sides, or uses a combined "vs" tag), or unrelated. Only hashtags drive
attribution; free-text team names do not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Iterable, Sequence

from .domain import GameRecord, TweetRecord
from .errors import DuplicateTweetId, InvalidConfig, ValidationError

#: Length of the pre-game window the features are extracted from.
PREGAME_SPAN = timedelta(hours=6)

#: Default minimum tweets per team per hour for a game to be usable.
DEFAULT_MIN_RATE = 40.0


class Attribution(enum.Enum):
    FAVORITE_FANS = "favorite"
    UNDERDOG_FANS = "underdog"
    MATCH_BOTH = "match"
    UNRELATED = "unrelated"


class VolumeSemantics(enum.Enum):
    """How "at least N tweets per team per hour" is read: as an average
    rate over the whole window, or as a floor on every hourly bucket."""

    AVERAGE = "average"
    HOURLY = "hourly"


@dataclass(frozen=True)
class TeamTags:
    """Hashtag sets identifying each side and the match itself.

    Tags are stored lowercase without '#'. The favorite and underdog sets
    must be disjoint; combined tags (e.g. "bravsger") go in ``match``.
    """

    favorite: frozenset[str]
    underdog: frozenset[str]
    match: frozenset[str] = frozenset()

    def __post_init__(self):
        norm = lambda tags: frozenset(t.lstrip("#").lower() for t in tags)
        object.__setattr__(self, "favorite", norm(self.favorite))
        object.__setattr__(self, "underdog", norm(self.underdog))
        object.__setattr__(self, "match", norm(self.match))
        if not self.favorite or not self.underdog:
            raise ValidationError("favorite and underdog tag sets must be non-empty")
        overlap = self.favorite & self.underdog
        if overlap:
            raise ValidationError(f"tags appear on both sides: {sorted(overlap)}")


@dataclass(frozen=True)
class GameCorpus:
    """The attributed 6-hour pre-game tweet slice for one game.

    The three lists are disjoint by tweet id, sorted by timestamp, and all
    timestamps fall in [window_start, window_end). ``window_end`` is the
    kickoff instant.
    """

    game_id: str
    favorite_tweets: tuple[TweetRecord, ...]
    underdog_tweets: tuple[TweetRecord, ...]
    match_tweets: tuple[TweetRecord, ...]
    window_start: datetime
    window_end: datetime

    def __post_init__(self):
        seen: set[str] = set()
        for tweet in self.favorite_tweets + self.underdog_tweets + self.match_tweets:
            if tweet.tweet_id in seen:
                raise DuplicateTweetId(f"{self.game_id}: duplicate tweet {tweet.tweet_id}")
            seen.add(tweet.tweet_id)
            if not self.window_start <= tweet.timestamp < self.window_end:
                raise ValidationError(
                    f"{self.game_id}: tweet {tweet.tweet_id} outside the corpus window"
                )


def attribute_tweet(tweet: TweetRecord, tags: TeamTags) -> Attribution:
    """Assign a tweet to exactly one attribution bucket by hashtag match."""
    hashtags = set(tweet.hashtags)
    fav_hit = bool(hashtags & tags.favorite)
    und_hit = bool(hashtags & tags.underdog)
    match_hit = bool(hashtags & tags.match)
    if match_hit or (fav_hit and und_hit):
        return Attribution.MATCH_BOTH
    if fav_hit:
        return Attribution.FAVORITE_FANS
    if und_hit:
        return Attribution.UNDERDOG_FANS
    return Attribution.UNRELATED


def pregame_slice(tweets: Iterable[TweetRecord], kickoff: datetime) -> list[TweetRecord]:
    """Tweets with kickoff - 6h <= t < kickoff, sorted ascending (stable)."""
    start = kickoff - PREGAME_SPAN
    inside = [t for t in tweets if start <= t.timestamp < kickoff]
    inside.sort(key=lambda t: t.timestamp)  # list.sort is stable
    return inside


def volume_filter(
    corpus: GameCorpus,
    min_rate: float = DEFAULT_MIN_RATE,
    semantics: VolumeSemantics = VolumeSemantics.AVERAGE,
) -> bool:
    """True iff both sides clear the per-team-per-hour volume threshold.

    Match-both tweets count toward neither side. Retweets count like any
    other tweet.
    """
    if min_rate < 0:
        raise InvalidConfig(f"min_rate must be >= 0, got {min_rate}")
    hours = (corpus.window_end - corpus.window_start).total_seconds() / 3600.0
    if semantics is VolumeSemantics.AVERAGE:
        need = min_rate * hours
        return len(corpus.favorite_tweets) >= need and len(corpus.underdog_tweets) >= need
    n_buckets = int(hours)
    for side in (corpus.favorite_tweets, corpus.underdog_tweets):
        buckets = [0] * n_buckets
        for tweet in side:
            offset = (tweet.timestamp - corpus.window_start).total_seconds()
            buckets[min(int(offset // 3600.0), n_buckets - 1)] += 1
        if any(count < min_rate for count in buckets):
            return False
    return True


def build_corpus(
    game: GameRecord, tweets: Sequence[TweetRecord], tags: TeamTags
) -> GameCorpus:
    """Slice, attribute and sort the raw tweet stream for one game.

    Unrelated tweets are dropped; duplicate tweet ids anywhere in the
    input are an error. Output is independent of input order.
    """
    seen: set[str] = set()
    for tweet in tweets:
        if tweet.tweet_id in seen:
            raise DuplicateTweetId(f"{game.game_id}: duplicate tweet {tweet.tweet_id}")
        seen.add(tweet.tweet_id)

    sliced = pregame_slice(tweets, game.kickoff)
    buckets: dict[Attribution, list[TweetRecord]] = {
        Attribution.FAVORITE_FANS: [],
        Attribution.UNDERDOG_FANS: [],
        Attribution.MATCH_BOTH: [],
    }
    for tweet in sliced:
        side = attribute_tweet(tweet, tags)
        if side is not Attribution.UNRELATED:
            buckets[side].append(tweet)
    # secondary sort key makes the corpus canonical under input permutation
    key = lambda t: (t.timestamp, t.tweet_id)
    return GameCorpus(
        game_id=game.game_id,
        favorite_tweets=tuple(sorted(buckets[Attribution.FAVORITE_FANS], key=key)),
        underdog_tweets=tuple(sorted(buckets[Attribution.UNDERDOG_FANS], key=key)),
        match_tweets=tuple(sorted(buckets[Attribution.MATCH_BOTH], key=key)),
        window_start=game.kickoff - PREGAME_SPAN,
        window_end=game.kickoff,
    )
