"""In-game exploratory signals: per-minute volume and mood, event
annotation, and within/between fan-group interaction counts.

These feed plot-ready CSVs; none of it enters the predictor, which uses
pre-game data only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from datetime import datetime, timedelta
from typing import Iterable, Optional, Sequence

from .domain import TweetRecord
from .errors import EventOutOfRange, OverlappingGroups, ValidationError
from .ingest import Attribution, GameCorpus

DEFAULT_DURATION_MIN = 120


class EventKind(enum.Enum):
    GOAL_SCORED = "goal_scored"
    PENALTY_SCORED = "penalty_scored"
    YELLOW_CARD = "yellow_card"
    RED_CARD = "red_card"


@dataclass(frozen=True)
class MatchEvent:
    minute: int
    kind: EventKind
    team: str

    def __post_init__(self):
        if not 0 <= self.minute <= 120:
            raise EventOutOfRange(f"event minute {self.minute} outside [0, 120]")


@dataclass(frozen=True)
class MinuteBucket:
    """One minute of the game: per-faction volume and mean sentiment.

    Means are None (absent) for empty buckets rather than 0, so plots can
    show gaps instead of fake neutral points.
    """

    minute: int
    fav_count: int
    und_count: int
    fav_mean: Optional[float]
    und_mean: Optional[float]
    events: tuple[MatchEvent, ...] = ()


def minute_series(
    entries: Iterable[tuple[datetime, Attribution, float]],
    kickoff: datetime,
    duration_min: int = DEFAULT_DURATION_MIN,
) -> list[MinuteBucket]:
    """Bucket scored, attributed tweets into 1-minute bins from kickoff.

    Entries outside [kickoff, kickoff + duration) or not attributed to a
    single faction are ignored.
    """
    counts = {side: [0] * duration_min for side in ("fav", "und")}
    sums = {side: [0.0] * duration_min for side in ("fav", "und")}
    end = kickoff + timedelta(minutes=duration_min)
    for timestamp, side, score in entries:
        if not kickoff <= timestamp < end:
            continue
        if side is Attribution.FAVORITE_FANS:
            key = "fav"
        elif side is Attribution.UNDERDOG_FANS:
            key = "und"
        else:
            continue
        minute = int((timestamp - kickoff).total_seconds() // 60)
        counts[key][minute] += 1
        sums[key][minute] += score

    buckets = []
    for m in range(duration_min):
        fav_n, und_n = counts["fav"][m], counts["und"][m]
        buckets.append(
            MinuteBucket(
                minute=m,
                fav_count=fav_n,
                und_count=und_n,
                fav_mean=sums["fav"][m] / fav_n if fav_n else None,
                und_mean=sums["und"][m] / und_n if und_n else None,
            )
        )
    return buckets


def annotate_events(
    series: Sequence[MinuteBucket], events: Sequence[MatchEvent]
) -> list[MinuteBucket]:
    """Attach each event to its minute bucket, preserving input order.

    An event at exactly the series duration (stoppage at the final whistle)
    folds into the last bucket; anything past that is out of range.
    """
    duration = len(series)
    attached: dict[int, list[MatchEvent]] = {}
    for event in events:
        if event.minute > duration:
            raise EventOutOfRange(
                f"event at minute {event.minute} beyond the {duration}-minute series"
            )
        attached.setdefault(min(event.minute, duration - 1), []).append(event)
    return [
        replace(bucket, events=bucket.events + tuple(attached.get(bucket.minute, ())))
        for bucket in series
    ]


@dataclass(frozen=True)
class InteractionCounts:
    """Retweet (RT) and mention (MT) flows within and between the favorite
    (F) and underdog (U) fan groups; e.g. UFMT counts mentions from
    underdog-group users to favorite-group users."""

    ffrt: int = 0
    ffmt: int = 0
    furt: int = 0
    fumt: int = 0
    uurt: int = 0
    uumt: int = 0
    ufrt: int = 0
    ufmt: int = 0


def fan_groups(corpus: GameCorpus) -> tuple[frozenset[str], frozenset[str]]:
    """Users who tweeted exclusively on one side.

    Anyone who also posted for the other side or about the match itself
    belongs to neither group.
    """
    fav = {t.user_id for t in corpus.favorite_tweets}
    und = {t.user_id for t in corpus.underdog_tweets}
    both = {t.user_id for t in corpus.match_tweets}
    return frozenset(fav - und - both), frozenset(und - fav - both)


def interaction_counts(
    tweets: Iterable[TweetRecord],
    fav_users: frozenset[str],
    und_users: frozenset[str],
) -> InteractionCounts:
    """Count retweets and mentions between the two fan groups.

    A retweet counts once; mentions count once per mentioned in-group user
    (a tweet mentioning two favorite fans adds 2). Interactions touching
    users outside both groups are ignored.
    """
    overlap = fav_users & und_users
    if overlap:
        raise OverlappingGroups(f"users in both groups: {sorted(overlap)[:5]}")

    def group_of(user: str) -> Optional[str]:
        if user in fav_users:
            return "f"
        if user in und_users:
            return "u"
        return None

    tally = {k: 0 for k in ("ffrt", "ffmt", "furt", "fumt", "uurt", "uumt", "ufrt", "ufmt")}
    for tweet in tweets:
        src = group_of(tweet.user_id)
        if src is None:
            continue
        if tweet.retweeted_user is not None:
            dst = group_of(tweet.retweeted_user)
            if dst is not None:
                tally[f"{src}{dst}rt"] += 1
        for mentioned in tweet.mentioned_users:
            dst = group_of(mentioned)
            if dst is not None:
                tally[f"{src}{dst}mt"] += 1
    return InteractionCounts(**tally)
