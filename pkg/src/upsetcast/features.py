"""Per-window sentiment-gap features.

The 6-hour pre-game slice is broken into 12 contiguous half-open 30-minute
windows; window 12 ends exactly at kickoff. For each window the feature is
the two-sided Mann-Whitney p-value between the favorite-side and
underdog-side sentiment score samples, collected into the 12-vector that
the classifier consumes. Windows where either side has too few tweets are
degenerate and contribute p = 1.0 (no evidence of a gap).

Match-both tweets never enter the features.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Mapping, Optional, Sequence

from .domain import ClassLabel, TweetRecord
from .errors import CorpusNotFiltered, UnlabeledGame, ValidationError
from .ingest import GameCorpus, VolumeSemantics, volume_filter
from .stats import DEFAULT_EXACT_CUTOFF, mann_whitney_u

WINDOW_COUNT = 12
WINDOW_SPAN = timedelta(minutes=30)

#: Minimum tweets per side per window for the U test to run at all.
DEFAULT_MIN_PER_WINDOW = 3


@dataclass(frozen=True)
class Window:
    """Window i in 1..12 spans [kickoff - (13-i)*30min, kickoff - (12-i)*30min)."""

    index: int
    start: datetime
    end: datetime


def window_partition(kickoff: datetime) -> list[Window]:
    """Twelve contiguous non-overlapping 30-minute windows tiling the
    6-hour pre-game slice; window 12 ends exactly at kickoff."""
    windows = []
    for i in range(1, WINDOW_COUNT + 1):
        start = kickoff - (13 - i) * WINDOW_SPAN
        windows.append(Window(index=i, start=start, end=start + WINDOW_SPAN))
    return windows


@dataclass(frozen=True)
class FeatureVector:
    """P(g): the 12 per-window p-values, with per-side sample counts.

    A window whose count on either side is below the extraction minimum is
    degenerate; its p is pinned at 1.0 and the counts reveal it.
    """

    game_id: str
    p: tuple[float, ...]
    counts_fav: tuple[int, ...]
    counts_und: tuple[int, ...]
    label: Optional[ClassLabel] = None

    def __post_init__(self):
        for name, seq in (("p", self.p), ("counts_fav", self.counts_fav),
                          ("counts_und", self.counts_und)):
            if len(seq) != WINDOW_COUNT:
                raise ValidationError(f"{self.game_id}: {name} must have length {WINDOW_COUNT}")
        if any(not 0.0 < v <= 1.0 for v in self.p):
            raise ValidationError(f"{self.game_id}: p-values must lie in (0, 1]")


def _window_samples(
    tweets: Sequence[TweetRecord],
    scores: Mapping[str, float],
    window_start: datetime,
    game_id: str,
) -> list[list[float]]:
    per_window: list[list[float]] = [[] for _ in range(WINDOW_COUNT)]
    span = WINDOW_SPAN.total_seconds()
    for tweet in tweets:
        if tweet.tweet_id not in scores:
            raise ValidationError(f"{game_id}: no sentiment score for tweet {tweet.tweet_id}")
        offset = (tweet.timestamp - window_start).total_seconds()
        per_window[int(offset // span)].append(scores[tweet.tweet_id])
    return per_window


def feature_vector(
    corpus: GameCorpus,
    scores: Mapping[str, float],
    *,
    label: Optional[ClassLabel] = None,
    min_per_window: int = DEFAULT_MIN_PER_WINDOW,
    exact_cutoff: int = DEFAULT_EXACT_CUTOFF,
    volume_min_rate: float = 40.0,
    volume_semantics: VolumeSemantics = VolumeSemantics.AVERAGE,
) -> FeatureVector:
    """Build P(g) for one game from its corpus and per-tweet scores.

    The corpus must pass the volume filter under the given settings;
    handing in an unfiltered corpus raises ``CorpusNotFiltered``.
    """
    if not volume_filter(corpus, volume_min_rate, volume_semantics):
        raise CorpusNotFiltered(f"{corpus.game_id}: corpus fails the volume filter")
    fav = _window_samples(corpus.favorite_tweets, scores, corpus.window_start, corpus.game_id)
    und = _window_samples(corpus.underdog_tweets, scores, corpus.window_start, corpus.game_id)
    p_values = []
    for i in range(WINDOW_COUNT):
        if len(fav[i]) < min_per_window or len(und[i]) < min_per_window:
            p_values.append(1.0)
        else:
            p_values.append(mann_whitney_u(fav[i], und[i], exact_cutoff).p_value)
    return FeatureVector(
        game_id=corpus.game_id,
        p=tuple(p_values),
        counts_fav=tuple(len(w) for w in fav),
        counts_und=tuple(len(w) for w in und),
        label=label,
    )


@dataclass(frozen=True)
class WindowSignificance:
    """How many games of each class pass p < alpha in one window."""

    window: int
    upset_pass: int
    upset_total: int
    baseline_pass: int
    baseline_total: int


def significance_table(
    features: Sequence[FeatureVector], alpha: float = 1e-4
) -> list[WindowSignificance]:
    """Per-window pass counts (p_i < alpha, strict) split by class label."""
    for fv in features:
        if fv.label is None:
            raise UnlabeledGame(f"{fv.game_id}: significance table needs labeled games")
    rows = []
    for i in range(WINDOW_COUNT):
        upset = [fv for fv in features if fv.label is ClassLabel.UPSET]
        baseline = [fv for fv in features if fv.label is ClassLabel.BASELINE]
        rows.append(
            WindowSignificance(
                window=i + 1,
                upset_pass=sum(1 for fv in upset if fv.p[i] < alpha),
                upset_total=len(upset),
                baseline_pass=sum(1 for fv in baseline if fv.p[i] < alpha),
                baseline_total=len(baseline),
            )
        )
    return rows
