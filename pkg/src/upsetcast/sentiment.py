"""Sentiment scoring in [0, 1] with a pluggable scorer and a neutral band.

Scores are plain floats in [0, 1]; 0.5 is the no-evidence midpoint. Two
scorers are provided:

* ``LexiconScorer`` — averages per-token valences in [-1, 1] and maps the
  mean onto [0, 1]; deterministic and dependency-free.
* ``PassthroughScorer`` — returns the score already stored on the tweet
  (e.g. produced offline by an external sentiment service).

Polarity classification uses an inclusive neutral band, default [0.3, 0.7].
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .domain import TweetRecord
from .errors import EmptyCorpus, InvalidConfig, MissingPrecomputedScore

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class Polarity(enum.Enum):
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    POSITIVE = "positive"


@dataclass(frozen=True)
class NeutralBand:
    """Scores in [low, high] (inclusive on both ends) count as neutral."""

    low: float = 0.3
    high: float = 0.7

    def __post_init__(self):
        if not (0.0 <= self.low < self.high <= 1.0):
            raise InvalidConfig(f"neutral band must satisfy 0 <= low < high <= 1, got {self}")


@dataclass(frozen=True)
class LexiconScorer:
    """Valence-lexicon scorer.

    Tokenizes on non-alphanumeric boundaries after lowercasing, averages
    the valences of matched tokens (0 when nothing matches) and returns
    (mean + 1) / 2, which lands in [0, 1].
    """

    valences: Mapping[str, float]

    def __post_init__(self):
        for token, valence in self.valences.items():
            if not -1.0 <= valence <= 1.0:
                raise InvalidConfig(f"lexicon valence for {token!r} outside [-1, 1]: {valence}")

    def score_text(self, text: str) -> float:
        tokens = _TOKEN_RE.findall(text.lower())
        matched = [self.valences[t] for t in tokens if t in self.valences]
        mean = sum(matched) / len(matched) if matched else 0.0
        return (mean + 1.0) / 2.0

    def score_tweet(self, tweet: TweetRecord) -> float:
        return self.score_text(tweet.text)


@dataclass(frozen=True)
class PassthroughScorer:
    """Returns the precomputed score stored on each tweet, unmodified."""

    def score_text(self, text: str) -> float:
        raise MissingPrecomputedScore("passthrough scorer cannot score bare text")

    def score_tweet(self, tweet: TweetRecord) -> float:
        if tweet.precomputed_sentiment is None:
            raise MissingPrecomputedScore(
                f"{tweet.tweet_id}: no precomputed sentiment score present"
            )
        return tweet.precomputed_sentiment


Scorer = Union[LexiconScorer, PassthroughScorer]


def score_text(text: str, scorer: Scorer) -> float:
    return scorer.score_text(text)


def score_tweet(tweet: TweetRecord, scorer: Scorer) -> float:
    return scorer.score_tweet(tweet)


def classify_polarity(score: float, band: NeutralBand = NeutralBand()) -> Polarity:
    """Negative below the band, neutral inside it (inclusive), positive above."""
    if score < band.low:
        return Polarity.NEGATIVE
    if score > band.high:
        return Polarity.POSITIVE
    return Polarity.NEUTRAL


def benchmark_scorer(
    corpus: Sequence[tuple[str, Polarity]],
    scorer: Scorer,
    band: NeutralBand = NeutralBand(),
) -> float:
    """Fraction of texts whose predicted polarity matches the gold label."""
    if not corpus:
        raise EmptyCorpus("benchmark corpus is empty")
    hits = sum(
        1 for text, gold in corpus if classify_polarity(scorer.score_text(text), band) is gold
    )
    return hits / len(corpus)
