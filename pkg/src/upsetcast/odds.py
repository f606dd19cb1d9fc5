"""Upset scoring from bookmaker odds.

A game's *potential upset* score measures how unbalanced the bookmakers
deem it: the net payout of the least likely outcome relative to the most
likely one,

    PU = (O_max - 1) / (O_min - 1).

The *upset* score applies the same ratio to the outcome that actually
materialized,

    U = (O_realized - 1) / (O_min - 1),

so U == 1 when the minimum-odds outcome happens and U == PU when the
maximum-odds outcome does. Games with PU above a threshold ``theta`` are
*potential upsets*; those whose realized U also exceeds ``theta`` are
*upsets*, the rest are *baseline* games.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .domain import ClassLabel, GameRecord, OddsTriple, OutcomeKind
from .errors import EmptyList, InvalidConfig, MissingOutcome


@dataclass(frozen=True)
class SelectionConfig:
    """Threshold configuration for potential-upset selection."""

    theta: float = 5.0

    def __post_init__(self):
        if not self.theta > 1.0:
            raise InvalidConfig(f"theta must be > 1, got {self.theta!r}")


@dataclass(frozen=True)
class ScoredGame:
    """A game with its derived PU score and, when the outcome is known,
    its U score and class label."""

    game: GameRecord
    pu: float
    u: Optional[float] = None
    label: Optional[ClassLabel] = None


def potential_upset_score(odds: OddsTriple) -> float:
    """Relative likelihood of the most likely outcome to the least likely.

    Always >= 1; equals 1 only when all three odds coincide.
    """
    return (odds.max_odds - 1.0) / (odds.min_odds - 1.0)


def upset_score(odds: OddsTriple, outcome: OutcomeKind) -> float:
    """How unexpected the realized outcome was, on the same scale as PU."""
    return (odds.for_outcome(outcome) - 1.0) / (odds.min_odds - 1.0)


def score_game(game: GameRecord, cfg: SelectionConfig = SelectionConfig()) -> ScoredGame:
    """Attach PU, and U plus label when the game has a recorded outcome."""
    pu = potential_upset_score(game.odds)
    if game.outcome is None:
        return ScoredGame(game=game, pu=pu)
    u = upset_score(game.odds, game.outcome)
    label = ClassLabel.UPSET if u > cfg.theta else ClassLabel.BASELINE
    return ScoredGame(game=game, pu=pu, u=u, label=label)


def select_potential_upsets(
    games: Sequence[GameRecord], cfg: SelectionConfig = SelectionConfig()
) -> list[ScoredGame]:
    """Keep exactly the games whose PU score strictly exceeds theta.

    Order is preserved; selection is strict, so a game at PU == theta is
    not selected.
    """
    return [sg for sg in (score_game(g, cfg) for g in games) if sg.pu > cfg.theta]


def label_game(scored: ScoredGame, cfg: SelectionConfig = SelectionConfig()) -> ClassLabel:
    """Upset iff U > theta (strict); Baseline otherwise.

    Raises ``MissingOutcome`` for games that have not been played yet.
    """
    if scored.u is None:
        raise MissingOutcome(f"{scored.game.game_id}: no recorded outcome to label")
    return ClassLabel.UPSET if scored.u > cfg.theta else ClassLabel.BASELINE


def average_odds(per_bookmaker: Sequence[OddsTriple]) -> OddsTriple:
    """Component-wise arithmetic mean of several bookmakers' odds."""
    if not per_bookmaker:
        raise EmptyList("cannot average an empty list of odds")
    n = len(per_bookmaker)
    return OddsTriple(
        fav=sum(o.fav for o in per_bookmaker) / n,
        draw=sum(o.draw for o in per_bookmaker) / n,
        und=sum(o.und for o in per_bookmaker) / n,
    )


def relabel(scored: ScoredGame, cfg: SelectionConfig) -> ScoredGame:
    """Return a copy labeled under a different threshold."""
    return replace(scored, label=label_game(scored, cfg))
