"""Stake allocation, settlement and the repeated betting experiment.

Marginal profit of a betting round is

    P = (r - b) / b

with r the total payoff and b the total money bet, applied once per round
over the summed stakes and returns of all games in it. Profit is bounded
below by -1 (total loss) and is invariant under scaling the unit stake.

The prediction-driven strategy bets the whole unit on the favorite when a
game is predicted Baseline, and splits it evenly between draw and underdog
win when it is predicted Upset. Each betting round re-runs a freshly
seeded stratified cross-validation and bets on every game with its
out-of-fold prediction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domain import ClassLabel, GameRecord, OddsTriple, OutcomeKind
from .errors import (
    InvalidConfig,
    LengthMismatch,
    MissingOutcome,
    UnlabeledGame,
    ZeroTotalStake,
)
from .features import FeatureVector
from .learn import cross_validate


class StakeMode(enum.Enum):
    """How an Upset prediction's stake is split between draw and underdog
    win: an even half/half split, or proportional to implied probability
    (heavier stake on the likelier of the two)."""

    EVEN = "even"
    ODDS_PROPORTIONAL = "odds_proportional"


@dataclass(frozen=True)
class StakeAllocation:
    on_fav: float
    on_draw: float
    on_und: float

    def __post_init__(self):
        if min(self.on_fav, self.on_draw, self.on_und) < 0.0:
            raise InvalidConfig(f"stakes must be non-negative: {self}")

    @property
    def total(self) -> float:
        return self.on_fav + self.on_draw + self.on_und


@dataclass(frozen=True)
class BetSettlement:
    bet: float
    returned: float
    profit: float


@dataclass(frozen=True)
class BettingConfig:
    """Parameters of the repeated betting experiment.

    ``sigma`` is informational only: it documents the minimum return
    multiple the selected games' odds offer for a non-favorite outcome and
    is echoed into reports, but no operation enforces it.
    """

    unit_stake: float = 1.0
    rounds: int = 100
    k: int = 3
    seed: int = 0
    sigma: float = 5.0
    stake_mode: StakeMode = StakeMode.EVEN

    def __post_init__(self):
        if not self.unit_stake > 0:
            raise InvalidConfig(f"unit_stake must be > 0, got {self.unit_stake}")
        if self.rounds < 1:
            raise InvalidConfig(f"rounds must be >= 1, got {self.rounds}")


def strategy_allocate(
    prediction: ClassLabel,
    unit: float = 1.0,
    odds: Optional[OddsTriple] = None,
    mode: StakeMode = StakeMode.EVEN,
) -> StakeAllocation:
    """Allocate one unit according to the predicted class.

    Baseline: the whole unit on the favorite. Upset: the unit split over
    draw and underdog win, evenly by default.
    """
    if not unit > 0:
        raise InvalidConfig(f"unit stake must be > 0, got {unit}")
    if prediction is ClassLabel.BASELINE:
        return StakeAllocation(on_fav=unit, on_draw=0.0, on_und=0.0)
    if mode is StakeMode.ODDS_PROPORTIONAL:
        if odds is None:
            raise InvalidConfig("odds-proportional staking needs the game's odds")
        w_draw = 1.0 / odds.draw
        w_und = 1.0 / odds.und
        share = w_draw / (w_draw + w_und)
        return StakeAllocation(on_fav=0.0, on_draw=unit * share, on_und=unit * (1.0 - share))
    return StakeAllocation(on_fav=0.0, on_draw=unit / 2.0, on_und=unit / 2.0)


def settle(alloc: StakeAllocation, odds: OddsTriple, outcome: OutcomeKind) -> BetSettlement:
    """Pay the stake on the realized outcome at its decimal odds."""
    b = alloc.total
    if b <= 0.0:
        raise ZeroTotalStake("cannot settle a bet with zero total stake")
    stake_on_realized = {
        OutcomeKind.FAVORITE_WIN: alloc.on_fav,
        OutcomeKind.DRAW: alloc.on_draw,
        OutcomeKind.UNDERDOG_WIN: alloc.on_und,
    }[outcome]
    r = stake_on_realized * odds.for_outcome(outcome)
    return BetSettlement(bet=b, returned=r, profit=(r - b) / b)


@dataclass(frozen=True)
class RoundResult:
    round_index: int
    bet: float
    returned: float
    profit: float


@dataclass(frozen=True)
class BettingReport:
    rounds: tuple[RoundResult, ...]
    mean_profit: float
    std_profit: float
    seed: int
    oracle: bool
    odds_reshuffled: bool


def _check_bettable(games: Sequence[GameRecord], features: Sequence[FeatureVector]) -> None:
    if len(games) != len(features):
        raise LengthMismatch(f"{len(games)} games vs {len(features)} feature vectors")
    for game, fv in zip(games, features):
        if game.game_id != fv.game_id:
            raise LengthMismatch(
                f"misaligned inputs: game {game.game_id} vs features {fv.game_id}"
            )
        if game.outcome is None:
            raise MissingOutcome(f"{game.game_id}: cannot settle a game without an outcome")
        if fv.label is None:
            raise UnlabeledGame(f"{game.game_id}: betting experiments need labeled games")


def _run_rounds(
    games: Sequence[GameRecord],
    features: Sequence[FeatureVector],
    cfg: BettingConfig,
    *,
    oracle: bool,
    odds_permutations: Optional[Sequence[np.ndarray]],
) -> BettingReport:
    """Shared engine: per round, obtain predictions, allocate, settle.

    ``odds_permutations`` maps game index -> index of the game whose odds
    are used at settlement; None means identity for every round. Fold
    seeds come from a stream independent of the permutation draw so a
    forced-identity reshuffle reproduces the plain experiment bit-exactly.
    """
    _check_bettable(games, features)
    X = np.asarray([fv.p for fv in features], dtype=float)
    y = [fv.label for fv in features]
    ids = [g.game_id for g in games]
    fold_rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(1)[0])

    results = []
    for round_index in range(cfg.rounds):
        if oracle:
            predictions = list(y)
        else:
            fold_seed = int(fold_rng.integers(2**31))
            report = cross_validate(X, y, k=cfg.k, seed=fold_seed, game_ids=ids)
            by_id = {row.game_id: row.predicted for row in report.predictions}
            predictions = [by_id[gid] for gid in ids]
        perm = (
            odds_permutations[round_index]
            if odds_permutations is not None
            else np.arange(len(games))
        )
        total_bet = 0.0
        total_returned = 0.0
        for i, game in enumerate(games):
            odds = games[int(perm[i])].odds
            alloc = strategy_allocate(
                predictions[i], cfg.unit_stake, odds=odds, mode=cfg.stake_mode
            )
            settlement = settle(alloc, odds, game.outcome)
            total_bet += settlement.bet
            total_returned += settlement.returned
        results.append(
            RoundResult(
                round_index=round_index,
                bet=total_bet,
                returned=total_returned,
                profit=(total_returned - total_bet) / total_bet,
            )
        )
    profits = np.asarray([r.profit for r in results])
    return BettingReport(
        rounds=tuple(results),
        mean_profit=float(profits.mean()),
        std_profit=float(profits.std()),
        seed=cfg.seed,
        oracle=oracle,
        odds_reshuffled=odds_permutations is not None,
    )


def betting_rounds(
    games: Sequence[GameRecord],
    features: Sequence[FeatureVector],
    cfg: BettingConfig,
    *,
    oracle: bool = False,
) -> BettingReport:
    """Run the prediction-driven betting experiment over ``cfg.rounds``
    rounds, each with a freshly seeded stratified CV (unless ``oracle``,
    which bets the true labels)."""
    return _run_rounds(games, features, cfg, oracle=oracle, odds_permutations=None)


def odds_reshuffle_experiment(
    games: Sequence[GameRecord],
    features: Sequence[FeatureVector],
    cfg: BettingConfig,
    *,
    oracle: bool = False,
    permutations: Optional[Sequence[np.ndarray]] = None,
) -> BettingReport:
    """Robustness check: per round, permute the odds-to-game assignment
    uniformly before settlement, leaving labels/features/outcomes alone.

    ``permutations`` (one per round) may be supplied explicitly; by default
    they are drawn from a stream derived from the config seed.
    """
    if permutations is None:
        odds_rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(2)[1])
        permutations = [odds_rng.permutation(len(games)) for _ in range(cfg.rounds)]
    if len(permutations) != cfg.rounds:
        raise InvalidConfig(f"need {cfg.rounds} permutations, got {len(permutations)}")
    return _run_rounds(games, features, cfg, oracle=oracle, odds_permutations=permutations)


class FixedStrategy(enum.Enum):
    """The four systematic baseline strategies, applied identically to
    every game regardless of any prediction."""

    FAV_WINS = "fav_wins"          # whole unit on the favorite
    FAV_NOT_WIN = "fav_not_win"    # half on draw, half on underdog
    FAV_LOSES = "fav_loses"        # whole unit on the underdog
    TIE = "tie"                    # whole unit on the draw


_FIXED_ALLOCATIONS = {
    FixedStrategy.FAV_WINS: lambda u: StakeAllocation(u, 0.0, 0.0),
    FixedStrategy.FAV_NOT_WIN: lambda u: StakeAllocation(0.0, u / 2.0, u / 2.0),
    FixedStrategy.FAV_LOSES: lambda u: StakeAllocation(0.0, 0.0, u),
    FixedStrategy.TIE: lambda u: StakeAllocation(0.0, u, 0.0),
}


@dataclass(frozen=True)
class FixedStrategyReport:
    strategy: FixedStrategy
    per_game_profit: tuple[float, ...]
    mean_profit: float
    std_profit: float


def fixed_strategy_eval(
    games: Sequence[GameRecord], strategy: FixedStrategy, unit: float = 1.0
) -> FixedStrategyReport:
    """Per-game marginal profit of one fixed strategy, with its mean and
    standard deviation across the games."""
    profits = []
    for game in games:
        if game.outcome is None:
            raise MissingOutcome(f"{game.game_id}: cannot settle a game without an outcome")
        alloc = _FIXED_ALLOCATIONS[strategy](unit)
        profits.append(settle(alloc, game.odds, game.outcome).profit)
    arr = np.asarray(profits)
    return FixedStrategyReport(
        strategy=strategy,
        per_game_profit=tuple(profits),
        mean_profit=float(arr.mean()),
        std_profit=float(arr.std()),
    )
