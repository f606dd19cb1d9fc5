"""Gaussian Naive Bayes over the p-value features, with stratified
cross-validation, classification metrics and the label-reshuffle null model.

Everything randomized takes an explicit integer seed and is reproducible
bit-for-bit. The positive class throughout is ``ClassLabel.UPSET``;
prediction is argmax posterior with exact ties resolved to Baseline
(betting on the favorite is the conservative default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domain import ClassLabel
from .errors import (
    DimensionMismatch,
    InvalidConfig,
    KTooLarge,
    LengthMismatch,
    MissingClass,
    ValidationError,
)

#: Canonical class order used for priors/means/variances arrays.
CLASS_ORDER = (ClassLabel.BASELINE, ClassLabel.UPSET)

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GnbModel:
    """Per-class Gaussian parameters and class priors.

    Variances are population variances floored at
    max(1e-9 * max overall feature variance, 1e-12) so that a feature that
    is constant within a class (common when many windows are degenerate at
    p = 1.0) cannot produce a singular Gaussian.
    """

    classes: tuple[ClassLabel, ...]
    priors: np.ndarray      # shape (n_classes,)
    means: np.ndarray       # shape (n_classes, n_features)
    variances: np.ndarray   # shape (n_classes, n_features)

    @property
    def n_features(self) -> int:
        return self.means.shape[1]


def gnb_fit(X: np.ndarray, y: Sequence[ClassLabel]) -> GnbModel:
    """Fit per-class feature means/variances and frequency priors.

    Requires at least one example of every class in ``CLASS_ORDER``.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch(f"feature matrix must be 2-D, got shape {X.shape}")
    if X.shape[0] != len(y):
        raise LengthMismatch(f"{X.shape[0]} rows vs {len(y)} labels")
    y_arr = np.asarray([CLASS_ORDER.index(label) for label in y])
    counts = np.bincount(y_arr, minlength=len(CLASS_ORDER))
    if (counts == 0).any():
        missing = [c.value for c, n in zip(CLASS_ORDER, counts) if n == 0]
        raise MissingClass(f"no training examples for class(es): {missing}")

    overall_var = X.var(axis=0).max() if X.shape[0] > 1 else 0.0
    var_floor = max(1e-9 * float(overall_var), 1e-12)

    means = np.vstack([X[y_arr == k].mean(axis=0) for k in range(len(CLASS_ORDER))])
    variances = np.vstack(
        [np.maximum(X[y_arr == k].var(axis=0), var_floor) for k in range(len(CLASS_ORDER))]
    )
    priors = counts / counts.sum()
    return GnbModel(classes=CLASS_ORDER, priors=priors, means=means, variances=variances)


def gnb_predict_proba(model: GnbModel, x: Sequence[float]) -> np.ndarray:
    """Posterior over ``model.classes`` for one feature vector.

    Computed in log space and normalized with log-sum-exp; the output sums
    to 1 (within 1e-12) and is invariant under scaling all priors by a
    positive constant.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (model.n_features,):
        raise DimensionMismatch(
            f"expected feature vector of length {model.n_features}, got shape {x.shape}"
        )
    log_lik = -0.5 * (
        _LOG_2PI + np.log(model.variances) + (x - model.means) ** 2 / model.variances
    ).sum(axis=1)
    log_post = np.log(model.priors) + log_lik
    log_post -= log_post.max()
    post = np.exp(log_post)
    return post / post.sum()


def predict_label(model: GnbModel, x: Sequence[float]) -> ClassLabel:
    """Argmax posterior; an exact tie goes to Baseline."""
    post = gnb_predict_proba(model, x)
    upset_idx = model.classes.index(ClassLabel.UPSET)
    baseline_idx = model.classes.index(ClassLabel.BASELINE)
    return ClassLabel.UPSET if post[upset_idx] > post[baseline_idx] else ClassLabel.BASELINE


def stratified_kfold(labels: Sequence[ClassLabel], k: int, seed: int) -> np.ndarray:
    """Deterministic stratified fold assignment.

    Members of each class are shuffled with the seeded generator, then
    dealt round-robin into folds, continuing the dealing position across
    classes so fold sizes stay balanced. Per fold and class, the count
    differs from the exact proportional share by less than 1.
    """
    n = len(labels)
    if k < 1:
        raise InvalidConfig(f"k must be >= 1, got {k}")
    if k > n:
        raise KTooLarge(f"k={k} folds for only {n} examples")
    rng = np.random.default_rng(seed)
    folds = np.empty(n, dtype=int)
    position = 0
    for cls in CLASS_ORDER:
        members = np.flatnonzero(np.asarray([label is cls for label in labels]))
        if members.size == 0:
            continue
        rng.shuffle(members)
        for j, idx in enumerate(members):
            folds[idx] = (position + j) % k
        position = (position + members.size) % k
    return folds


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    auroc: float


@dataclass(frozen=True)
class PredictionRow:
    game_id: str
    score: float  # posterior probability of Upset
    predicted: ClassLabel
    actual: ClassLabel
    fold: int


@dataclass(frozen=True)
class CvReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    auroc: float
    per_fold: tuple[Metrics, ...]
    fold_assignment: dict[str, int]
    seed: int
    predictions: tuple[PredictionRow, ...]

    @property
    def pooled(self) -> Metrics:
        return Metrics(self.accuracy, self.precision, self.recall, self.f1, self.auroc)


def _auroc_pair_counting(scores: Sequence[float], labels: Sequence[ClassLabel]) -> float:
    """AUROC by explicit pair counting, ties worth 0.5.

    Degenerate when one class is absent; reported as 0.5 in that case.
    """
    pos = [s for s, l in zip(scores, labels) if l is ClassLabel.UPSET]
    neg = [s for s, l in zip(scores, labels) if l is ClassLabel.BASELINE]
    if not pos or not neg:
        return 0.5
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def classification_metrics(
    predictions: Sequence[ClassLabel],
    scores: Sequence[float],
    labels: Sequence[ClassLabel],
    positive: ClassLabel = ClassLabel.UPSET,
) -> Metrics:
    """Accuracy/precision/recall/F1 with Upset as the positive class, and
    pair-counting AUROC over the positive-class scores."""
    if not (len(predictions) == len(scores) == len(labels)):
        raise LengthMismatch(
            f"got {len(predictions)} predictions, {len(scores)} scores, {len(labels)} labels"
        )
    n = len(labels)
    if n == 0:
        raise LengthMismatch("metrics need at least one example")
    tp = sum(1 for p, l in zip(predictions, labels) if p is positive and l is positive)
    fp = sum(1 for p, l in zip(predictions, labels) if p is positive and l is not positive)
    fn = sum(1 for p, l in zip(predictions, labels) if p is not positive and l is positive)
    correct = sum(1 for p, l in zip(predictions, labels) if p is l)
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return Metrics(
        accuracy=correct / n,
        precision=precision,
        recall=recall,
        f1=f1,
        auroc=_auroc_pair_counting(scores, labels),
    )


def cross_validate(
    X: np.ndarray,
    y: Sequence[ClassLabel],
    k: int = 3,
    seed: int = 0,
    game_ids: Optional[Sequence[str]] = None,
) -> CvReport:
    """Stratified k-fold CV of the Gaussian NB classifier.

    Headline metrics are computed on the pooled out-of-fold predictions
    (one confusion matrix over all games); per-fold metrics are reported
    alongside.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if len(y) != n:
        raise LengthMismatch(f"{n} rows vs {len(y)} labels")
    ids = list(game_ids) if game_ids is not None else [str(i) for i in range(n)]
    if len(ids) != n:
        raise LengthMismatch(f"{n} rows vs {len(ids)} game ids")
    if len(set(ids)) != n:
        raise ValidationError("game ids must be unique")
    order = {gid: i for i, gid in enumerate(ids)}
    folds = stratified_kfold(y, k, seed)

    upset_idx = CLASS_ORDER.index(ClassLabel.UPSET)
    rows: list[PredictionRow] = []
    per_fold: list[Metrics] = []
    for f in range(k):
        test = np.flatnonzero(folds == f)
        train = np.flatnonzero(folds != f)
        if train.size == 0:  # k == 1: no held-out split, fit and score in-sample
            train = test
        model = gnb_fit(X[train], [y[i] for i in train])
        fold_rows = []
        for i in test:
            post = gnb_predict_proba(model, X[i])
            score = float(post[upset_idx])
            predicted = predict_label(model, X[i])
            fold_rows.append(
                PredictionRow(game_id=ids[i], score=score, predicted=predicted,
                              actual=y[i], fold=f)
            )
        rows.extend(fold_rows)
        per_fold.append(
            classification_metrics(
                [r.predicted for r in fold_rows],
                [r.score for r in fold_rows],
                [r.actual for r in fold_rows],
            )
        )
    rows.sort(key=lambda r: order[r.game_id])
    pooled = classification_metrics(
        [r.predicted for r in rows], [r.score for r in rows], [r.actual for r in rows]
    )
    return CvReport(
        accuracy=pooled.accuracy,
        precision=pooled.precision,
        recall=pooled.recall,
        f1=pooled.f1,
        auroc=pooled.auroc,
        per_fold=tuple(per_fold),
        fold_assignment={ids[i]: int(folds[i]) for i in range(n)},
        seed=seed,
        predictions=tuple(rows),
    )


@dataclass(frozen=True)
class ReshuffleReport:
    rounds: int
    seed: int
    mean: Metrics
    std: Metrics
    per_round: tuple[Metrics, ...]


def reshuffle_labels_experiment(
    X: np.ndarray,
    y: Sequence[ClassLabel],
    rounds: int,
    seed: int,
    k: int = 3,
) -> ReshuffleReport:
    """Null model: permute the class labels uniformly each round, rerun the
    cross-validation, and aggregate the metrics over rounds.

    With the label-feature link broken, scores collapse toward chance.
    """
    if rounds < 1:
        raise InvalidConfig(f"rounds must be >= 1, got {rounds}")
    master = np.random.default_rng(seed)
    y = list(y)
    per_round: list[Metrics] = []
    for _ in range(rounds):
        perm = master.permutation(len(y))
        fold_seed = int(master.integers(2**31))
        shuffled = [y[i] for i in perm]
        report = cross_validate(X, shuffled, k=k, seed=fold_seed)
        per_round.append(report.pooled)

    def agg(fn) -> Metrics:
        return Metrics(*(float(fn([getattr(m, f) for m in per_round]))
                         for f in ("accuracy", "precision", "recall", "f1", "auroc")))

    return ReshuffleReport(
        rounds=rounds,
        seed=seed,
        mean=agg(np.mean),
        std=agg(np.std),
        per_round=tuple(per_round),
    )
