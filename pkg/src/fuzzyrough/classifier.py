"""Fuzzy-rough classification with configurable aggregation.

A test instance is assigned to the class whose lower approximation it belongs
to most. For a crisp class C the lower approximation reduces to aggregating
1 - R(x, y) over the training instances y outside C, and the choice of
aggregation operator is what distinguishes the strategies:

  min / avg / owa    plain minimum, mean, or quantifier-weighted OWA
  mino / avgo / owao the same after discarding crisply labeled outliers
  fr                 Choquet integral w.r.t. the fuzzy removal measure
  wowa               Choquet integral w.r.t. the confidence-weighted measure
  ts                 Choquet integral w.r.t. the two-block ordered measure
  comb               leave-one-out selection among the nine above

All outlier-aware strategies consume per-class normalized outlier scores; the
measures are rebuilt on each aggregated subset so their weights always live
on the universe actually being aggregated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import connectives
from .approx import attribute_scales, similarity_matrix, similarity_to_test
from .choquet import choquet_integral, owa_values
from .data import DecisionSystem
from .measures import FuzzyRemovalMeasure, OrderedTwoSymmetricMeasure, WowaMeasure
from .outliers import OutlierScores, scored_with_labels
from .quantifiers import (
    AdditiveQuantifier,
    QuadraticQuantifier,
    RIMQuantifier,
    weights_from_quantifier,
)
from .sets import DomainError

AGGREGATOR_KINDS = ("min", "mino", "fr", "avg", "avgo", "ts", "owa", "owao", "wowa", "comb")
BASE_KINDS = AGGREGATOR_KINDS[:-1]
DISPLAY_NAMES = {
    "min": "Min", "mino": "Mino", "fr": "FR", "avg": "Avg", "avgo": "Avgo",
    "ts": "TS", "owa": "OWA", "owao": "OWAo", "wowa": "WOWA", "comb": "COMB",
}

_quantifier_cache: dict = {}


@dataclass(frozen=True)
class AggregatorSpec:
    """Aggregation strategy plus every knob it may consume."""

    kind: str = "owa"
    quantifier: str = "additive"  # "additive" (length-matched) or "quadratic"
    alpha: float = 0.3
    beta: float = 0.9
    t: float = 0.3
    contamination: float = 0.1
    tnorm: str = connectives.MINIMUM
    lof_k: int = 20

    def __post_init__(self):
        if self.kind not in AGGREGATOR_KINDS:
            raise DomainError(f"unknown aggregator {self.kind!r}; known: {AGGREGATOR_KINDS}")
        if self.quantifier not in ("additive", "quadratic"):
            raise DomainError("quantifier must be 'additive' or 'quadratic'")
        if not 0.0 <= self.t <= 1.0:
            raise DomainError("t must lie in [0, 1]")
        if not 0.0 <= self.contamination < 1.0:
            raise DomainError("contamination must lie in [0, 1)")
        if self.lof_k < 1:
            raise DomainError("lof_k must be at least 1")

    @property
    def display_name(self) -> str:
        return DISPLAY_NAMES[self.kind]

    def quantifier_for(self, n: int) -> RIMQuantifier:
        if self.quantifier == "quadratic":
            key = ("quadratic", self.alpha, self.beta)
        else:
            key = ("additive", n)
        q = _quantifier_cache.get(key)
        if q is None:
            q = (QuadraticQuantifier(self.alpha, self.beta) if key[0] == "quadratic"
                 else AdditiveQuantifier(n))
            _quantifier_cache[key] = q
        return q


def default_specs() -> list[AggregatorSpec]:
    """One spec per aggregation strategy at the evaluation-protocol defaults."""
    return [AggregatorSpec(kind=k) for k in AGGREGATOR_KINDS]


def _subset_outlier_mask(o_sub: np.ndarray, contamination: float) -> np.ndarray:
    n = o_sub.size
    count = math.ceil(contamination * n)
    mask = np.zeros(n, dtype=bool)
    if count:
        order = np.lexsort((np.arange(n), -o_sub))
        mask[order[:count]] = True
    return mask


def aggregate(values, o_sub, spec: AggregatorSpec, outliers=None) -> float:
    """Aggregate a vector of degrees under one strategy.

    ``o_sub`` holds the outlier degrees of the aggregated elements; for the
    crisp-exclusion strategies ``outliers`` may pass precomputed labels,
    otherwise the contamination rule is applied to the subset itself. When
    exclusion would empty the subset the unrestricted variant is used.
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise DomainError("cannot aggregate an empty value vector")
    o_sub = np.asarray(o_sub, dtype=float).ravel()
    if o_sub.shape != values.shape:
        raise DomainError("outlier degrees must align with the values")
    kind = spec.kind
    n = values.size

    if kind == "min":
        return float(values.min())
    if kind == "avg":
        return float(values.mean())
    if kind == "owa":
        w = weights_from_quantifier(spec.quantifier_for(n), n)
        return owa_values(values, w)

    if kind in ("mino", "avgo", "owao"):
        if outliers is None:
            outliers = _subset_outlier_mask(o_sub, spec.contamination)
        keep = ~np.asarray(outliers, dtype=bool)
        if not keep.any():
            return aggregate(values, o_sub, replace(spec, kind=kind[:-1]))
        kept = values[keep]
        if kind == "mino":
            return float(kept.min())
        if kind == "avgo":
            return float(kept.mean())
        w = weights_from_quantifier(spec.quantifier_for(kept.size), kept.size)
        return owa_values(kept, w)

    if kind == "fr":
        return choquet_integral(values, FuzzyRemovalMeasure(o_sub, spec.tnorm))
    if kind == "wowa":
        return choquet_integral(values, WowaMeasure(spec.quantifier_for(n), o_sub))
    if kind == "ts":
        mu = OrderedTwoSymmetricMeasure(spec.quantifier_for(n), o_sub,
                                        spec.t, spec.contamination)
        return choquet_integral(values, mu)
    raise DomainError("comb must be resolved to a concrete strategy before aggregation")


@dataclass(frozen=True)
class FittedModel:
    train: DecisionSystem
    sigmas: np.ndarray = field(repr=False)
    classes: tuple
    class_masks: dict = field(repr=False)
    scores: OutlierScores = field(repr=False)
    spec: AggregatorSpec = None
    resolved: AggregatorSpec = None
    similarity: np.ndarray = field(default=None, repr=False)


class _FoldContext:
    """Shares the expensive per-training-fold computations across specs."""

    def __init__(self, train: DecisionSystem):
        if len(train.classes) < 2:
            raise DomainError("training data must contain at least two classes")
        if train.n < 2:
            raise DomainError("training data must contain at least two instances")
        self.train = train
        self.sigmas = attribute_scales(train)
        self.similarity = similarity_matrix(train.X, self.sigmas)
        self.classes = train.classes
        self.class_masks = {c: train.y == c for c in self.classes}
        self._scores: dict = {}

    def scores_for(self, spec: AggregatorSpec) -> OutlierScores:
        key = (spec.lof_k, spec.contamination)
        if key not in self._scores:
            self._scores[key] = scored_with_labels(self.train, spec.lof_k, spec.contamination)
        return self._scores[key]


def _class_membership(class_masks: dict, sims: np.ndarray, scores: OutlierScores,
                      spec: AggregatorSpec, label, exclude: int | None = None) -> float:
    mask = ~class_masks[label]
    if exclude is not None:
        mask = mask.copy()
        mask[exclude] = False
    if not mask.any():
        return 0.0
    values = 1.0 - sims[mask]
    return aggregate(values, scores.normalized[mask], spec, scores.labels[mask])


def _predict_index(classes: tuple, class_masks: dict, sims: np.ndarray,
                   scores: OutlierScores, spec: AggregatorSpec,
                   exclude: int | None = None) -> int:
    best_idx, best = 0, -np.inf
    for ci, label in enumerate(classes):
        m = _class_membership(class_masks, sims, scores, spec, label, exclude)
        if m > best:
            best_idx, best = ci, m
    return best_idx


def comb_select(ds_train: DecisionSystem, candidate_specs: list[AggregatorSpec],
                seed: int, _ctx: _FoldContext | None = None) -> AggregatorSpec:
    """Pick the candidate with the best leave-one-out balanced accuracy.

    Each instance is predicted with itself removed from the aggregation
    universe (outlier scores and scales stay those of the full training
    fold). Exact ties are broken uniformly at random by the seeded generator.
    """
    from .evaluation import balanced_accuracy

    if not candidate_specs:
        raise DomainError("need at least one candidate spec")
    ctx = _ctx or _FoldContext(ds_train)
    counts = {c: int(m.sum()) for c, m in ctx.class_masks.items()}
    if min(counts.values()) < 2:
        raise DomainError("leave-one-out selection needs at least two instances per class")

    n = ctx.train.n
    predicted = np.empty((len(candidate_specs), n), dtype=object)
    for i in range(n):
        sims = ctx.similarity[i]
        for si, spec in enumerate(candidate_specs):
            scores = ctx.scores_for(spec)
            ci = _predict_index(ctx.classes, ctx.class_masks, sims, scores, spec, exclude=i)
            predicted[si, i] = ctx.classes[ci]

    accs = np.array([balanced_accuracy(ctx.train.y, predicted[si])
                     for si in range(len(candidate_specs))])
    best = np.flatnonzero(accs >= accs.max() - 1e-12)
    if best.size == 1:
        return candidate_specs[int(best[0])]
    rng = np.random.default_rng(seed)
    return candidate_specs[int(rng.choice(best))]


def fit(ds_train: DecisionSystem, spec: AggregatorSpec, seed: int = 0,
        _ctx: _FoldContext | None = None) -> FittedModel:
    """Precompute scales, similarities and outlier scores; resolve comb."""
    ctx = _ctx or _FoldContext(ds_train)
    resolved = spec
    if spec.kind == "comb":
        candidates = [replace(spec, kind=k) for k in BASE_KINDS]
        resolved = comb_select(ds_train, candidates, seed, _ctx=ctx)
    scores = ctx.scores_for(resolved)
    return FittedModel(
        train=ctx.train,
        sigmas=ctx.sigmas,
        classes=ctx.classes,
        class_masks=ctx.class_masks,
        scores=scores,
        spec=spec,
        resolved=resolved,
        similarity=ctx.similarity,
    )


def predict(model: FittedModel, instance) -> object:
    """Label of the class with the greatest lower-approximation membership.

    Exact ties go to the smallest label in sorted order.
    """
    sims = similarity_to_test(model.train.X, model.sigmas, np.asarray(instance, dtype=float))
    ci = _predict_index(model.classes, model.class_masks, sims, model.scores, model.resolved)
    return model.classes[ci]


def predict_batch(model: FittedModel, X_test: np.ndarray) -> np.ndarray:
    return np.array([predict(model, row) for row in np.asarray(X_test, dtype=float)],
                    dtype=object)


def class_memberships(model: FittedModel, instance) -> dict:
    """Per-class lower-approximation membership of one instance."""
    sims = similarity_to_test(model.train.X, model.sigmas, np.asarray(instance, dtype=float))
    return {label: _class_membership(model.class_masks, sims, model.scores,
                                     model.resolved, label)
            for label in model.classes}
