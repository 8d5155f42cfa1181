"""Fuzzy rough sets with Choquet aggregation over monotone measures."""

from .approx import (
    SimilarityRelation,
    build_similarity,
    lower_approximation,
    similarity_to_test,
    upper_approximation,
)
from .choquet import Valuation, choquet_integral, owa
from .classifier import AggregatorSpec, FittedModel, aggregate, comb_select, fit, predict
from .connectives import (
    ConnectiveSuite,
    complement,
    induced_conjunctor,
    implicator_eval,
    negator_eval,
    tnorm_eval,
)
from .data import DecisionSystem, ingest_csv
from .evaluation import (
    EvaluationReport,
    FoldPlan,
    balanced_accuracy,
    run_benchmark,
    stratified_kfold,
    wilcoxon_signed_rank,
)
from .measures import (
    MonotoneMeasure,
    additive_from_weights,
    dual_measure,
    fuzzy_removal,
    measure_eval,
    ordered_two_symmetric,
    partial_existential,
    partial_universal,
    symmetric_from_quantifier,
    wowa_measure,
)
from .outliers import OutlierScores, label_outliers, lof_scores, normalize_scores, per_class_scores
from .quantifiers import (
    AdditiveQuantifier,
    ExistentialQuantifier,
    QuadraticQuantifier,
    RIMQuantifier,
    StepQuantifier,
    UniversalQuantifier,
    WeightVector,
    andness,
    eval_quantifier,
    orness,
    quantifier_from_weights,
    weights_from_quantifier,
    yager_eval,
    zadeh_eval,
)
from .sets import DomainError, FuzzySet, Universe, intersect_min

__version__ = "0.1.0"
