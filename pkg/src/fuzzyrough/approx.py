"""Similarity relations and Choquet lower/upper approximations.

The lower approximation of a concept A at y integrates I(R(x, y), A(x))
against a capacity; the upper approximation integrates C(R(x, y), A(x)).
Universal/existential measures recover the classical min/max definitions,
symmetric measures the OWA-weighted ones, and general capacities allow
outlier-aware softening.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import connectives
from .choquet import choquet_integral
from .data import DecisionSystem
from .measures import MonotoneMeasure
from .sets import DomainError, FuzzySet, Universe


@dataclass(frozen=True)
class SimilarityRelation:
    """Symmetric pairwise similarity degrees with a unit diagonal."""

    universe: Universe
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        n = self.universe.size
        if m.shape != (n, n):
            raise DomainError("similarity matrix shape must match the universe")
        if np.any(m < 0.0) or np.any(m > 1.0):
            raise DomainError("similarities must lie in [0, 1]")
        if not np.allclose(np.diag(m), 1.0):
            raise DomainError("similarity of an element with itself must be 1")
        if not np.allclose(m, m.T):
            raise DomainError("similarity matrix must be symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def attribute_scales(ds: DecisionSystem) -> np.ndarray:
    """Per-attribute sample standard deviations of the training data."""
    if ds.n < 2:
        raise DomainError("need at least two instances to estimate scales")
    return np.std(ds.X, axis=0, ddof=1)


def _per_attribute_similarity(diff: np.ndarray, sigma: float) -> np.ndarray:
    if sigma == 0.0:
        # constant attribute: the formula's sigma -> 0 limit is an equality test
        return (diff == 0.0).astype(float)
    return np.maximum(1.0 - diff / sigma, 0.0)


def similarity_matrix(X: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    n, m = X.shape
    if m == 0:
        raise DomainError("similarity needs at least one attribute")
    acc = np.zeros((n, n))
    for a in range(m):
        diff = np.abs(X[:, a][:, None] - X[:, a][None, :])
        acc += _per_attribute_similarity(diff, sigmas[a])
    return acc / m


def build_similarity(ds: DecisionSystem) -> SimilarityRelation:
    """Mean over attributes of max(1 - |a(x) - a(y)| / sigma_a, 0)."""
    sigmas = attribute_scales(ds)
    return SimilarityRelation(Universe(ds.ids), similarity_matrix(ds.X, sigmas))


def similarity_to_test(X_train: np.ndarray, sigmas: np.ndarray,
                       test_row: np.ndarray) -> np.ndarray:
    """Similarity of one out-of-sample instance to every training instance.

    Uses the training-fold scales; the test instance never contributes to
    sigma_a.
    """
    test_row = np.asarray(test_row, dtype=float).ravel()
    if test_row.size != X_train.shape[1]:
        raise DomainError("test instance is missing conditional attributes")
    if not np.all(np.isfinite(test_row)):
        raise DomainError("test instance values must be finite")
    m = X_train.shape[1]
    if m == 0:
        raise DomainError("similarity needs at least one attribute")
    acc = np.zeros(X_train.shape[0])
    for a in range(m):
        diff = np.abs(X_train[:, a] - test_row[a])
        acc += _per_attribute_similarity(diff, sigmas[a])
    return acc / m


def _element_index(r: SimilarityRelation, y) -> int:
    return y if isinstance(y, (int, np.integer)) else r.universe.index_of(y)


def lower_approximation(r: SimilarityRelation, a: FuzzySet, mu_l: MonotoneMeasure,
                        implicator: str, y) -> float:
    """Degree to which (mu_l-many) elements similar to y belong to a."""
    if a.universe != r.universe:
        raise DomainError("concept and relation live on different universes")
    if mu_l.n != r.universe.size:
        raise DomainError("measure size does not match the universe")
    row = r.matrix[_element_index(r, y)]
    g = connectives.implicator_eval(implicator, row, a.memberships)
    return choquet_integral(g, mu_l)


def upper_approximation(r: SimilarityRelation, a: FuzzySet, mu_u: MonotoneMeasure,
                        conjunctor, y) -> float:
    """Degree to which some (mu_u-weighted) element similar to y belongs to a.

    ``conjunctor`` is either a t-norm kind name or a binary callable (such as
    ``connectives.conjunctor_fn(implicator, negator)``).
    """
    if a.universe != r.universe:
        raise DomainError("concept and relation live on different universes")
    if mu_u.n != r.universe.size:
        raise DomainError("measure size does not match the universe")
    row = r.matrix[_element_index(r, y)]
    fn = conjunctor if callable(conjunctor) else connectives.tnorm_fn(conjunctor)
    g = fn(row, a.memberships)
    return choquet_integral(np.asarray(g, dtype=float), mu_u)
