"""Monotone measures (capacities) on finite universes.

Every measure here satisfies mu(empty) = 0, mu(X) = 1 and monotonicity under
inclusion, but is generally non-additive. Besides evaluation on arbitrary
subsets, each kind supports ``chain_values``: given the ascending ordering
produced while integrating a function, it returns the measures of the whole
descending chain X = A*_1 >= A*_2 >= ... >= A*_n in one pass, which is the
only access pattern Choquet integration needs.

Subsets may be given as boolean masks, index collections, or crisp fuzzy
sets. The fuzzy set ``o`` appearing in several constructors carries one
distrust/outlierness degree per element.
"""

from __future__ import annotations

import numpy as np

from . import connectives
from .quantifiers import RIMQuantifier, WeightVector, weights_from_quantifier
from .sets import DomainError, FuzzySet, Universe


def _as_mask(subset, n: int) -> np.ndarray:
    if isinstance(subset, FuzzySet):
        m = subset.memberships
        if not np.all((m == 0.0) | (m == 1.0)):
            raise DomainError("measures are defined on crisp subsets only")
        return m.astype(bool)
    arr = np.asarray(subset)
    if arr.dtype == bool:
        if arr.shape != (n,):
            raise DomainError("boolean mask length must match the universe size")
        return arr
    idx = arr.astype(int).ravel()
    if idx.size != len(set(idx.tolist())):
        raise DomainError("subset indices must be distinct")
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise DomainError("subset indices outside the universe")
    mask = np.zeros(n, dtype=bool)
    mask[idx] = True
    return mask


def _degrees_of(o, n: int | None = None) -> tuple[np.ndarray, Universe | None]:
    if isinstance(o, FuzzySet):
        return o.memberships, o.universe
    arr = np.asarray(o, dtype=float).ravel()
    if np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr)):
        raise DomainError("degrees must lie in [0, 1]")
    if n is not None and arr.size != n:
        raise DomainError("degree vector length must match the universe size")
    return arr, None


class MonotoneMeasure:
    """Base capacity: subclasses fill in ``_value`` and ``chain_values``."""

    def __init__(self, n: int, universe: Universe | None = None):
        if n < 1:
            raise DomainError("measures require a nonempty universe")
        if universe is not None and universe.size != n:
            raise DomainError("universe size mismatch")
        self.n = int(n)
        self.universe = universe

    def value(self, subset) -> float:
        mask = _as_mask(subset, self.n)
        k = int(mask.sum())
        if k == 0:
            return 0.0
        if k == self.n:
            return 1.0
        return float(min(max(self._value(mask, k), 0.0), 1.0))

    def _value(self, mask: np.ndarray, k: int) -> float:
        raise NotImplementedError

    def chain_values(self, order: np.ndarray) -> np.ndarray:
        """Measures of the suffix sets {order[i], ..., order[n-1]} for all i."""
        raise NotImplementedError

    def dual(self) -> "MonotoneMeasure":
        return DualMeasure(self)


class SymmetricMeasure(MonotoneMeasure):
    """mu(A) = Q(|A|/n): depends on cardinality only."""

    def __init__(self, quantifier: RIMQuantifier, n: int, universe: Universe | None = None):
        super().__init__(n, universe)
        self.quantifier = quantifier

    def _value(self, mask, k):
        return self.quantifier(k / self.n)

    def chain_values(self, order):
        sizes = np.arange(self.n, 0, -1, dtype=float)
        return np.asarray(self.quantifier(sizes / self.n), dtype=float)


class _DistortedAdditiveMeasure(MonotoneMeasure):
    """mu(A) = Q(sum of per-element base weights over A)."""

    def __init__(self, base_weights: np.ndarray, quantifier: RIMQuantifier | None,
                 n: int, universe: Universe | None = None):
        super().__init__(n, universe)
        w = np.asarray(base_weights, dtype=float)
        if w.shape != (self.n,) or np.any(w < 0.0):
            raise DomainError("base weights must be nonnegative, one per element")
        if abs(w.sum() - 1.0) > 1e-9:
            raise DomainError("base weights must sum to 1")
        self.base_weights = w
        self.quantifier = quantifier

    def _distort(self, p):
        if self.quantifier is None:
            return p
        return self.quantifier(np.clip(p, 0.0, 1.0))

    def _value(self, mask, k):
        return float(self._distort(float(self.base_weights[mask].sum())))

    def chain_values(self, order):
        suffix = np.cumsum(self.base_weights[order][::-1])[::-1]
        suffix[0] = 1.0
        return np.asarray(self._distort(suffix), dtype=float)


class AdditiveMeasure(_DistortedAdditiveMeasure):
    """mu(A) = sum of p_i over A; the Choquet integral becomes a weighted mean."""

    def __init__(self, weights: WeightVector, universe: Universe | None = None):
        super().__init__(weights.weights, None, len(weights), universe)
        self.weights = weights


class WowaMeasure(_DistortedAdditiveMeasure):
    """mu(A) = Q(sum of confidence weights over A).

    Confidence weights p_i = (1 - o_i) / (n - sum(o)) renormalize trust so
    that distrusted elements contribute less of the quantifier's progress.
    """

    def __init__(self, quantifier: RIMQuantifier, o, universe: Universe | None = None):
        degrees, uni = _degrees_of(o)
        n = degrees.size
        denom = n - degrees.sum()
        if denom <= 0.0:
            raise DomainError("wowa measure needs some confidence mass: sum of o must be < n")
        super().__init__((1.0 - degrees) / denom, quantifier, n, universe or uni)
        self.o = degrees


class OrderedTwoSymmetricMeasure(_DistortedAdditiveMeasure):
    """Two-block weighting: low-o elements share most mass, the rest get t/n.

    Elements are ranked by ascending o (ties by index); the k lowest ranked,
    with k = ceil((1 - contamination) * n), receive weight (1-t)/k + t/n and
    the remaining ones t/n. With crisp o the measure depends only on the two
    intersection cardinalities, and t = 1 recovers the symmetric measure.
    """

    def __init__(self, quantifier: RIMQuantifier, o, t: float, contamination: float,
                 universe: Universe | None = None):
        if not 0.0 <= t <= 1.0:
            raise DomainError("outlier weight t must lie in [0, 1]")
        if not 0.0 <= contamination < 1.0:
            raise DomainError("contamination must lie in [0, 1)")
        degrees, uni = _degrees_of(o)
        n = degrees.size
        k = int(np.ceil((1.0 - contamination) * n))
        if k < 1:
            raise DomainError("two-symmetric measure needs at least one trusted element")
        rank = np.argsort(degrees, kind="stable")
        w = np.full(n, t / n)
        w[rank[:k]] += (1.0 - t) / k
        super().__init__(w, quantifier, n, universe or uni)
        self.o = degrees
        self.t = float(t)
        self.k = k


class FuzzyRemovalMeasure(MonotoneMeasure):
    """mu(A) = t-norm of the distrust degrees of the elements excluded from A.

    A set is "large" exactly when everything outside it may be ignored, so a
    single fully trusted element (o = 0) left out drives the measure to 0.
    """

    def __init__(self, o, tnorm: str = connectives.MINIMUM, universe: Universe | None = None):
        degrees, uni = _degrees_of(o)
        super().__init__(degrees.size, universe or uni)
        if tnorm not in connectives.tnorm_kinds():
            raise DomainError(f"unknown t-norm {tnorm!r}")
        self.o = degrees
        self.tnorm = tnorm

    def _value(self, mask, k):
        return connectives.tnorm_eval(self.tnorm, self.o[~mask])

    def chain_values(self, order):
        out = np.empty(self.n)
        out[0] = 1.0
        excluded = self.o[order]
        if self.tnorm == connectives.MINIMUM:
            # excluded prefix grows one element per chain step: running minimum
            if self.n > 1:
                out[1:] = np.minimum.accumulate(excluded[:-1])
        else:
            for i in range(1, self.n):
                out[i] = connectives.tnorm_eval(self.tnorm, excluded[:i])
        return out


class PartialUniversalMeasure(MonotoneMeasure):
    """mu(B) = 1 iff B contains every trusted element (those outside o)."""

    def __init__(self, o, n: int | None = None, universe: Universe | None = None):
        if isinstance(o, FuzzySet):
            mask = _as_mask(o, o.universe.size)
            universe = universe or o.universe
        else:
            if n is None:
                arr = np.asarray(o)
                if arr.dtype != bool:
                    raise DomainError("pass n when giving outlier indices")
                n = arr.size
            mask = _as_mask(o, n)
        super().__init__(mask.size, universe)
        if mask.all():
            raise DomainError("partial universal measure needs at least one trusted element")
        self.outliers = mask
        self.trusted = ~mask

    def _value(self, mask, k):
        return 1.0 if np.all(mask[self.trusted]) else 0.0

    def chain_values(self, order):
        pos = np.empty(self.n, dtype=int)
        pos[order] = np.arange(self.n)
        first_trusted = pos[self.trusted].min()
        return (np.arange(self.n) <= first_trusted).astype(float)


class PartialExistentialMeasure(MonotoneMeasure):
    """mu(B) = 0 iff B lies entirely inside the outlier set o."""

    def __init__(self, o, n: int | None = None, universe: Universe | None = None):
        inner = PartialUniversalMeasure(o, n, universe)
        super().__init__(inner.n, inner.universe)
        self.outliers = inner.outliers
        self.trusted = inner.trusted

    def _value(self, mask, k):
        return 1.0 if np.any(mask[self.trusted]) else 0.0

    def chain_values(self, order):
        pos = np.empty(self.n, dtype=int)
        pos[order] = np.arange(self.n)
        last_trusted = pos[self.trusted].max()
        return (np.arange(self.n) <= last_trusted).astype(float)


class DualMeasure(MonotoneMeasure):
    """mu'(A) = 1 - mu(complement of A)."""

    def __init__(self, inner: MonotoneMeasure):
        super().__init__(inner.n, inner.universe)
        self.inner = inner

    def _value(self, mask, k):
        return 1.0 - self.inner.value(~mask)

    def chain_values(self, order):
        n = self.n
        out = np.empty(n)
        out[0] = 1.0
        if n > 1:
            # complement of suffix i is the prefix order[:i], i.e. a suffix
            # of the reversed order; one inner chain pass covers them all
            rev = self.inner.chain_values(order[::-1])
            out[1:] = 1.0 - rev[np.arange(n - 1, 0, -1)]
        return out

    def dual(self):
        return self.inner


# Constructors mirroring the measure families used by the classifier.

def measure_eval(mu: MonotoneMeasure, subset) -> float:
    return mu.value(subset)


def symmetric_from_quantifier(q: RIMQuantifier, n: int,
                              universe: Universe | None = None) -> SymmetricMeasure:
    return SymmetricMeasure(q, n, universe)


def additive_from_weights(p: WeightVector, universe: Universe | None = None) -> AdditiveMeasure:
    return AdditiveMeasure(p, universe)


def dual_measure(mu: MonotoneMeasure) -> MonotoneMeasure:
    return mu.dual()


def partial_universal(o, n: int | None = None,
                      universe: Universe | None = None) -> PartialUniversalMeasure:
    return PartialUniversalMeasure(o, n, universe)


def partial_existential(o, n: int | None = None,
                        universe: Universe | None = None) -> PartialExistentialMeasure:
    return PartialExistentialMeasure(o, n, universe)


def fuzzy_removal(o, tnorm: str = connectives.MINIMUM,
                  universe: Universe | None = None) -> FuzzyRemovalMeasure:
    return FuzzyRemovalMeasure(o, tnorm, universe)


def wowa_measure(q: RIMQuantifier, o, universe: Universe | None = None) -> WowaMeasure:
    return WowaMeasure(q, o, universe)


def ordered_two_symmetric(q: RIMQuantifier, o, t: float, contamination: float,
                          universe: Universe | None = None) -> OrderedTwoSymmetricMeasure:
    return OrderedTwoSymmetricMeasure(q, o, t, contamination, universe)


def symmetric_weights(mu: SymmetricMeasure) -> WeightVector:
    """OWA weights equivalent to a symmetric measure on its universe."""
    return weights_from_quantifier(mu.quantifier, mu.n)
