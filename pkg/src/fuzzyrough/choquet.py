"""Choquet integration and the OWA operator.

The integral of f against a capacity mu is computed along the sorted chain:
sort f ascending, take suffix sets A*_i, and accumulate
mu(A*_i) * (f(x*_i) - f(x*_{i-1})) with f(x*_0) = 0. For additive measures
this is the weighted mean, for symmetric measures the OWA operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .measures import MonotoneMeasure
from .quantifiers import WeightVector
from .sets import DomainError, FuzzySet, Universe


@dataclass(frozen=True)
class Valuation:
    """A real-valued function on a universe, stored as a vector."""

    universe: Universe
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.universe.size:
            raise DomainError("value vector length must match the universe size")
        if not np.all(np.isfinite(v)):
            raise DomainError("valuation values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _extract(f, mu: MonotoneMeasure | None = None) -> np.ndarray:
    if isinstance(f, Valuation):
        values, universe = f.values, f.universe
    elif isinstance(f, FuzzySet):
        values, universe = f.memberships, f.universe
    else:
        values = np.asarray(f, dtype=float).ravel()
        if not np.all(np.isfinite(values)):
            raise DomainError("values must be finite")
        universe = None
    if mu is not None:
        if values.size != mu.n:
            raise DomainError("valuation and measure sizes differ")
        if universe is not None and mu.universe is not None and universe != mu.universe:
            raise DomainError("valuation and measure live on different universes")
    return values


def choquet_integral(f, mu: MonotoneMeasure) -> float:
    """Integrate f (Valuation, FuzzySet, or vector) against the capacity mu."""
    values = _extract(f, mu)
    order = np.argsort(values, kind="stable")
    fs = values[order]
    chain = mu.chain_values(order)
    if len(fs) == 1:
        return float(fs[0] * chain[0])
    return float(fs[0] * chain[0] + np.dot(fs[1:] - fs[:-1], chain[1:]))


def owa_values(values: np.ndarray, w: WeightVector) -> float:
    values = np.asarray(values, dtype=float)
    if values.size != len(w):
        raise DomainError("value and weight lengths differ")
    desc = values[np.argsort(-values, kind="stable")]
    return float(np.dot(desc, w.weights))


def owa(f, w: WeightVector) -> float:
    """Ordered weighted average: w_1 goes to the largest value."""
    return owa_values(_extract(f), w)
