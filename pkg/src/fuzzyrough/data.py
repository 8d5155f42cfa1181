"""Decision systems (numeric features + categorical decision) and CSV ingestion."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .sets import DomainError


class DataFormatError(ValueError):
    """A dataset file cannot be parsed into a decision system."""


@dataclass(frozen=True)
class DecisionSystem:
    """Instances with numeric conditional attributes and one decision column."""

    attributes: tuple
    X: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    ids: tuple = ()

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=object)
        if X.ndim != 2:
            raise DomainError("feature matrix must be two-dimensional")
        if X.shape[0] < 1:
            raise DomainError("decision system needs at least one instance")
        if X.shape[1] != len(self.attributes):
            raise DomainError("attribute names must match the feature columns")
        if not np.all(np.isfinite(X)):
            raise DomainError("all conditional values must be finite numerics")
        if y.shape != (X.shape[0],):
            raise DomainError("decision column length must match the instances")
        ids = self.ids or tuple(range(X.shape[0]))
        if len(ids) != X.shape[0]:
            raise DomainError("instance id count must match the instances")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "ids", tuple(ids))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def classes(self) -> tuple:
        return tuple(sorted(set(self.y.tolist())))

    def subset(self, indices) -> "DecisionSystem":
        idx = np.asarray(indices)
        return DecisionSystem(
            self.attributes,
            self.X[idx],
            self.y[idx],
            tuple(self.ids[i] for i in np.atleast_1d(idx)),
        )


def ingest_csv(path, decision_column: str | None = None) -> DecisionSystem:
    """Load a headered CSV; every non-decision column must parse as a float.

    The decision column defaults to the last one. Column order is preserved.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: file is empty") from None
        header = [h.strip() for h in header]
        if decision_column is None:
            decision_column = header[-1]
        if decision_column not in header:
            raise DataFormatError(f"{path}: decision column {decision_column!r} not in header {header}")
        d_idx = header.index(decision_column)
        attr_names = tuple(h for i, h in enumerate(header) if i != d_idx)
        if not attr_names:
            raise DataFormatError(f"{path}: no conditional attributes besides the decision column")

        rows, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
            feats = []
            for i, cell in enumerate(row):
                if i == d_idx:
                    continue
                try:
                    v = float(cell)
                except ValueError:
                    raise DataFormatError(
                        f"{path}:{lineno}: column {header[i]!r}: cannot parse {cell!r} as a number"
                    ) from None
                if not np.isfinite(v):
                    raise DataFormatError(f"{path}:{lineno}: column {header[i]!r}: non-finite value")
                feats.append(v)
            rows.append(feats)
            labels.append(row[d_idx].strip())

    if not rows:
        raise DataFormatError(f"{path}: no data rows after the header")
    return DecisionSystem(attr_names, np.array(rows, dtype=float), np.array(labels, dtype=object))


def load_features(path, attributes: tuple, decision_column: str | None):
    """Load a feature matrix whose columns must cover the training attributes.

    Returns (X, true_labels_or_None). The decision column is optional in the
    file; extra columns are rejected so silent misalignment cannot happen.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: file is empty") from None
        missing = [a for a in attributes if a not in header]
        if missing:
            raise DataFormatError(f"{path}: missing attribute columns {missing}")
        extra = [h for h in header if h not in attributes and h != decision_column]
        if extra:
            raise DataFormatError(f"{path}: unexpected columns {extra}")
        col = {a: header.index(a) for a in attributes}
        d_idx = header.index(decision_column) if decision_column in header else None

        rows, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
            try:
                rows.append([float(row[col[a]]) for a in attributes])
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: non-numeric feature cell") from None
            if d_idx is not None:
                labels.append(row[d_idx].strip())

    if not rows:
        raise DataFormatError(f"{path}: no data rows after the header")
    X = np.array(rows, dtype=float)
    if not np.all(np.isfinite(X)):
        raise DataFormatError(f"{path}: non-finite feature values")
    y = np.array(labels, dtype=object) if d_idx is not None else None
    return X, y
