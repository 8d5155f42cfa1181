"""Cross-validation, balanced accuracy, Wilcoxon signed ranks, benchmark reports."""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm, rankdata

from .classifier import AggregatorSpec, _FoldContext, fit, predict_batch
from .data import DecisionSystem
from .sets import DomainError

EXACT_WILCOXON_LIMIT = 25  # enumerate 2^m sign patterns up to here


@dataclass(frozen=True)
class FoldPlan:
    """Stratified fold assignment, reproducible from (labels, k, seed)."""

    k: int
    assignments: np.ndarray = field(repr=False)
    seed: int = 0

    def train_test(self, fold: int):
        test = np.flatnonzero(self.assignments == fold)
        train = np.flatnonzero(self.assignments != fold)
        return train, test


def stratified_kfold(labels, k: int, seed: int) -> FoldPlan:
    """Shuffle each class with the seeded generator, then deal round-robin."""
    labels = np.asarray(labels, dtype=object)
    n = labels.size
    if k < 1:
        raise DomainError("fold count must be positive")
    if k > n:
        raise DomainError(f"cannot split {n} instances into {k} folds")
    rng = np.random.default_rng(seed)
    assignments = np.empty(n, dtype=int)
    for label in sorted(set(labels.tolist())):
        members = np.flatnonzero(labels == label)
        rng.shuffle(members)
        assignments[members] = np.arange(members.size) % k
    return FoldPlan(k, assignments, seed)


def balanced_accuracy(y_true, y_pred) -> float:
    """Unweighted mean of per-class recalls over the classes present in y_true."""
    y_true = np.asarray(y_true, dtype=object)
    y_pred = np.asarray(y_pred, dtype=object)
    if y_true.size == 0 or y_true.shape != y_pred.shape:
        raise DomainError("labels must be nonempty and of equal length")
    recalls = []
    for label in sorted(set(y_true.tolist())):
        mask = y_true == label
        recalls.append(float(np.mean(y_pred[mask] == label)))
    return float(np.mean(recalls))


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float  # min(W+, W-)
    p_value: float
    n_nonzero: int
    reliable: bool
    rank_sum_positive: float
    rank_sum_negative: float
    method: str  # "exact", "normal", or "degenerate"


def _exact_distribution_sums(double_ranks: np.ndarray) -> np.ndarray:
    """All 2^m sign-pattern values of 2*W+, one entry per pattern."""
    m = double_ranks.size
    sums = np.zeros(1 << m, dtype=np.int32)
    size = 1
    for r in double_ranks:
        sums[size:2 * size] = sums[:size] + r
        size *= 2
    return sums


def _exact_p_value(double_ranks: np.ndarray, w2: int) -> float:
    sums = _exact_distribution_sums(double_ranks)
    n_le = int(np.count_nonzero(sums <= w2))
    n_ge = int(np.count_nonzero(sums >= w2))
    return min(1.0, 2.0 * min(n_le, n_ge) / sums.size)


def _normal_p_value(ranks: np.ndarray, w_pos: float) -> float:
    """Normal approximation with tie correction and continuity correction."""
    m = ranks.size
    mean = m * (m + 1) / 4.0
    _, counts = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(counts.astype(float) ** 3 - counts)) / 48.0
    var = m * (m + 1) * (2 * m + 1) / 24.0 - tie_term
    z = max(abs(w_pos - mean) - 0.5, 0.0) / math.sqrt(var)
    return min(1.0, 2.0 * float(norm.sf(z)))


def wilcoxon_signed_rank(a, b) -> WilcoxonResult:
    """Two-sided paired signed-rank test.

    Zero differences are dropped and tied absolute differences mid-ranked.
    Up to m = 25 nonzero differences the p-value is exact (all 2^m sign
    patterns enumerated); beyond that a normal approximation with tie
    correction is used. Results with fewer than 5 nonzero differences are
    flagged unreliable.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size != b.size or a.size == 0:
        raise DomainError("paired samples must be nonempty and of equal length")
    d = a - b
    d = d[d != 0.0]
    m = d.size
    if m == 0:
        return WilcoxonResult(0.0, 1.0, 0, False, 0.0, 0.0, "degenerate")

    ranks = rankdata(np.abs(d))
    w_pos = float(ranks[d > 0].sum())
    w_neg = float(ranks[d < 0].sum())
    stat = min(w_pos, w_neg)
    # mid-ranks are multiples of 1/2; doubling keeps everything integral
    double_ranks = np.rint(2.0 * ranks).astype(np.int32)

    if m <= EXACT_WILCOXON_LIMIT:
        p = _exact_p_value(double_ranks, int(round(2.0 * w_pos)))
        method = "exact"
    else:
        p = _normal_p_value(ranks, w_pos)
        method = "normal"
    return WilcoxonResult(stat, p, m, m >= 5, w_pos, w_neg, method)


@dataclass(frozen=True)
class EvaluationReport:
    dataset_names: tuple
    spec_names: tuple
    accuracies: np.ndarray = field(repr=False)  # datasets x specs, mean over folds
    fold_accuracies: dict = field(repr=False)  # (dataset, spec) -> per-fold list
    usage_counts: dict = field(repr=False)  # dataset -> {base kind: folds used}
    p_values: np.ndarray = field(repr=False)  # specs x specs
    rank_sums: np.ndarray = field(repr=False)  # specs x specs, W+ of row vs col
    unreliable_pairs: tuple = ()
    failures: dict = field(default_factory=dict)
    k: int = 5
    seed: int = 0


def crossval_accuracies(ds: DecisionSystem, spec: AggregatorSpec, k: int, seed: int,
                        dataset_index: int = 0) -> tuple[list, list]:
    """Per-fold balanced accuracies plus the resolved strategy per fold."""
    plan = stratified_kfold(ds.y, k, seed)
    accs, resolved_kinds = [], []
    for fold in range(k):
        train_idx, test_idx = plan.train_test(fold)
        train, test = ds.subset(train_idx), ds.subset(test_idx)
        ctx = _FoldContext(train)
        model = fit(train, spec, seed=_fold_seed(seed, dataset_index, fold), _ctx=ctx)
        accs.append(balanced_accuracy(test.y, predict_batch(model, test.X)))
        resolved_kinds.append(model.resolved.kind)
    return accs, resolved_kinds


def _fold_seed(seed: int, dataset_index: int, fold: int) -> int:
    ss = np.random.SeedSequence([seed, dataset_index, fold])
    return int(ss.generate_state(1)[0])


def run_benchmark(datasets, specs: list[AggregatorSpec], k: int = 5,
                  seed: int = 0) -> EvaluationReport:
    """Full evaluation protocol over several datasets and strategies.

    For each dataset: stratified k-fold split, one model per (fold, spec)
    sharing the per-fold similarity/outlier computations, balanced accuracy
    on the held-out fold. The pairwise Wilcoxon matrix compares strategies
    across the per-dataset mean accuracies. Per-dataset failures are
    recorded in the report instead of aborting the run.
    """
    dataset_names = tuple(name for name, _ in datasets)
    spec_names = tuple(s.display_name for s in specs)
    acc = np.full((len(datasets), len(specs)), np.nan)
    fold_accuracies: dict = {}
    usage_counts: dict = {}
    failures: dict = {}

    for di, (name, ds) in enumerate(datasets):
        try:
            plan = stratified_kfold(ds.y, k, seed)
            per_spec = [[] for _ in specs]
            counts: dict = {}
            for fold in range(k):
                train_idx, test_idx = plan.train_test(fold)
                train, test = ds.subset(train_idx), ds.subset(test_idx)
                ctx = _FoldContext(train)
                fold_seed = _fold_seed(seed, di, fold)
                for si, spec in enumerate(specs):
                    model = fit(train, spec, seed=fold_seed, _ctx=ctx)
                    ba = balanced_accuracy(test.y, predict_batch(model, test.X))
                    per_spec[si].append(ba)
                    if spec.kind == "comb":
                        rk = model.resolved.kind
                        counts[rk] = counts.get(rk, 0) + 1
            for si in range(len(specs)):
                acc[di, si] = float(np.mean(per_spec[si]))
                fold_accuracies[(name, spec_names[si])] = per_spec[si]
            if counts:
                usage_counts[name] = counts
        except Exception as exc:  # noqa: BLE001 - recorded, not fatal
            failures[name] = f"{type(exc).__name__}: {exc}"

    ok = ~np.isnan(acc).any(axis=1)
    n_specs = len(specs)
    p_values = np.full((n_specs, n_specs), np.nan)
    rank_sums = np.full((n_specs, n_specs), np.nan)
    unreliable = []
    if ok.any():
        cols = acc[ok]
        for i in range(n_specs):
            for j in range(n_specs):
                if i == j:
                    continue
                res = wilcoxon_signed_rank(cols[:, i], cols[:, j])
                p_values[i, j] = res.p_value
                rank_sums[i, j] = res.rank_sum_positive
                if not res.reliable:
                    unreliable.append((spec_names[i], spec_names[j]))

    return EvaluationReport(
        dataset_names=dataset_names,
        spec_names=spec_names,
        accuracies=acc,
        fold_accuracies=fold_accuracies,
        usage_counts=usage_counts,
        p_values=p_values,
        rank_sums=rank_sums,
        unreliable_pairs=tuple(unreliable),
        failures=failures,
        k=k,
        seed=seed,
    )


# Report serialization: UTF-8, LF endings, 17 significant digits.

def _fmt(x: float) -> str:
    if x != x:  # nan
        return ""
    return format(float(x), ".17g")


def write_csv_rows(path: str, rows: list) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


def write_report_csvs(report: EvaluationReport, out_dir: str) -> list:
    """Emit results, usage-count, p-value and rank-sum CSVs; return the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    results = os.path.join(out_dir, "results.csv")
    rows = [["dataset", *report.spec_names]]
    for di, name in enumerate(report.dataset_names):
        rows.append([name, *(_fmt(v) for v in report.accuracies[di])])
    valid = report.accuracies[~np.isnan(report.accuracies).any(axis=1)]
    if valid.size:
        rows.append(["mean", *(_fmt(v) for v in valid.mean(axis=0))])
        rows.append(["median", *(_fmt(v) for v in np.median(valid, axis=0))])
    write_csv_rows(results, rows)
    paths.append(results)

    from .classifier import BASE_KINDS, DISPLAY_NAMES

    usage = os.path.join(out_dir, "usage_counts.csv")
    rows = [["dataset", *(DISPLAY_NAMES[k] for k in BASE_KINDS)]]
    for name in report.dataset_names:
        counts = report.usage_counts.get(name, {})
        rows.append([name, *(str(counts.get(k, 0)) for k in BASE_KINDS)])
    write_csv_rows(usage, rows)
    paths.append(usage)

    for fname, matrix in (("wilcoxon_pvalues.csv", report.p_values),
                          ("wilcoxon_ranksums.csv", report.rank_sums)):
        path = os.path.join(out_dir, fname)
        rows = [["", *report.spec_names]]
        for i, name in enumerate(report.spec_names):
            rows.append([name, *(_fmt(v) for v in matrix[i])])
        write_csv_rows(path, rows)
        paths.append(path)
    return paths


def write_summary_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True))
        fh.write("\n")
