"""Confusion-matrix metrics and the one-tailed two-sample Z-test.

Metrics are macro-averaged (unweighted mean over classes) and reported on
a 0..100 percent scale at full precision; rounding to two decimals happens
only at display time.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from .errors import EmptyInput, InsufficientSamples, UnknownLabel

PREDICTIONS_HEADER = ["fold", "sample_id", "true_label", "predicted_label"]


@dataclass(frozen=True)
class PredictionRecord:
    fold: int
    sample_id: str
    true_label: str
    predicted_label: str

    def __post_init__(self):
        if self.fold < 0:
            raise ValueError("fold must be >= 0")


def read_predictions(path) -> list[PredictionRecord]:
    """Load a predictions CSV (fold,sample_id,true_label,predicted_label)."""
    records = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != PREDICTIONS_HEADER:
            raise ValueError(f"{path} does not have the predictions header")
        for row in reader:
            if not row:
                continue
            fold, sid, true_label, predicted = row
            records.append(PredictionRecord(int(fold), sid, true_label, predicted))
    return records


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = samples of true class i predicted as class j."""

    classes: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        c = len(self.classes)
        if self.counts.shape != (c, c):
            raise ValueError(f"counts must be {c}x{c}, got {self.counts.shape}")
        if not np.issubdtype(self.counts.dtype, np.integer):
            raise ValueError("counts must be integers")
        if (self.counts < 0).any():
            raise ValueError("counts must be non-negative")
        self.counts.setflags(write=False)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def confusion_from_predictions(
    records: Sequence[PredictionRecord], classes: Sequence[str]
) -> ConfusionMatrix:
    """Tally records into a confusion matrix over the given class order."""
    if not records:
        raise EmptyInput("no prediction records")
    index = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for r in records:
        if r.true_label not in index:
            raise UnknownLabel(f"true label {r.true_label!r} not in class set")
        if r.predicted_label not in index:
            raise UnknownLabel(f"predicted label {r.predicted_label!r} not in class set")
        counts[index[r.true_label], index[r.predicted_label]] += 1
    return ConfusionMatrix(classes=tuple(classes), counts=counts)


@dataclass(frozen=True)
class PerClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricsReport:
    """Percent-scale indices; `degenerate` lists classes whose precision
    or recall had a zero denominator and was defined as 0."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    per_class: dict[str, PerClassMetrics]
    degenerate: tuple[str, ...] = ()


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy plus per-class and macro precision/recall/f1.

    precision_i = counts[i][i] / column_sum_i,
    recall_i    = counts[i][i] / row_sum_i,
    f1_i        = 2 P R / (P + R); zero denominators give 0 and flag the
    class as degenerate.
    """
    total = cm.total
    if total == 0:
        raise EmptyInput("confusion matrix is empty")
    diag = np.diag(cm.counts)
    row_sums = cm.counts.sum(axis=1)
    col_sums = cm.counts.sum(axis=0)
    per_class: dict[str, PerClassMetrics] = {}
    degenerate = []
    for i, name in enumerate(cm.classes):
        flagged = False
        if col_sums[i] > 0:
            p = diag[i] / col_sums[i]
        else:
            p, flagged = 0.0, True
        if row_sums[i] > 0:
            r = diag[i] / row_sums[i]
        else:
            r, flagged = 0.0, True
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        per_class[name] = PerClassMetrics(100.0 * p, 100.0 * r, 100.0 * f1)
        if flagged:
            degenerate.append(name)
    n = len(cm.classes)
    return MetricsReport(
        accuracy=100.0 * float(diag.sum()) / total,
        precision=sum(m.precision for m in per_class.values()) / n,
        recall=sum(m.recall for m in per_class.values()) / n,
        f1=sum(m.f1 for m in per_class.values()) / n,
        per_class=per_class,
        degenerate=tuple(degenerate),
    )


def aggregate_folds(reports: Sequence[MetricsReport]) -> MetricsReport:
    """Field-wise arithmetic mean over per-fold reports."""
    if not reports:
        raise EmptyInput("no reports to aggregate")
    names = set(reports[0].per_class)
    for r in reports[1:]:
        if set(r.per_class) != names:
            raise ValueError("reports cover different class sets")
    n = len(reports)
    per_class = {
        name: PerClassMetrics(
            precision=sum(r.per_class[name].precision for r in reports) / n,
            recall=sum(r.per_class[name].recall for r in reports) / n,
            f1=sum(r.per_class[name].f1 for r in reports) / n,
        )
        for name in sorted(names)
    }
    degenerate = sorted({c for r in reports for c in r.degenerate})
    return MetricsReport(
        accuracy=sum(r.accuracy for r in reports) / n,
        precision=sum(r.precision for r in reports) / n,
        recall=sum(r.recall for r in reports) / n,
        f1=sum(r.f1 for r in reports) / n,
        per_class=per_class,
        degenerate=tuple(degenerate),
    )


@dataclass(frozen=True)
class ZTestResult:
    z_obs: float
    z_crit: float
    alpha: float
    mean_a: float
    mean_b: float
    decision: str  # "accept_h0" or "reject_h0"


def ztest(
    samples_a: Sequence[float], samples_b: Sequence[float], alpha: float = 0.05
) -> ZTestResult:
    """Upper one-tailed two-sample Z-test on percent accuracies.

    z_obs = (mean_a - mean_b) / sqrt(s2_a/n_a + s2_b/n_b) with
    Bessel-corrected sample variances; H0 (a <= b) is rejected exactly
    when z_obs exceeds the 1-alpha standard-normal quantile.
    """
    a = [float(x) for x in samples_a]
    b = [float(x) for x in samples_b]
    if len(a) < 2 or len(b) < 2:
        raise InsufficientSamples("each sample list needs at least 2 entries")
    if not 0 < alpha < 1:
        raise ValueError("alpha must be in (0, 1)")
    mean_a = sum(a) / len(a)
    mean_b = sum(b) / len(b)
    var_a = sum((x - mean_a) ** 2 for x in a) / (len(a) - 1)
    var_b = sum((x - mean_b) ** 2 for x in b) / (len(b) - 1)
    if var_a == 0 and var_b == 0:
        # Degenerate variances: direction of the means decides.
        if mean_a == mean_b:
            z_obs = 0.0
        else:
            z_obs = math.copysign(math.inf, mean_a - mean_b)
    else:
        z_obs = (mean_a - mean_b) / math.sqrt(var_a / len(a) + var_b / len(b))
    z_crit = NormalDist().inv_cdf(1.0 - alpha)
    decision = "reject_h0" if z_obs > z_crit else "accept_h0"
    return ZTestResult(
        z_obs=z_obs,
        z_crit=z_crit,
        alpha=alpha,
        mean_a=mean_a,
        mean_b=mean_b,
        decision=decision,
    )
