"""Confusion matrix, accuracy and per-class precision/recall/F1.

Classes follow the polarity encoding: 0 Neutral, 1 Negative, 2 Positive.
Rows of the matrix are true classes, columns are predictions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

CLASSES = (0, 1, 2)
CLASS_NAMES = ("Neutral", "Negative", "Positive")


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def row_normalized(self) -> np.ndarray:
        rows = self.counts.sum(axis=1, keepdims=True)
        return np.divide(self.counts, rows, out=np.zeros(self.counts.shape), where=rows > 0)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    degenerate: bool = False


def confusion(y_true, y_pred, n_classes: int = 3) -> ConfusionMatrix:
    y_true = np.asarray([int(v) for v in y_true], dtype=np.int64)
    y_pred = np.asarray([int(v) for v in y_pred], dtype=np.int64)
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {len(y_true)} true vs {len(y_pred)} predicted")
    if y_true.size == 0:
        raise ValueError("no samples")
    if y_true.min() < 0 or y_pred.min() < 0 or max(y_true.max(), y_pred.max()) >= n_classes:
        raise ValueError("class index out of range")
    counts = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(counts, (y_true, y_pred), 1)
    return ConfusionMatrix(counts)


def _ratio(num: float, den: float) -> tuple[float, bool]:
    return (num / den, False) if den else (0.0, True)


def f1_score(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


def precision_recall_f1(matrix: ConfusionMatrix, class_k: int) -> ClassMetrics:
    """Per-class scores; any 0/0 yields 0 and sets ``degenerate``."""
    c = matrix.counts
    tp = int(c[class_k, class_k])
    fp = int(c[:, class_k].sum()) - tp
    fn = int(c[class_k, :].sum()) - tp
    p, p_bad = _ratio(tp, tp + fp)
    r, r_bad = _ratio(tp, tp + fn)
    f1_bad = p + r == 0
    return ClassMetrics(precision=p, recall=r, f1=f1_score(p, r), degenerate=p_bad or r_bad or f1_bad)


def accuracy(matrix: ConfusionMatrix) -> float:
    return float(np.trace(matrix.counts)) / matrix.total


@dataclass(frozen=True)
class EvaluationReport:
    matrix: ConfusionMatrix
    per_class: tuple[ClassMetrics, ...]
    accuracy: float
    support: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "confusion_matrix": self.matrix.counts.tolist(),
            "confusion_row_normalized": self.matrix.row_normalized().tolist(),
            "orientation": "rows=true class, columns=predicted class",
            "classes": {
                str(k): {"name": CLASS_NAMES[k], "precision": m.precision, "recall": m.recall,
                         "f1": m.f1, "support": self.support[k], "degenerate": m.degenerate}
                for k, m in enumerate(self.per_class)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self, title: str = "") -> str:
        lines = [f"{title:<10}{'':<12}{'Precision':>10}{'Recall':>10}{'F1-Score':>10}{'Support':>10}"]
        for k, m in enumerate(self.per_class):
            lines.append(f"{'':<10}{f'Class - {k}':<12}{m.precision:>10.2f}{m.recall:>10.2f}"
                         f"{m.f1:>10.2f}{self.support[k]:>10d}")
        lines.append(f"{'':<10}{'Accuracy':<12}{self.accuracy:>10.4f}")
        lines.append("Neutral: Class - 0, Negative: Class - 1, Positive: Class - 2")
        return "\n".join(lines) + "\n"


def evaluate(y_true, y_pred) -> EvaluationReport:
    m = confusion(y_true, y_pred)
    per_class = tuple(precision_recall_f1(m, k) for k in CLASSES)
    support = tuple(int(v) for v in m.counts.sum(axis=1))
    return EvaluationReport(matrix=m, per_class=per_class, accuracy=accuracy(m), support=support)
