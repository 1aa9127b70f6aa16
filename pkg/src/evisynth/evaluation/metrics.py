"""Metric families: Flagging, Count, Extraction, screening
classification, and the percentile bootstrap.

All three extraction-stage families reduce to precision/recall/F1 over
differently defined TP/FP/FN counts; Count uses partial credit
(TP = min(n, n̂)) and Extraction counts field-level agreement inside
optimally matched pairs only, so over-extraction is penalised once by
Count and never contaminates field scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .matching import optimal_matching
from .similarity import WeightProfile, get_field, jaccard, value_set


@dataclass(frozen=True)
class MetricTriple:
    precision: float
    recall: float
    f1: float
    tp: float = 0
    fp: float = 0
    fn: float = 0

    @classmethod
    def from_counts(cls, tp: float, fp: float, fn: float) -> "MetricTriple":
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = (2 * precision * recall / (precision + recall)
              if precision + recall > 0 else 0.0)
        return cls(precision, recall, f1, tp, fp, fn)

    def as_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall,
                "f1": self.f1, "tp": self.tp, "fp": self.fp, "fn": self.fn}


def flagging_metric(corpus, data_type: str) -> MetricTriple:
    """Binary presence agreement per (article, data_type) pair."""
    tp = fp = fn = 0
    for article_id in corpus.article_ids:
        y = (article_id, data_type) in corpus.truth_flags
        y_hat = (article_id, data_type) in corpus.pred_flags
        if y and y_hat:
            tp += 1
        elif y_hat:
            fp += 1
        elif y:
            fn += 1
    return MetricTriple.from_counts(tp, fp, fn)


def count_metric(corpus, data_type: str) -> MetricTriple:
    """Partial-credit agreement on per-article extraction counts.

    TP = min(n, n̂), FP = max(0, n̂ - n), FN = max(0, n - n̂), summed
    over articles before computing precision and recall.
    """
    tp = fp = fn = 0
    for article_id in corpus.article_ids:
        n = len(corpus.truth_records(article_id, data_type))
        n_hat = len(corpus.pred_records(article_id, data_type))
        tp += min(n, n_hat)
        fp += max(0, n_hat - n)
        fn += max(0, n - n_hat)
    return MetricTriple.from_counts(tp, fp, fn)


def _field_counts(truth_value, pred_value) -> tuple[int, int, int]:
    """TP/FP/FN contribution of one field inside a matched pair."""
    truth_set = value_set(truth_value)
    pred_set = value_set(pred_value)
    if isinstance(truth_value, (list, tuple, set)) \
            or isinstance(pred_value, (list, tuple, set)):
        return (len(truth_set & pred_set), len(pred_set - truth_set),
                len(truth_set - pred_set))
    # single-value: equality is TP; disagreement both FP and FN;
    # null-vs-value counts the one-sided error only
    if not truth_set and not pred_set:
        return 0, 0, 0
    if not truth_set:
        return 0, 1, 0
    if not pred_set:
        return 0, 0, 1
    if jaccard(truth_value, pred_value) == 1.0:
        return 1, 0, 0
    return 0, 1, 1


def extraction_metric(corpus, data_type: str, profile: WeightProfile) -> dict:
    """Field-level agreement inside optimally matched pairs.

    Returns per-field, per-group, and overall MetricTriples, aggregated
    across pairs and articles.
    """
    counts: dict[str, list[int]] = {name: [0, 0, 0] for name in profile.fields}
    for article_id in corpus.article_ids:
        truth_list = corpus.truth_records(article_id, data_type)
        pred_list = corpus.pred_records(article_id, data_type)
        matching = optimal_matching(truth_list, pred_list, profile)
        for ti, pj, _ in matching.pairs:
            for name in profile.fields:
                tp, fp, fn = _field_counts(get_field(truth_list[ti], name),
                                           get_field(pred_list[pj], name))
                counts[name][0] += tp
                counts[name][1] += fp
                counts[name][2] += fn

    per_field = {name: MetricTriple.from_counts(*c) for name, c in counts.items()}
    group_counts: dict[str, list[int]] = {}
    for name, c in counts.items():
        group = profile.groups[name]
        bucket = group_counts.setdefault(group, [0, 0, 0])
        for k in range(3):
            bucket[k] += c[k]
    per_group = {g: MetricTriple.from_counts(*c) for g, c in group_counts.items()}
    overall = MetricTriple.from_counts(
        sum(c[0] for c in counts.values()),
        sum(c[1] for c in counts.values()),
        sum(c[2] for c in counts.values()))
    return {"per_field": per_field, "per_group": per_group, "overall": overall}


def classification_metrics(decisions: dict[str, str],
                           truth_labels: dict[str, str],
                           positive: str = "Include") -> dict:
    """Screening metrics: P/R/F1 on the include class plus macro-F1
    weighting include and exclude performance equally."""
    shared = sorted(set(decisions) & set(truth_labels))

    def side(positive_label: str) -> MetricTriple:
        tp = fp = fn = 0
        for article_id in shared:
            predicted = decisions[article_id] == positive_label
            actual = truth_labels[article_id] == positive_label
            if predicted and actual:
                tp += 1
            elif predicted:
                fp += 1
            elif actual:
                fn += 1
        return MetricTriple.from_counts(tp, fp, fn)

    include = side(positive)
    negatives = {truth_labels[a] for a in shared if truth_labels[a] != positive}
    negatives |= {decisions[a] for a in shared if decisions[a] != positive}
    exclude_label = next(iter(negatives), "Exclude")
    exclude = side(exclude_label)
    return {"include": include, "exclude": exclude,
            "macro_f1": (include.f1 + exclude.f1) / 2}


def bootstrap_ci(statistic: Callable[[Sequence], float], samples: Sequence,
                 resamples: int = 10000, seed: int = 0,
                 confidence: float = 0.95) -> tuple[float, float, float]:
    """Percentile bootstrap over article-level resampling.

    Deterministic for a fixed seed: returns (point, lower, upper) where
    point = statistic(samples) and the bounds are the percentile
    interval over ``resamples`` draws with replacement.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("bootstrap_ci needs at least one sample")
    rng = np.random.default_rng(seed)
    n = len(samples)
    point = float(statistic(samples))
    stats = np.empty(resamples)
    index_matrix = rng.integers(0, n, size=(resamples, n))
    for row in range(resamples):
        stats[row] = statistic([samples[i] for i in index_matrix[row]])
    alpha = (1.0 - confidence) / 2.0
    lower, upper = np.percentile(stats, [100 * alpha, 100 * (1 - alpha)])
    return point, float(lower), float(upper)
