"""Evaluation against ground truth: flagging/count/extraction metric
families, weighted similarity, optimal bipartite matching, and
bootstrap confidence intervals."""

from .similarity import (
    WeightProfile,
    field_similarity,
    jaccard,
    MODEL_PROFILE,
    OUTBREAK_PROFILE,
    PARAMETER_PROFILE,
    TWO_FIELD_DEMO_PROFILE,
)
from .matching import MatchingResult, optimal_matching, solve_assignment
from .metrics import (
    MetricTriple,
    bootstrap_ci,
    classification_metrics,
    count_metric,
    extraction_metric,
    flagging_metric,
)
from .corpus import (
    AlignedCorpus,
    ArticleSide,
    GroundTruthSet,
    align_articles,
    filter_ground_truth,
    evaluation_report,
    format_report_table,
    read_ground_truth_csv,
)

__all__ = [
    "WeightProfile",
    "field_similarity",
    "jaccard",
    "MODEL_PROFILE",
    "OUTBREAK_PROFILE",
    "PARAMETER_PROFILE",
    "TWO_FIELD_DEMO_PROFILE",
    "MatchingResult",
    "optimal_matching",
    "solve_assignment",
    "MetricTriple",
    "bootstrap_ci",
    "classification_metrics",
    "count_metric",
    "extraction_metric",
    "flagging_metric",
    "AlignedCorpus",
    "ArticleSide",
    "GroundTruthSet",
    "align_articles",
    "filter_ground_truth",
    "evaluation_report",
    "format_report_table",
    "read_ground_truth_csv",
]
