from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evisynth.evaluation import (
    AlignedCorpus,
    ArticleSide,
    MetricTriple,
    TWO_FIELD_DEMO_PROFILE,
    WeightProfile,
    align_articles,
    bootstrap_ci,
    classification_metrics,
    count_metric,
    extraction_metric,
    field_similarity,
    filter_ground_truth,
    flagging_metric,
    jaccard,
    optimal_matching,
    solve_assignment,
)
from evisynth.evaluation.corpus import evaluation_report, format_report_table
from oracles import brute_force_best_total

# Worked matching example: two reference models vs three extracted.
TRUTH_MODELS = [
    {"model_type": "SIR", "interventions_type": ["Vaccination"]},
    {"model_type": "SEIR", "interventions_type": ["Quarantine", "Vaccination"]},
]
PRED_MODELS = [
    {"model_type": "SIR", "interventions_type": ["Vaccination"]},
    {"model_type": "SIR", "interventions_type": ["Treatment"]},
    {"model_type": "SEIR", "interventions_type": ["Quarantine", "Vaccination"]},
]
EXPECTED_S = [[1.00, 0.50, 0.25], [0.25, 0.00, 1.00]]


# ------------------------------------------------------------- similarity

def test_similarity_cells_reproduced_exactly():
    for i, truth in enumerate(TRUTH_MODELS):
        for j, pred in enumerate(PRED_MODELS):
            s = field_similarity(truth, pred, TWO_FIELD_DEMO_PROFILE)
            assert s == pytest.approx(EXPECTED_S[i][j], abs=0)


def test_similarity_identical_records():
    assert field_similarity(TRUTH_MODELS[0], TRUTH_MODELS[0],
                            TWO_FIELD_DEMO_PROFILE) == 1.0


def test_similarity_fully_disjoint():
    a = {"model_type": "SIR", "interventions_type": ["Vaccination"]}
    b = {"model_type": "SEIR", "interventions_type": ["Treatment"]}
    assert field_similarity(a, b, TWO_FIELD_DEMO_PROFILE) == 0.0


def test_similarity_symmetric_and_bounded():
    rng = np.random.default_rng(0)
    options = ["Vaccination", "Quarantine", "Treatment", "Hospitals"]
    types = ["SIR", "SEIR", "SIS"]
    for _ in range(100):
        a = {"model_type": str(rng.choice(types)),
             "interventions_type": list(rng.choice(options, rng.integers(0, 4),
                                                   replace=False))}
        b = {"model_type": str(rng.choice(types)),
             "interventions_type": list(rng.choice(options, rng.integers(0, 4),
                                                   replace=False))}
        s_ab = field_similarity(a, b, TWO_FIELD_DEMO_PROFILE)
        s_ba = field_similarity(b, a, TWO_FIELD_DEMO_PROFILE)
        assert s_ab == s_ba
        assert 0.0 <= s_ab <= 1.0
        assert field_similarity(a, a, TWO_FIELD_DEMO_PROFILE) == 1.0


def test_jaccard_conventions():
    assert jaccard(None, None) == 1.0
    assert jaccard(["A"], None) == 0.0
    assert jaccard(["A", "B"], ["B", "A"]) == 1.0
    assert jaccard(["A"], ["A", "B"]) == 0.5
    assert jaccard(5, 5.0) == 1.0
    assert jaccard("5", 5.0) == 1.0  # canonical float parsing


def test_weights_normalised():
    profile = WeightProfile(weights={"a": 2.0, "b": 2.0})
    assert profile.weights == {"a": 0.5, "b": 0.5}


# --------------------------------------------------------------- matching

def test_worked_example_matching():
    result = solve_assignment(EXPECTED_S)
    assert result.total_similarity == pytest.approx(2.00, abs=0)
    assert {(i, j) for i, j, _ in result.pairs} == {(0, 0), (1, 2)}
    assert result.unmatched_pred == [1]
    assert result.unmatched_truth == []


def test_matching_from_records_matches_matrix():
    result = optimal_matching(TRUTH_MODELS, PRED_MODELS,
                              TWO_FIELD_DEMO_PROFILE)
    assert result.total_similarity == pytest.approx(2.00, abs=0)
    assert {(i, j) for i, j, _ in result.pairs} == {(0, 0), (1, 2)}


def test_single_pair_matched_regardless_of_similarity():
    result = solve_assignment([[0.0]])
    assert result.pairs == [(0, 0, 0.0)]


def test_empty_lists_empty_matching():
    result = optimal_matching([], [], TWO_FIELD_DEMO_PROFILE)
    assert result.pairs == []
    assert result.total_similarity == 0.0


def test_matching_agrees_with_brute_force_random():
    rng = np.random.default_rng(42)
    for _ in range(200):
        n, m = rng.integers(1, 7, size=2)
        S = rng.random((n, m))
        got = solve_assignment(S).total_similarity
        want = brute_force_best_total(S)
        assert abs(got - want) <= 1e-12


def test_matching_order_invariant():
    rng = np.random.default_rng(7)
    S = rng.random((4, 5))
    base = solve_assignment(S)
    perm = rng.permutation(5)
    permuted = solve_assignment(S[:, perm])
    assert permuted.total_similarity == pytest.approx(base.total_similarity)
    base_pairs = {(i, j) for i, j, _ in base.pairs}
    unpermuted_pairs = {(i, int(perm[j])) for i, j, _ in permuted.pairs}
    assert unpermuted_pairs == base_pairs


# ----------------------------------------------------------------- corpus

def corpus_from_counts(counts: dict[str, tuple[int, int]],
                       data_type: str = "model") -> AlignedCorpus:
    truth = ArticleSide.build(
        set(counts),
        {data_type: [{"article_id": a, "k": i}
                     for a, (n, _) in counts.items() for i in range(n)]})
    pred = ArticleSide.build(
        set(counts),
        {data_type: [{"article_id": a, "k": i}
                     for a, (_, n_hat) in counts.items() for i in range(n_hat)]})
    return align_articles(truth, pred)


def test_count_metric_worked_example():
    corpus = corpus_from_counts({"A": (2, 5)})
    triple = count_metric(corpus, "model")
    assert (triple.tp, triple.fp, triple.fn) == (2, 3, 0)


def test_count_metric_exact_and_under():
    assert count_metric(corpus_from_counts({"A": (3, 3)}), "model").as_dict() \
        == MetricTriple.from_counts(3, 0, 0).as_dict()
    triple = count_metric(corpus_from_counts({"A": (4, 1)}), "model")
    assert (triple.tp, triple.fp, triple.fn) == (1, 0, 3)


@settings(max_examples=200)
@given(st.dictionaries(st.sampled_from([f"A{i}" for i in range(12)]),
                       st.tuples(st.integers(0, 6), st.integers(0, 6)),
                       min_size=1))
def test_count_identities(counts):
    corpus = corpus_from_counts(counts)
    triple = count_metric(corpus, "model")
    assert triple.tp + triple.fp == sum(n_hat for _, n_hat in counts.values())
    assert triple.tp + triple.fn == sum(n for n, _ in counts.values())


def test_flagging_metric_worked():
    truth = ArticleSide({"X"}, {}, flags={("X", "A"), ("X", "B")})
    pred = ArticleSide({"X"}, {}, flags={("X", "A"), ("X", "C")})
    corpus = align_articles(truth, pred)
    for data_type, expected in (("A", (1, 0, 0)), ("B", (0, 0, 1)),
                                ("C", (0, 1, 0))):
        triple = flagging_metric(corpus, data_type)
        assert (triple.tp, triple.fp, triple.fn) == expected


def test_flagging_perfect_and_over():
    truth = ArticleSide({"X", "Y"}, {}, flags={("X", "m"), ("Y", "m")})
    pred = ArticleSide({"X", "Y"}, {}, flags={("X", "m"), ("Y", "m")})
    triple = flagging_metric(align_articles(truth, pred), "m")
    assert triple.precision == triple.recall == 1.0

    pred_all = ArticleSide({"X", "Y"}, {}, flags={("X", "m"), ("Y", "m")})
    truth_half = ArticleSide({"X", "Y"}, {}, flags={("X", "m")})
    triple = flagging_metric(align_articles(truth_half, pred_all), "m")
    assert triple.recall == 1.0 and triple.precision == 0.5


def test_align_articles_set_arithmetic():
    t = ArticleSide({"A", "B", "C", "D", "E"}, {})
    p = ArticleSide({"C", "D", "E", "F"}, {})
    assert align_articles(t, p).article_ids == ["C", "D", "E"]
    assert align_articles(ArticleSide({"A"}, {}),
                          ArticleSide({"B"}, {})).article_ids == []
    full = align_articles(ArticleSide({"A", "B"}, {}),
                          ArticleSide({"A", "B"}, {}))
    assert full.article_ids == ["A", "B"]


# ------------------------------------------------------- extraction metric

def matched_corpus(truth_recs, pred_recs) -> AlignedCorpus:
    for r in truth_recs + pred_recs:
        r["article_id"] = "A"
    return align_articles(ArticleSide.build({"A"}, {"model": truth_recs}),
                          ArticleSide.build({"A"}, {"model": pred_recs}))


def test_extraction_metric_field_counting():
    profile = WeightProfile(weights={"f1": 1, "f2": 1, "f3": 1, "f4": 1})
    truth = [{"f1": "x", "f2": "y", "f3": "z", "f4": "w"}]
    pred = [{"f1": "x", "f2": "y", "f3": "z", "f4": "DIFFERENT"}]
    out = extraction_metric(matched_corpus(truth, pred), "model", profile)
    overall = out["overall"]
    assert (overall.tp, overall.fp, overall.fn) == (3, 1, 1)


def test_extraction_metric_multivalue_sets():
    profile = WeightProfile(weights={"interventions_type": 1})
    truth = [{"interventions_type": ["Quarantine", "Vaccination"]}]
    pred = [{"interventions_type": ["Vaccination"]}]
    out = extraction_metric(matched_corpus(truth, pred), "model", profile)
    triple = out["per_field"]["interventions_type"]
    assert (triple.tp, triple.fp, triple.fn) == (1, 0, 1)


def test_extraction_metric_null_vs_value_one_sided():
    profile = WeightProfile(weights={"f": 1})
    out = extraction_metric(matched_corpus([{"f": None}], [{"f": "x"}]),
                            "model", profile)
    triple = out["per_field"]["f"]
    assert (triple.tp, triple.fp, triple.fn) == (0, 1, 0)
    out = extraction_metric(matched_corpus([{"f": "x"}], [{"f": None}]),
                            "model", profile)
    triple = out["per_field"]["f"]
    assert (triple.tp, triple.fp, triple.fn) == (0, 0, 1)


def test_extraction_metric_no_pairs_zero():
    profile = WeightProfile(weights={"f": 1})
    out = extraction_metric(matched_corpus([], []), "model", profile)
    assert out["overall"].as_dict() == MetricTriple.from_counts(0, 0, 0).as_dict()


def test_extraction_metric_group_rollup():
    profile = WeightProfile(weights={"a": 1, "b": 1},
                            groups={"a": "g1", "b": "g2"})
    truth = [{"a": "x", "b": "y"}]
    pred = [{"a": "x", "b": "z"}]
    out = extraction_metric(matched_corpus(truth, pred), "model", profile)
    assert out["per_group"]["g1"].tp == 1
    assert out["per_group"]["g2"].fp == 1


# ----------------------------------------------------------- classification

def test_classification_f1():
    decisions = {"a": "Include", "b": "Include"}
    truth = {"a": "Include", "b": "Exclude"}
    out = classification_metrics(decisions, truth)
    assert out["include"].precision == 0.5
    assert out["include"].recall == 1.0
    assert out["include"].f1 == pytest.approx(2 / 3)


def test_classification_all_correct_macro():
    decisions = {"a": "Include", "b": "Exclude"}
    out = classification_metrics(decisions, dict(decisions))
    assert out["macro_f1"] == 1.0


def test_classification_all_include_on_balanced_set():
    decisions = {f"x{i}": "Include" for i in range(10)}
    truth = {f"x{i}": ("Include" if i < 5 else "Exclude") for i in range(10)}
    out = classification_metrics(decisions, truth)
    assert out["exclude"].f1 == 0.0
    assert out["macro_f1"] == pytest.approx(out["include"].f1 / 2)


def test_metric_triple_f1_between_p_and_r():
    rng = np.random.default_rng(3)
    for _ in range(200):
        tp, fp, fn = rng.integers(0, 20, size=3)
        t = MetricTriple.from_counts(int(tp), int(fp), int(fn))
        assert min(t.precision, t.recall) - 1e-12 <= t.f1 \
            <= max(t.precision, t.recall) + 1e-12


# ---------------------------------------------------------------- bootstrap

def test_bootstrap_degenerate_constant():
    point, lower, upper = bootstrap_ci(lambda xs: 7.5, [1, 2, 3], 500, seed=1)
    assert point == lower == upper == 7.5


def test_bootstrap_deterministic_for_seed():
    samples = list(np.random.default_rng(0).random(50))
    first = bootstrap_ci(np.mean, samples, 2000, seed=42)
    second = bootstrap_ci(np.mean, samples, 2000, seed=42)
    assert first == second
    different = bootstrap_ci(np.mean, samples, 2000, seed=43)
    assert different != first


def test_bootstrap_coin_flip_interval_contains_half():
    rng = np.random.default_rng(11)
    samples = list((rng.random(1000) < 0.5).astype(float))
    point, lower, upper = bootstrap_ci(np.mean, samples, 2000, seed=5)
    assert lower < 0.5 < upper
    assert abs(point - 0.5) < 0.05


def test_bootstrap_empty_rejected():
    with pytest.raises(ValueError):
        bootstrap_ci(np.mean, [], 10, seed=0)


# ----------------------------------------------------------- ground truth

def test_filter_ground_truth_drops_invalid_enum():
    rows = [
        {"model_type": "Compartmental", "compartmental_type": "SEIR"},
        {"model_type": "A novel paradigm", "compartmental_type": "SEIR"},
        {"model_type": None},
    ]
    out = filter_ground_truth(rows, "model", source_label="test")
    assert out.invalid_dropped == 1
    assert len(out.records) == 2


def test_filter_ground_truth_empty():
    out = filter_ground_truth([], "outbreak")
    assert out.records == [] and out.invalid_dropped == 0


def test_filter_ground_truth_list_enums():
    rows = [{"interventions_type": ["Vaccination", "Wishful thinking"]}]
    assert filter_ground_truth(rows, "model").invalid_dropped == 1


# ------------------------------------------------------------------ report

def test_report_shape_and_table():
    corpus = corpus_from_counts({"A": (1, 1), "B": (2, 1)})
    report = evaluation_report(
        corpus, {"model": WeightProfile(weights={"k": 1})})
    assert "model" in report["data_types"]
    table = format_report_table(report)
    assert "Flagging" in table and "Extraction" in table
