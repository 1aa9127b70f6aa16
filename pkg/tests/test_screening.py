from __future__ import annotations

import hashlib
import itertools

import pytest
from hypothesis import given, strategies as st

from evisynth.llm.gateway import Gateway
from evisynth.llm.mock import ScriptedBackend
from evisynth.screening import (
    FullTextArticle,
    ScreeningCriteria,
    Stage,
    StrategyMode,
    Verdict,
    assemble_prompt,
    compose_strategy,
    default_criteria,
    load_criteria,
    parse_decision,
    run_stage,
    save_criteria,
)


# ------------------------------------------------------------ parse_decision

def test_parse_include():
    assert parse_decision("...reasoning...\n<decision>INCLUDE</decision>") \
        == Verdict.INCLUDE


def test_parse_exclude():
    assert parse_decision("...\n<decision>EXCLUDE</decision>") == Verdict.EXCLUDE


def test_last_tag_wins():
    text = ("<decision>INCLUDE</decision> but on reflection\n"
            "<decision>EXCLUDE</decision>")
    assert parse_decision(text) == Verdict.EXCLUDE


def test_missing_tag_defaults_include():
    assert parse_decision("no tag at all") == Verdict.INCLUDE


def test_tags_are_case_sensitive():
    assert parse_decision("<decision>exclude</decision>") == Verdict.INCLUDE


@given(st.text().filter(lambda t: "<decision>" not in t))
def test_appending_include_tag_yields_include(prefix):
    assert parse_decision(prefix + "\n<decision>INCLUDE</decision>") \
        == Verdict.INCLUDE


# ------------------------------------------------------------------ prompts

def test_abstract_prompt_contents(make_record):
    article = make_record(title="Lassa in Nigeria", abstract="We measured R0.")
    criteria = default_criteria("Lassa fever", Stage.ABSTRACT)
    req = assemble_prompt(article, criteria)
    assert "<decision>EXCLUDE</decision>" in req.user_text
    assert "<decision>INCLUDE</decision>" in req.user_text
    assert "inclusively screen abstracts" in req.user_text
    assert "Lassa in Nigeria" in req.user_text
    # ScreenPrompt ordering: objectives, inclusion, exclusion, content,
    # instructions
    t = req.user_text
    assert (t.index("Study Objectives") < t.index("Inclusion Criteria")
            < t.index("Exclusion Criteria") < t.index("Abstract (To Screen)")
            < t.index("Screening Instructions"))


def test_fulltext_prompt_contents():
    criteria = default_criteria("Lassa fever", Stage.FULLTEXT)
    doc = FullTextArticle("A1", "Lassa outbreak", "# Title\nBody text")
    req = assemble_prompt(doc, criteria)
    assert "Case studies/reports with <10 human cases" in req.user_text
    assert "extractable quantitative data" in req.user_text


def test_empty_abstract_rejected(make_record):
    criteria = default_criteria("Lassa fever", Stage.ABSTRACT)
    with pytest.raises(ValueError):
        assemble_prompt(make_record(abstract=None), criteria)


def test_prompt_assembly_deterministic(make_record):
    article = make_record(title="T", abstract="A")
    criteria = default_criteria("Zika virus", Stage.ABSTRACT)
    first = assemble_prompt(article, criteria)
    second = assemble_prompt(article, criteria)
    assert first.user_text == second.user_text
    assert first.system_text == second.system_text
    digest = hashlib.sha256(first.user_text.encode()).hexdigest()
    assert digest == hashlib.sha256(second.user_text.encode()).hexdigest()


def test_fulltext_criteria_invariant_enforced():
    with pytest.raises(ValueError):
        ScreeningCriteria("obj", ["anything"], ["whatever"], Stage.FULLTEXT)


def test_criteria_round_trip(tmp_path):
    criteria = default_criteria("Nipah virus", Stage.FULLTEXT)
    save_criteria(criteria, tmp_path / "crit.json")
    assert load_criteria(tmp_path / "crit.json") == criteria


# ---------------------------------------------------------------- run_stage

def test_run_stage_decisions(make_record):
    backend = ScriptedBackend([
        {"when": {"user_contains": "Alpha"},
         "text": "looks good\n<decision>INCLUDE</decision>"},
        {"when": {"user_contains": "Beta"},
         "text": "not relevant\n<decision>EXCLUDE</decision>"},
    ])
    articles = [make_record(title="Alpha", abstract="x"),
                make_record(title="Beta", abstract="y")]
    criteria = default_criteria("Lassa fever", Stage.ABSTRACT)
    decisions = run_stage(articles, criteria, Gateway(backend),
                          now_iso=lambda: "t")
    verdicts = {d.article_id: d.verdict for d in decisions}
    assert verdicts[articles[0].article_id] == Verdict.INCLUDE
    assert verdicts[articles[1].article_id] == Verdict.EXCLUDE


def test_run_stage_missing_tag_flagged(make_record):
    backend = ScriptedBackend([
        {"when": {"user_contains": "Alpha"}, "text": "I cannot decide."},
    ])
    articles = [make_record(title="Alpha", abstract="x")]
    criteria = default_criteria("Lassa fever", Stage.ABSTRACT)
    (decision,) = run_stage(articles, criteria, Gateway(backend),
                            now_iso=lambda: "t")
    assert decision.verdict == Verdict.INCLUDE
    assert "missing_tag" in decision.flags


def test_run_stage_transport_failure_flagged(make_record):
    from evisynth.llm.gateway import TransportFailure

    class Broken:
        def chat(self, payload):
            raise TransportFailure("down")

    articles = [make_record(title="Alpha", abstract="x")]
    criteria = default_criteria("Lassa fever", Stage.ABSTRACT)
    gw = Gateway(Broken(), sleep=lambda s: None)
    (decision,) = run_stage(articles, criteria, gw, now_iso=lambda: "t")
    assert decision.verdict == Verdict.INCLUDE
    assert "error" in decision.flags


# ---------------------------------------------------------- compose_strategy

I, E = Verdict.INCLUDE, Verdict.EXCLUDE


def test_two_stage_gate():
    final = compose_strategy({"a": E}, {"a": I}, None, StrategyMode.TWO_STAGE_AI)
    assert final == {"a": E}


def test_direct_fulltext_ignores_abstract():
    final = compose_strategy({"a": E}, {"a": I}, None,
                             StrategyMode.DIRECT_FULLTEXT)
    assert final == {"a": I}


def test_all_include():
    final = compose_strategy({"a": I}, {"a": I}, {"a": I},
                             StrategyMode.HUMAN_ABSTRACT_THEN_AI)
    assert final == {"a": I}


def test_truth_tables_all_modes():
    for abstract, fulltext in itertools.product((I, E), repeat=2):
        two = compose_strategy({"a": abstract}, {"a": fulltext}, None,
                               StrategyMode.TWO_STAGE_AI)["a"]
        human = compose_strategy({}, {"a": fulltext}, {"a": abstract},
                                 StrategyMode.HUMAN_ABSTRACT_THEN_AI)["a"]
        direct = compose_strategy({"a": abstract}, {"a": fulltext}, None,
                                  StrategyMode.DIRECT_FULLTEXT)["a"]
        expected_gated = I if abstract == I and fulltext == I else E
        assert two == expected_gated
        assert human == expected_gated
        assert direct == fulltext


def test_human_mode_requires_map():
    with pytest.raises(ValueError):
        compose_strategy({}, {"a": I}, None, StrategyMode.HUMAN_ABSTRACT_THEN_AI)


def test_two_stage_subset_property():
    abstract = {f"a{i}": (I if i % 2 else E) for i in range(10)}
    fulltext = {f"a{i}": (I if i % 3 else E) for i in range(10)}
    final = compose_strategy(abstract, fulltext, None,
                             StrategyMode.TWO_STAGE_AI)
    included = {k for k, v in final.items() if v == I}
    abstract_included = {k for k, v in abstract.items() if v == I}
    assert included <= abstract_included


@given(st.dictionaries(st.sampled_from([f"a{i}" for i in range(8)]),
                       st.sampled_from([I, E])),
       st.dictionaries(st.sampled_from([f"a{i}" for i in range(8)]),
                       st.sampled_from([I, E])))
def test_direct_fulltext_independent_of_abstract(abstract, fulltext):
    base = compose_strategy(abstract, fulltext, None,
                            StrategyMode.DIRECT_FULLTEXT)
    permuted = {k: (I if v == E else E) for k, v in abstract.items()}
    assert compose_strategy(permuted, fulltext, None,
                            StrategyMode.DIRECT_FULLTEXT) == base
