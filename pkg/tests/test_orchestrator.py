from __future__ import annotations

import hashlib
import json
from pathlib import Path

import pytest

from evisynth.pipeline import RunConfig, load_config, report_run, run
from evisynth.pipeline.cli import main as cli_main
from make_fixture_corpus import build_corpus

# Artefact set covered by the determinism contract; logs with wall-clock
# content (run_summary, usage ledger) and timestamped PDFs are excluded.
HASHED_PATTERNS = [
    "lassa/articles/articles.csv",
    "lassa/articles/articles.jsonl",
    "lassa/screening/decisions_abstract.csv",
    "lassa/screening/decisions_fulltext.csv",
    "lassa/screening/decisions_final.csv",
    "lassa/markdown/*.md",
    "lassa/extractions/*.jsonl",
    "lassa/extractions/*.csv",
    "lassa/extractions/flags.json",
    "lassa/evaluation/evaluation.json",
    "writeup/lassa/content_manifest.json",
    "writeup/lassa/models_content_manifest.json",
    "writeup/lassa/outbreaks_writeup.md",
    "writeup/lassa/models_writeup.md",
    "writeup/lassa/figures/*.png",
]


def artefact_hashes(root: Path) -> dict[str, str]:
    hashes = {}
    for pattern in HASHED_PATTERNS:
        for path in sorted(root.glob(pattern)):
            rel = str(path.relative_to(root))
            hashes[rel] = hashlib.sha256(path.read_bytes()).hexdigest()
    return hashes


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    return build_corpus(tmp_path_factory.mktemp("corpus"))


@pytest.fixture(scope="module")
def finished_run(corpus):
    config = load_config(corpus / "config.json")
    summary = run(config)
    return corpus, config, summary


def test_all_stage_artefacts_present(finished_run):
    corpus, config, summary = finished_run
    root = Path(config.output_root)
    expected = [
        "lassa/articles/articles.csv",
        "lassa/articles/articles.jsonl",
        "lassa/screening/decisions_abstract.csv",
        "lassa/screening/decisions_fulltext.csv",
        "lassa/screening/decisions_final.csv",
        "lassa/markdown/A001.md",
        "lassa/markdown/A002.md",
        "lassa/markdown/A003.md",
        "lassa/extractions/parameters.jsonl",
        "lassa/extractions/models.jsonl",
        "lassa/extractions/outbreaks.jsonl",
        "lassa/extractions/provenance.jsonl",
        "lassa/extractions/flags.json",
        "lassa/evaluation/evaluation.json",
        "writeup/lassa/content_manifest.json",
        "writeup/lassa/outbreaks_writeup.md",
        "writeup/lassa/outbreaks_writeup.pdf",
        "writeup/lassa/models_writeup.md",
    ]
    for rel in expected:
        assert (root / rel).exists(), f"missing artefact {rel}"
    assert [s.stage for s in summary.stages] == list(config.stages)


def test_funnel_counts(finished_run):
    _, config, summary = finished_run
    by_stage = {s.stage: s for s in summary.stages}
    assert by_stage["retrieve"].articles_out == 3
    assert by_stage["screen-abstract"].articles_out == 2  # A003 excluded
    assert by_stage["convert"].articles_out == 3  # every PDF converted
    assert by_stage["screen-fulltext"].articles_in == 2
    assert by_stage["screen-fulltext"].articles_out == 2
    assert by_stage["extract"].articles_in == 2


def test_extractions_content(finished_run):
    _, config, _ = finished_run
    from evisynth.extraction.records import read_records_jsonl

    extractions = Path(config.output_root) / "lassa" / "extractions"
    parameters = list(read_records_jsonl(extractions / "parameters.jsonl"))
    models = list(read_records_jsonl(extractions / "models.jsonl"))
    outbreaks = list(read_records_jsonl(extractions / "outbreaks.jsonl"))
    assert len(parameters) == 4
    assert len(models) == 1
    assert len(outbreaks) == 1
    severity = next(p for p in parameters if p.parameter_class == "severity")
    assert severity.value == 0.25
    assert severity.population.population_sample_type == "hospital based"
    assert models[0].compartmental_type == "SEIR"
    assert outbreaks[0].cases_confirmed == 120


def test_no_persisted_record_violates_schema(finished_run):
    _, config, _ = finished_run
    from evisynth.extraction import catalog
    from evisynth.extraction.records import read_records_jsonl
    from evisynth.extraction.schema import validate_payload
    from evisynth.review.store import _record_payload

    extractions = Path(config.output_root) / "lassa" / "extractions"
    for name, schema_for in (
            ("models.jsonl", lambda r: catalog.MODEL_SCHEMA),
            ("outbreaks.jsonl", lambda r: catalog.OUTBREAK_SCHEMA),
            ("parameters.jsonl",
             lambda r: catalog.PARAMETER_VALUE_SCHEMAS[r.parameter_class])):
        for record in read_records_jsonl(extractions / name):
            errors = validate_payload(_record_payload(record),
                                      schema_for(record))
            assert errors == [], (name, record.id, errors)


def test_provenance_written_and_verified(finished_run):
    _, config, _ = finished_run
    from evisynth.extraction.records import read_provenance_jsonl

    traces = list(read_provenance_jsonl(
        Path(config.output_root) / "lassa" / "extractions"
        / "provenance.jsonl"))
    assert len(traces) == 6  # 4 parameters + 1 model + 1 outbreak
    for trace in traces:
        assert trace.entries, f"trace {trace.extraction_id} has no entries"
        assert all(e.verified for e in trace.entries), trace.extraction_id


def test_evaluation_report_written(finished_run):
    _, config, _ = finished_run
    with open(Path(config.output_root) / "lassa" / "evaluation"
              / "evaluation.json", encoding="utf-8") as f:
        report = json.load(f)
    assert report["articles"] == 2
    assert report["data_types"]["model"]["flagging"]["f1"] == 1.0
    assert report["data_types"]["outbreak"]["count"]["tp"] == 1
    severity = report["data_types"]["severity"]
    assert severity["flagging"]["f1"] == 1.0


def test_report_checks_hold_on_final_writeups(finished_run):
    _, config, _ = finished_run
    from evisynth.report.checks import missing_figures, missing_table_values
    from evisynth.report.manifest import load_manifest

    writeup = Path(config.output_root) / "writeup" / "lassa"
    for manifest_name, md_name in (
            ("content_manifest.json", "outbreaks_writeup.md"),
            ("models_content_manifest.json", "models_writeup.md")):
        manifest = load_manifest(writeup / manifest_name)
        draft = (writeup / md_name).read_text(encoding="utf-8")
        assert missing_figures(draft, manifest) == []
        assert missing_table_values(
            draft, [t.markdown for t in manifest.tables]) == []
        for figure in manifest.figures:
            assert (writeup / figure.path).exists()


def test_run_depterministic_across_fresh_runs(corpus, finished_run):
    _, config, _ = finished_run
    first = artefact_hashes(Path(config.output_root))
    assert first, "no artefacts hashed"

    second_config = load_config(corpus / "config.json")
    second_config.output_root = str(Path(config.output_root).parent / "run2")
    run(second_config)
    second = artefact_hashes(Path(second_config.output_root))
    assert first == second


def test_resume_skips_completed_stages(finished_run):
    corpus, config, _ = finished_run
    resumed = run(load_config(corpus / "config.json"), resume=True)
    assert all(s.skipped for s in resumed.stages)


def test_report_run_table(finished_run):
    _, _, summary = finished_run
    table = report_run(summary)
    assert "retrieve" in table and "Total" in table
    assert "Tokens:" in table
    doc = json.loads(report_run(summary, as_json=True))
    assert doc["pathogen"] == "lassa"
    assert len(doc["stages"]) == 7


def test_cli_eval_only(corpus, finished_run, capsys):
    # evaluate stage alone against existing run outputs
    rc = cli_main(["eval", "--config", str(corpus / "config.json")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "evaluate" in out
    assert "Flagging" in out


def test_cli_report_verb(corpus, finished_run, capsys):
    config = load_config(corpus / "config.json")
    rc = cli_main(["report", "--run-dir", config.output_root,
                   "--pathogen", "lassa"])
    assert rc == 0
    assert "Run report for lassa" in capsys.readouterr().out


def test_stage_order_validation():
    with pytest.raises(ValueError):
        RunConfig(pathogen="x", output_root="/tmp/x",
                  stages=["extract", "retrieve"])
    with pytest.raises(ValueError):
        RunConfig(pathogen="x", output_root="/tmp/x", stages=["bogus"])
