"""Stage execution for end-to-end runs.

Each stage reads the previous stage's persisted outputs and writes its
own directory plus a stage-metadata file (config hash + timestamp), so
completed stages are resumable and self-describing. A stage failure
halts the run; already-completed stages keep their outputs. With a
fixed timestamp, seeded ids, and deterministic mock backends, two runs
produce byte-identical artefacts.
"""

from __future__ import annotations

import json
import logging
import shutil
import time
from dataclasses import dataclass, field
from pathlib import Path

from .. import ids
from ..biblio import dedup, harvest as harvest_mod, queries
from ..biblio.cache import DiskCache
from ..biblio.download import Checkpoint, DownloadManager
from ..biblio.records import (
    ArticleRecord,
    read_articles_jsonl,
    write_articles_csv,
    write_articles_jsonl,
)
from ..biblio.resolve import IdConverter, resolve_identifiers
from ..biblio.transport import RequestsTransport
from ..convert.ocr import DirectoryOcrClient, HttpOcrClient, MarkdownDoc, convert_article
from ..evaluation.corpus import (
    ArticleSide,
    align_articles,
    evaluation_report,
    filter_ground_truth,
    read_ground_truth_csv,
    write_report,
)
from ..extraction import catalog
from ..extraction.pipelines import (
    clip_document,
    extract_models,
    extract_outbreaks,
    run_parameter_pipeline,
    screen_models,
    screen_outbreaks,
)
from ..extraction.provenance import extract_provenance
from ..extraction.records import (
    append_records_jsonl,
    read_records_jsonl,
    write_provenance_jsonl,
    write_records_csv,
)
from ..llm.gateway import Gateway, HttpBackend, UsageLedger, tally_usage
from ..llm.mock import ScriptedBackend
from ..report.checks import enforce_checks
from ..report.descriptives import compute_descriptives
from ..report.manifest import MODEL_SECTIONS, build_manifest
from ..report.packet import build_evidence_packet, build_initial_draft
from ..report.refine import initial_synthesis, refine
from ..report.render import render_pdf
from ..screening.criteria import Stage, default_criteria
from ..screening.decisions import (
    ScreeningDecision,
    StrategyMode,
    Verdict,
    compose_strategy,
    read_decisions_csv,
    run_stage as run_screening_stage,
    write_decisions_csv,
)
from ..screening.prompts import FullTextArticle
from .config import RunConfig

log = logging.getLogger(__name__)


@dataclass
class StageResult:
    stage: str
    articles_in: int
    articles_out: int
    seconds: float
    skipped: bool = False


@dataclass
class RunSummary:
    pathogen: str
    config_hash: str
    stages: list[StageResult] = field(default_factory=list)
    usage: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "pathogen": self.pathogen,
            "config_hash": self.config_hash,
            "stages": [vars(s) for s in self.stages],
            "usage": self.usage,
        }


class StageContext:
    """Shared handles built once per run: gateway, OCR client, clocks."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.ledger = UsageLedger(config.pathogen_dir() / "usage.jsonl"
                                  if config.output_root else None)
        if config.mock_llm_dir:
            backend = ScriptedBackend.from_dir(config.mock_llm_dir)
        elif config.endpoint_url:
            backend = HttpBackend(config.endpoint_url, config.api_key or None)
        else:
            backend = None
        self.gateway = Gateway(backend, ledger=self.ledger) if backend else None
        if config.mock_ocr_dir:
            self.ocr_client = DirectoryOcrClient(config.mock_ocr_dir)
        elif config.ocr_endpoint:
            self.ocr_client = HttpOcrClient(config.ocr_endpoint,
                                            config.ocr_api_key or None)
        else:
            self.ocr_client = None
        self.id_gen = ids.IdGenerator(seed=config.seed)

    def now_iso(self) -> str:
        if self.config.fixed_timestamp:
            return self.config.fixed_timestamp
        return time.strftime("%Y-%m-%dT%H:%M:%S+00:00", time.gmtime())

    def require_gateway(self) -> Gateway:
        if self.gateway is None:
            raise RuntimeError("no LLM endpoint configured: set endpoint_url "
                               "or mock_llm_dir")
        return self.gateway


def _stage_meta_path(stage_dir: Path) -> Path:
    return stage_dir / "stage_meta.json"


def _write_stage_meta(stage_dir: Path, stage: str, ctx: StageContext,
                      counts: dict) -> None:
    stage_dir.mkdir(parents=True, exist_ok=True)
    with open(_stage_meta_path(stage_dir), "w", encoding="utf-8") as f:
        json.dump({"stage": stage, "config_hash": ctx.config.config_hash(),
                   "timestamp": ctx.now_iso(), "counts": counts}, f, indent=2,
                  sort_keys=True)


def _stage_completed(stage_dir: Path, ctx: StageContext) -> bool:
    meta = _stage_meta_path(stage_dir)
    if not meta.exists():
        return False
    try:
        with open(meta, encoding="utf-8") as f:
            return json.load(f).get("config_hash") == ctx.config.config_hash()
    except (OSError, ValueError):
        return False


# ------------------------------------------------------------------ stages

def stage_retrieve(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    stage_dir = config.pathogen_dir() / "articles"
    pdf_dir = stage_dir / "pdfs"
    pdf_dir.mkdir(parents=True, exist_ok=True)

    if config.fixture_articles:
        records = list(read_articles_jsonl(config.fixture_articles))
        fixture_pdfs = Path(config.fixture_pdf_dir) if config.fixture_pdf_dir \
            else None
        out: list[ArticleRecord] = []
        for rec in records:
            rec.pathogen = config.pathogen
            rec.harvested_at = ctx.now_iso()
            source_pdf = (fixture_pdfs / f"{rec.article_id}.pdf"
                          if fixture_pdfs else None)
            if source_pdf and source_pdf.exists():
                dest = pdf_dir / f"{rec.article_id}.pdf"
                shutil.copyfile(source_pdf, dest)
                rec.downloaded = True
                rec.downloaded_path = str(dest)
                rec.download_source = "fixture"
                rec.download_attempted_at = ctx.now_iso()
            out.append(rec)
        records = dedup.quality_control(dedup.deduplicate(out))
    else:
        transport = RequestsTransport()
        if config.query_config_file:
            query_config = queries.load_pathogen_config(config.query_config_file)
        else:
            query_config = queries.DEFAULT_PATHOGEN_CONFIGS.get(config.pathogen)
        if query_config is None:
            raise RuntimeError(f"no query config for pathogen "
                               f"{config.pathogen!r}; provide "
                               "query_config_file")
        harvested: list[ArticleRecord] = []
        for database in config.databases:
            query = queries.build_query(query_config, database)
            harvested.extend(harvest_mod.harvest(
                query, database, transport, pathogen=config.pathogen,
                id_gen=ctx.id_gen, now_iso=ctx.now_iso))
        records = dedup.deduplicate(harvested)
        cache = DiskCache(stage_dir / "cache")
        converter = IdConverter(transport, cache=cache)
        records = [resolve_identifiers(r, converter) for r in records]
        manager = DownloadManager(pdf_dir, transport, cache=cache,
                                  unpaywall_email=config.unpaywall_email
                                  or None, now_iso=ctx.now_iso)
        checkpoint = Checkpoint(stage_dir / "checkpoint.json")
        records = manager.run(records, workers=config.download_workers,
                              checkpoint=checkpoint)
        records = dedup.quality_control(records)

    # store portable paths: artefacts must not embed the run directory
    root = Path(config.output_root).resolve()
    for rec in records:
        if rec.downloaded_path:
            path = Path(rec.downloaded_path).resolve()
            if path.is_relative_to(root):
                rec.downloaded_path = str(path.relative_to(root))
    write_articles_csv(records, stage_dir / "articles.csv")
    write_articles_jsonl(records, stage_dir / "articles.jsonl")
    _write_stage_meta(stage_dir, "retrieve", ctx, {"articles": len(records)})
    return len(records), len(records)


def _load_articles(config: RunConfig) -> list[ArticleRecord]:
    path = config.pathogen_dir() / "articles" / "articles.jsonl"
    if not path.exists():
        raise RuntimeError("retrieve stage outputs missing; run it first")
    return list(read_articles_jsonl(path))


def stage_screen_abstract(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    stage_dir = config.pathogen_dir() / "screening"
    articles = _load_articles(config)
    criteria = default_criteria(config.pathogen_name, Stage.ABSTRACT)
    decisions = run_screening_stage(
        articles, criteria, ctx.require_gateway(),
        model_name=config.model_name, workers=config.workers,
        now_iso=ctx.now_iso)
    write_decisions_csv(decisions, stage_dir / "decisions_abstract.csv",
                        stage_dir / "transcripts_abstract")
    included = sum(1 for d in decisions if d.verdict == Verdict.INCLUDE)
    _write_stage_meta(stage_dir, "screen-abstract", ctx,
                      {"screened": len(decisions), "included": included})
    return len(articles), included


def _abstract_verdicts(config: RunConfig) -> dict[str, str]:
    path = config.pathogen_dir() / "screening" / "decisions_abstract.csv"
    if not path.exists():
        return {}
    return {d.article_id: d.verdict for d in read_decisions_csv(path)}


def _human_verdicts(config: RunConfig) -> dict[str, str] | None:
    if not config.human_abstract_csv:
        return None
    return {d.article_id: d.verdict
            for d in read_decisions_csv(config.human_abstract_csv)}


def stage_convert(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    stage_dir = config.pathogen_dir() / "markdown"
    stage_dir.mkdir(parents=True, exist_ok=True)
    if ctx.ocr_client is None:
        raise RuntimeError("no OCR backend configured: set ocr_endpoint or "
                           "mock_ocr_dir")
    articles = [a for a in _load_articles(config)
                if a.downloaded and a.downloaded_path]
    converted = 0
    for article in articles:
        pdf_path = Path(article.downloaded_path)
        if not pdf_path.is_absolute():
            pdf_path = Path(config.output_root) / pdf_path
        try:
            convert_article(pdf_path, article.article_id,
                            stage_dir, ctx.ocr_client,
                            concurrency=config.ocr_concurrency)
            converted += 1
        except Exception as exc:
            log.warning("conversion failed for %s: %s", article.article_id,
                        exc)
    _write_stage_meta(stage_dir, "convert", ctx, {"converted": converted})
    return len(articles), converted


def _converted_docs(config: RunConfig) -> dict[str, MarkdownDoc]:
    stage_dir = config.pathogen_dir() / "markdown"
    docs = {}
    for path in sorted(stage_dir.glob("*.md")):
        docs[path.stem] = MarkdownDoc.read(path.stem, path)
    return docs


def stage_screen_fulltext(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    stage_dir = config.pathogen_dir() / "screening"
    titles = {a.article_id: a.title for a in _load_articles(config)}
    docs = _converted_docs(config)
    abstract = _abstract_verdicts(config)
    human = _human_verdicts(config)

    if config.strategy == StrategyMode.DIRECT_FULLTEXT:
        candidates = sorted(docs)
    elif config.strategy == StrategyMode.HUMAN_ABSTRACT_THEN_AI:
        if human is None:
            raise RuntimeError("HumanAbstractThenAI needs human_abstract_csv")
        candidates = sorted(a for a in docs
                            if human.get(a) == Verdict.INCLUDE)
    else:
        candidates = sorted(a for a in docs
                            if abstract.get(a) == Verdict.INCLUDE)

    items = [FullTextArticle(a, titles.get(a, a),
                             clip_document(docs[a].full_text, a))
             for a in candidates]
    criteria = default_criteria(config.pathogen_name, Stage.FULLTEXT)
    decisions = run_screening_stage(
        items, criteria, ctx.require_gateway(), model_name=config.model_name,
        workers=config.workers, now_iso=ctx.now_iso)
    write_decisions_csv(decisions, stage_dir / "decisions_fulltext.csv",
                        stage_dir / "transcripts_fulltext")

    fulltext = {d.article_id: d.verdict for d in decisions}
    final = compose_strategy(abstract, fulltext, human, config.strategy)
    final_decisions = [
        ScreeningDecision(a, "Final", v, "", ctx.now_iso())
        for a, v in sorted(final.items())]
    write_decisions_csv(final_decisions, stage_dir / "decisions_final.csv")
    included = sum(1 for v in final.values() if v == Verdict.INCLUDE)
    _write_stage_meta(stage_dir / "fulltext", "screen-fulltext", ctx,
                      {"screened": len(decisions), "included": included})
    return len(items), included


def _final_includes(config: RunConfig) -> list[str]:
    path = config.pathogen_dir() / "screening" / "decisions_final.csv"
    if not path.exists():
        raise RuntimeError("screen-fulltext outputs missing; run it first")
    return sorted(d.article_id for d in read_decisions_csv(path)
                  if d.verdict == Verdict.INCLUDE)


def stage_extract(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    stage_dir = config.pathogen_dir() / "extractions"
    stage_dir.mkdir(parents=True, exist_ok=True)
    gateway = ctx.require_gateway()
    titles = {a.article_id: a.title for a in _load_articles(config)}
    docs = _converted_docs(config)
    include_ids = [a for a in _final_includes(config) if a in docs]

    flags: dict[str, dict] = {}
    all_parameters, all_models, all_outbreaks, traces = [], [], [], []
    for article_id in include_ids:
        doc = docs[article_id]
        title = titles.get(article_id, article_id)
        article_flags: dict = {"parameter_classes": [], "model": False,
                               "outbreak": False}

        parameters = run_parameter_pipeline(
            doc, gateway, pathogen=config.pathogen,
            pathogen_name=config.pathogen_name, title=title,
            model_name=config.model_name, id_gen=ctx.id_gen)
        article_flags["parameter_classes"] = sorted(
            {p.parameter_class for p in parameters})
        all_parameters.extend(parameters)

        model_verdict = screen_models(doc, gateway, title=title,
                                      model_name=config.model_name)
        article_flags["model"] = bool(model_verdict)
        models = []
        if model_verdict:
            models = extract_models(doc, gateway, pathogen=config.pathogen,
                                    pathogen_name=config.pathogen_name,
                                    title=title, model_name=config.model_name,
                                    id_gen=ctx.id_gen)
            all_models.extend(models)

        outbreak_verdict = screen_outbreaks(doc, gateway, title=title,
                                            model_name=config.model_name)
        article_flags["outbreak"] = bool(outbreak_verdict)
        outbreaks = []
        if outbreak_verdict:
            outbreaks = extract_outbreaks(
                doc, config.pathogen, gateway,
                pathogen_name=config.pathogen_name, title=title,
                model_name=config.model_name, id_gen=ctx.id_gen)
            all_outbreaks.extend(outbreaks)

        for record in list(parameters) + list(models) + list(outbreaks):
            try:
                traces.append(extract_provenance(
                    record, doc, gateway, title=title,
                    model_name=config.model_name))
            except (ValueError, RuntimeError) as exc:
                log.warning("provenance failed for %s: %s", record.id, exc)
        flags[article_id] = article_flags

    for name, records in (("parameters", all_parameters),
                          ("models", all_models),
                          ("outbreaks", all_outbreaks)):
        jsonl = stage_dir / f"{name}.jsonl"
        jsonl.unlink(missing_ok=True)
        append_records_jsonl(records, jsonl)
        write_records_csv(records, stage_dir / f"{name}.csv")
    provenance_path = stage_dir / "provenance.jsonl"
    provenance_path.unlink(missing_ok=True)
    write_provenance_jsonl(traces, provenance_path)
    with open(stage_dir / "flags.json", "w", encoding="utf-8") as f:
        json.dump(flags, f, indent=2, sort_keys=True)
    _write_stage_meta(stage_dir, "extract", ctx, {
        "articles": len(include_ids), "parameters": len(all_parameters),
        "models": len(all_models), "outbreaks": len(all_outbreaks)})
    return len(include_ids), len(all_parameters) + len(all_models) \
        + len(all_outbreaks)


def _prediction_side(config: RunConfig) -> ArticleSide:
    stage_dir = config.pathogen_dir() / "extractions"
    with open(stage_dir / "flags.json", encoding="utf-8") as f:
        flags = json.load(f)
    records_by_type: dict[str, list] = {}
    for name, data_type in (("parameters", "parameter"), ("models", "model"),
                            ("outbreaks", "outbreak")):
        path = stage_dir / f"{name}.jsonl"
        if path.exists():
            for record in read_records_jsonl(path):
                key = (record.parameter_class if data_type == "parameter"
                       else data_type)
                records_by_type.setdefault(key, []).append(record)
    flag_pairs = set()
    for article_id, article_flags in flags.items():
        for parameter_class in article_flags.get("parameter_classes", []):
            flag_pairs.add((article_id, parameter_class))
        if article_flags.get("model"):
            flag_pairs.add((article_id, "model"))
        if article_flags.get("outbreak"):
            flag_pairs.add((article_id, "outbreak"))
    return ArticleSide.build(set(_final_includes(config)), records_by_type,
                             flags=flag_pairs)


def stage_evaluate(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    if not config.ground_truth_dir:
        raise RuntimeError("evaluate requires ground_truth_dir")
    truth_dir = Path(config.ground_truth_dir)
    stage_dir = config.pathogen_dir() / "evaluation"

    records_by_type: dict[str, list] = {}
    dropped: dict[str, int] = {}
    for name, data_type in (("models", "model"), ("outbreaks", "outbreak")):
        path = truth_dir / f"{name}.csv"
        if path.exists():
            rows = read_ground_truth_csv(path, data_type)
            filtered = filter_ground_truth(rows, data_type, str(path))
            records_by_type[data_type] = filtered.records
            dropped[data_type] = filtered.invalid_dropped
    parameters_path = truth_dir / "parameters.csv"
    if parameters_path.exists():
        import csv as _csv

        with open(parameters_path, newline="", encoding="utf-8") as f:
            raw_rows = list(_csv.DictReader(f))
        by_class: dict[str, list[dict]] = {}
        for row in raw_rows:
            by_class.setdefault(row.get("parameter_class", ""), []).append(row)
        for parameter_class, rows in by_class.items():
            if parameter_class not in catalog.PARAMETER_CLASSES:
                continue
            filtered = filter_ground_truth(
                [_coerce_parameter_row(r) for r in rows], parameter_class)
            records_by_type[parameter_class] = filtered.records
            dropped[parameter_class] = filtered.invalid_dropped

    includes_path = truth_dir / "includes.txt"
    if includes_path.exists():
        truth_included = {line.strip() for line in
                          includes_path.read_text().splitlines()
                          if line.strip()}
    else:
        truth_included = {row["article_id"]
                          for rows in records_by_type.values()
                          for row in rows if row.get("article_id")}

    truth = ArticleSide.build(truth_included, records_by_type)
    pred = _prediction_side(config)
    corpus = align_articles(truth, pred)
    report = evaluation_report(corpus)
    report["ground_truth_invalid_dropped"] = dropped
    write_report(report, stage_dir / "evaluation.json",
                 stage_dir / "evaluation.txt")
    _write_stage_meta(stage_dir, "evaluate", ctx,
                      {"aligned_articles": len(corpus.article_ids)})
    return len(truth_included), len(corpus.article_ids)


def _coerce_parameter_row(row: dict) -> dict:
    out: dict = {}
    for key, cell in row.items():
        cell = (cell or "").strip() if isinstance(cell, str) else cell
        if cell in ("", None):
            out[key] = None
            continue
        if key in ("value", "single_uncertainty_value", "numerator",
                   "denominator", "population_sample_size",
                   "population_age_min", "population_age_max"):
            try:
                out[key] = float(cell)
            except ValueError:
                out[key] = cell
        elif key in ("name", "outcome", "occupation", "population_countries"):
            out[key] = cell.split("; ") if isinstance(cell, str) else cell
        elif key in ("paired_uncertainty_lower", "paired_uncertainty_upper"):
            try:
                out[key] = float(cell)
            except ValueError:
                out[key] = cell
        else:
            out[key] = cell
    lower = out.get("paired_uncertainty_lower")
    upper = out.get("paired_uncertainty_upper")
    if lower is not None or upper is not None:
        out["paired_uncertainty"] = [lower, upper]
    return out


def stage_report(ctx: StageContext) -> tuple[int, int]:
    config = ctx.config
    extractions_dir = config.pathogen_dir() / "extractions"
    writeup_dir = config.writeup_dir()
    figures_dir = writeup_dir / "figures"
    gateway = ctx.gateway
    produced = 0

    for kind, filename, writeup_name, manifest_name, sections in (
            ("outbreak", "outbreaks.jsonl", "outbreaks_writeup",
             "content_manifest.json", None),
            ("model", "models.jsonl", "models_writeup",
             "models_content_manifest.json", MODEL_SECTIONS)):
        source = extractions_dir / filename
        records = list(read_records_jsonl(source)) if source.exists() else []
        stats, figures, tables = compute_descriptives(
            records, kind, figures_dir, rel_prefix="figures")
        manifest = build_manifest(figures, tables, stats, config.pathogen,
                                  timestamp=ctx.now_iso(), sections=sections,
                                  base_dir=writeup_dir)
        manifest.write(writeup_dir / manifest_name)
        draft = build_initial_draft(manifest, kind)
        packet = build_evidence_packet(manifest, draft)
        if gateway is not None:
            draft = initial_synthesis(packet, gateway, kind=kind,
                                      model_name=config.model_name)
            draft, _ = refine(draft, packet, manifest, gateway,
                              K=config.refine_rounds, kind=kind,
                              model_name=config.model_name)
        else:
            draft = enforce_checks(draft, manifest)
        md_path = writeup_dir / f"{writeup_name}.md"
        md_path.parent.mkdir(parents=True, exist_ok=True)
        md_path.write_text(draft, encoding="utf-8")
        render_pdf(md_path, writeup_dir, writeup_dir / f"{writeup_name}.pdf",
                   renderer_cmd=config.renderer_cmd or None)
        produced += 1
    _write_stage_meta(writeup_dir, "report", ctx, {"reports": produced})
    return produced, produced


_STAGE_FUNCTIONS = {
    "retrieve": stage_retrieve,
    "screen-abstract": stage_screen_abstract,
    "convert": stage_convert,
    "screen-fulltext": stage_screen_fulltext,
    "extract": stage_extract,
    "evaluate": stage_evaluate,
    "report": stage_report,
}

_STAGE_DIRS = {
    "retrieve": lambda c: c.pathogen_dir() / "articles",
    "screen-abstract": lambda c: c.pathogen_dir() / "screening",
    "convert": lambda c: c.pathogen_dir() / "markdown",
    "screen-fulltext": lambda c: c.pathogen_dir() / "screening" / "fulltext",
    "extract": lambda c: c.pathogen_dir() / "extractions",
    "evaluate": lambda c: c.pathogen_dir() / "evaluation",
    "report": lambda c: c.writeup_dir(),
}


def run(config: RunConfig, *, resume: bool = False) -> RunSummary:
    """Execute the requested stages in order."""
    ctx = StageContext(config)
    summary = RunSummary(config.pathogen, config.config_hash())
    for stage in config.stages:
        stage_dir = _STAGE_DIRS[stage](config)
        if resume and _stage_completed(stage_dir, ctx):
            log.info("stage %s already complete; skipping", stage)
            summary.stages.append(StageResult(stage, 0, 0, 0.0, skipped=True))
            continue
        started = time.monotonic()
        articles_in, articles_out = _STAGE_FUNCTIONS[stage](ctx)
        summary.stages.append(StageResult(
            stage, articles_in, articles_out,
            round(time.monotonic() - started, 3)))
    summary.usage = tally_usage(ctx.ledger.records,
                                config.prices_per_million)
    summary_path = config.pathogen_dir() / "run_summary.json"
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump(summary.to_json(), f, indent=2, sort_keys=True)
    return summary


def report_run(summary: RunSummary, as_json: bool = False) -> str:
    """Per-stage funnel: articles processed, seconds per article, totals."""
    if as_json:
        return json.dumps(summary.to_json(), indent=2, sort_keys=True)
    lines = [f"Run report for {summary.pathogen} "
             f"(config {summary.config_hash})", ""]
    if not any(not s.skipped for s in summary.stages):
        lines.append("(no stages executed)")
    header = (f"{'Stage':<18} {'In':>6} {'Out':>6} {'Seconds':>9} "
              f"{'s/article':>10}")
    lines.append(header)
    lines.append("-" * len(header))
    total_seconds = 0.0
    for stage in summary.stages:
        per_article = (stage.seconds / stage.articles_in
                       if stage.articles_in else 0.0)
        note = " (skipped)" if stage.skipped else ""
        lines.append(f"{stage.stage:<18} {stage.articles_in:>6} "
                     f"{stage.articles_out:>6} {stage.seconds:>9.2f} "
                     f"{per_article:>10.3f}{note}")
        total_seconds += stage.seconds
    lines.append("-" * len(header))
    lines.append(f"{'Total':<18} {'':>6} {'':>6} {total_seconds:>9.2f}")
    usage_total = summary.usage.get("total", {})
    if usage_total:
        lines.append("")
        lines.append(f"Tokens: {usage_total.get('input_tokens', 0)} in / "
                     f"{usage_total.get('output_tokens', 0)} out over "
                     f"{usage_total.get('calls', 0)} calls")
        if "cost_usd" in usage_total:
            lines.append(f"Estimated cost: ${usage_total['cost_usd']:.4f}")
    return "\n".join(lines)
