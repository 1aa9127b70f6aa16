"""The three extraction pipelines.

Parameters run the five-step workflow: class screening (summary
excerpts), value extraction, population context, rule-of-three
aggregation, and provenance (see provenance.py). Models and outbreaks
run two stages each: a strict True/False presence screen followed by an
iterative tool-call extraction. Every persisted record passed
validate_payload; the correction loop feeds validation errors back to
the model.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import partial

from .. import ids
from ..convert.ocr import MarkdownDoc
from ..llm.gateway import ChatRequest, Gateway, GatewayError, RoundsExhausted, ToolDefinition
from . import catalog, prompts
from .records import (
    AggregatedRange,
    ModelExtraction,
    OutbreakExtraction,
    ParameterExtraction,
    PopulationContext,
)
from .schema import validate_payload

log = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 3

# Whole-document context per call, no chunking: converted markdown is
# expected to fit the configured context, and anything beyond this cap
# is cut tail-first with a logged warning.
MAX_DOCUMENT_CHARS = 400_000


def clip_document(text: str, article_id: str,
                  max_chars: int = MAX_DOCUMENT_CHARS) -> str:
    if len(text) <= max_chars:
        return text
    log.warning("document %s exceeds %d chars (%d); truncating tail-first",
                article_id, max_chars, len(text))
    return text[:max_chars]


@dataclass
class ScreenVerdict:
    value: bool
    flagged: bool = False
    transcript: str = ""

    def __bool__(self) -> bool:
        return self.value


def _screen_true_false(system_text: str, user_text: str, gateway: Gateway,
                       *, model_name: str, stage_label: str,
                       article_id: str) -> ScreenVerdict:
    """Strict True/False parse with one re-ask, then flagged False."""
    request = ChatRequest(model_name=model_name, system_text=system_text,
                          user_text=user_text)
    text, _ = gateway.complete(request, stage_label=stage_label,
                               article_id=article_id)
    answer = text.strip()
    if answer in ("True", "False"):
        return ScreenVerdict(answer == "True", transcript=text)
    retry = ChatRequest(
        model_name=model_name, system_text=system_text,
        user_text=user_text + "\n\nYour previous reply was not parseable. "
        'Respond with only "True" or "False".')
    text, _ = gateway.complete(retry, stage_label=stage_label,
                               article_id=article_id)
    answer = text.strip()
    if answer in ("True", "False"):
        return ScreenVerdict(answer == "True", transcript=text)
    log.warning("unparseable screen response for %s; defaulting to False",
                article_id)
    return ScreenVerdict(False, flagged=True, transcript=text)


# ----------------------------------------------------------- parameters

def screen_parameter_class(doc: MarkdownDoc, parameter_class: str,
                           gateway: Gateway, *, pathogen_name: str,
                           title: str = "", model_name: str = "",
                           max_rounds: int = DEFAULT_MAX_ROUNDS) -> list[str]:
    """Step 1: collect summary excerpts for one parameter class.

    Zero tool calls means the class is absent from the article; that is
    a normal outcome, not an error.
    """
    if parameter_class not in catalog.PARAMETER_CLASSES:
        raise ValueError(f"unknown parameter class {parameter_class!r}")
    tool = ToolDefinition(
        "extract_parameter_summaries", catalog.SUMMARY_TOOL_SCHEMA,
        "Record summary excerpts about one estimate of the requested "
        "parameter class.")
    request = ChatRequest(
        model_name=model_name, system_text=prompts.PARAMETER_SYSTEM,
        user_text=prompts.parameter_screening_prompt(
            pathogen_name, parameter_class, title,
            clip_document(doc.full_text, doc.article_id)),
        tools=[tool])
    payloads = gateway.call_with_tools(
        request, partial(validate_payload, schema=catalog.SUMMARY_TOOL_SCHEMA),
        max_rounds, stage_label="extract-parameters",
        article_id=doc.article_id)
    summaries: list[str] = []
    for payload in payloads:
        summaries.extend(s for s in payload["summaries"] if s.strip())
    return summaries


def extract_parameter_values(summaries: list[str], parameter_class: str,
                             gateway: Gateway, *, pathogen_name: str,
                             article_id: str, pathogen: str,
                             id_gen: ids.IdGenerator | None = None,
                             model_name: str = "",
                             max_rounds: int = DEFAULT_MAX_ROUNDS
                             ) -> list[ParameterExtraction]:
    """Step 2: one validated tool payload per parameter estimate."""
    schema = catalog.PARAMETER_VALUE_SCHEMAS[parameter_class]
    tool = ToolDefinition(
        "extract_parameter_values", schema,
        f"Record one structured {parameter_class} estimate.")
    id_gen = id_gen or ids.IdGenerator()
    records: list[ParameterExtraction] = []
    for summary in summaries:
        request = ChatRequest(
            model_name=model_name, system_text=prompts.PARAMETER_SYSTEM,
            user_text=prompts.value_extraction_prompt(
                pathogen_name, parameter_class, summary),
            tools=[tool])
        try:
            payloads = gateway.call_with_tools(
                request, partial(validate_payload, schema=schema), max_rounds,
                stage_label="extract-parameters", article_id=article_id)
        except RoundsExhausted as exc:
            log.warning("value extraction rounds exhausted for %s (%s); "
                        "summary skipped", article_id, exc)
            continue
        for payload in payloads:
            records.append(ParameterExtraction.from_payload(
                payload, id=id_gen.new_id(), article_id=article_id,
                pathogen=pathogen, parameter_class=parameter_class))
    return records


def extract_population(summary: str, record: ParameterExtraction,
                       gateway: Gateway, *, pathogen_name: str,
                       model_name: str = "",
                       max_rounds: int = DEFAULT_MAX_ROUNDS) -> PopulationContext:
    """Step 3: population context for one extracted parameter.

    Absent information maps to the all-default context.
    """
    tool = ToolDefinition(
        "extract_population_context", catalog.POPULATION_SCHEMA,
        "Record the sample population information for the given parameter.")
    record_json = json.dumps(
        {"parameter_class": record.parameter_class,
         "parameter_type": record.parameter_type, "value": record.value,
         "unit": record.unit},
        ensure_ascii=False)
    request = ChatRequest(
        model_name=model_name, system_text=prompts.PARAMETER_SYSTEM,
        user_text=prompts.population_prompt(pathogen_name, record_json,
                                            summary),
        tools=[tool])
    try:
        payloads = gateway.call_with_tools(
            request, partial(validate_payload, schema=catalog.POPULATION_SCHEMA),
            max_rounds, stage_label="extract-parameters",
            article_id=record.article_id)
    except RoundsExhausted as exc:
        log.warning("population extraction rounds exhausted for %s: %s",
                    record.article_id, exc)
        payloads = exc.validated
    if not payloads:
        return PopulationContext()
    return PopulationContext.from_payload(payloads[0])


def aggregate_rule_of_three(extractions: list[ParameterExtraction],
                            pathogen: str, gateway: Gateway, *,
                            pathogen_name: str, model_name: str = "",
                            max_rounds: int = DEFAULT_MAX_ROUNDS
                            ) -> list[AggregatedRange]:
    """Step 4: range aggregation over population disaggregations.

    Classes with fewer than three extractions are never prompted; the
    validator rejects aggregations referencing unknown ids, spanning
    several classes, citing fewer than three members, or whose bounds
    fail to cover the member values, and the model is asked to retry.
    """
    by_class: dict[str, list[ParameterExtraction]] = {}
    for rec in extractions:
        by_class.setdefault(rec.parameter_class, []).append(rec)

    ranges: list[AggregatedRange] = []
    for parameter_class, members in by_class.items():
        if len(members) < 3:
            continue
        by_id = {m.id: m for m in members}

        def validator(payload: dict, by_id=by_id) -> list[str]:
            errors = validate_payload(payload, catalog.AGGREGATION_SCHEMA)
            if errors:
                return errors
            member_ids = payload["aggregated_ids"]
            unknown = [i for i in member_ids if i not in by_id]
            if unknown:
                errors.append(
                    "field 'aggregated_ids' violates rule 'known_ids': "
                    f"unknown extraction ids {unknown}; use the ids provided "
                    "in the parameter list")
            if len(set(member_ids)) < 3:
                errors.append(
                    "field 'aggregated_ids' violates rule 'rule_of_three': "
                    "an aggregation needs at least three distinct "
                    "extractions")
            if errors:
                return errors
            values = [by_id[i].value for i in member_ids
                      if by_id[i].value is not None]
            if values:
                if payload["lower_bound"] > min(values):
                    errors.append(
                        "field 'lower_bound' violates rule 'bounds_span': "
                        f"it must not exceed the smallest member value "
                        f"{min(values)}")
                if payload["upper_bound"] < max(values):
                    errors.append(
                        "field 'upper_bound' violates rule 'bounds_span': "
                        f"it must not be below the largest member value "
                        f"{max(values)}")
            return errors

        members_json = json.dumps([
            {"id": m.id, "parameter_class": m.parameter_class,
             "parameter_type": m.parameter_type, "value": m.value,
             "unit": m.unit,
             "population_location": (m.population.population_location
                                     if m.population else ""),
             "population_group": (m.population.population_group
                                  if m.population else "unspecified")}
            for m in members], ensure_ascii=False)
        tool = ToolDefinition(
            "submit_aggregated_range", catalog.AGGREGATION_SCHEMA,
            "Submit one aggregated range over three or more disaggregated "
            "extractions of the same parameter.")
        request = ChatRequest(
            model_name=model_name, system_text=prompts.PARAMETER_SYSTEM,
            user_text=prompts.aggregation_prompt(pathogen_name, pathogen,
                                                 members_json),
            tools=[tool])
        article_id = members[0].article_id
        try:
            payloads = gateway.call_with_tools(
                request, validator, max_rounds,
                stage_label="extract-parameters", article_id=article_id)
        except RoundsExhausted as exc:
            log.warning("aggregation rounds exhausted for %s: %s", article_id,
                        exc)
            payloads = exc.validated
        for payload in payloads:
            aggregated = AggregatedRange(
                lower_bound=payload["lower_bound"],
                upper_bound=payload["upper_bound"],
                disaggregated_by=payload["disaggregated_by"],
                aggregated_ids=payload["aggregated_ids"])
            ranges.append(aggregated)
            for member_id in aggregated.aggregated_ids:
                by_id[member_id].aggregation = aggregated
    return ranges


def run_parameter_pipeline(doc: MarkdownDoc, gateway: Gateway, *,
                           pathogen: str, pathogen_name: str,
                           title: str = "", model_name: str = "",
                           classes: tuple[str, ...] | None = None,
                           id_gen: ids.IdGenerator | None = None
                           ) -> list[ParameterExtraction]:
    """Screen every class, extract values, and attach population context
    and aggregations for one converted article."""
    id_gen = id_gen or ids.IdGenerator()
    records: list[ParameterExtraction] = []
    for parameter_class in classes or catalog.EVALUATED_PARAMETER_CLASSES:
        try:
            summaries = screen_parameter_class(
                doc, parameter_class, gateway, pathogen_name=pathogen_name,
                title=title, model_name=model_name)
        except GatewayError as exc:
            log.warning("parameter screening failed for %s/%s: %s",
                        doc.article_id, parameter_class, exc)
            continue
        if not summaries:
            continue
        for summary in summaries:
            extracted = extract_parameter_values(
                [summary], parameter_class, gateway,
                pathogen_name=pathogen_name, article_id=doc.article_id,
                pathogen=pathogen, id_gen=id_gen, model_name=model_name)
            for rec in extracted:
                rec.population = extract_population(
                    summary, rec, gateway, pathogen_name=pathogen_name,
                    model_name=model_name)
            records.extend(extracted)
    aggregate_rule_of_three(records, pathogen, gateway,
                            pathogen_name=pathogen_name, model_name=model_name)
    return records


# ---------------------------------------------------------------- models

def screen_models(doc: MarkdownDoc, gateway: Gateway, *, title: str = "",
                  model_name: str = "") -> ScreenVerdict:
    return _screen_true_false(
        prompts.MODEL_SCREEN_SYSTEM,
        prompts.model_screening_prompt(
            title, clip_document(doc.full_text, doc.article_id)), gateway,
        model_name=model_name, stage_label="extract-models",
        article_id=doc.article_id)


def extract_models(doc: MarkdownDoc, gateway: Gateway, *, pathogen: str,
                   pathogen_name: str, title: str = "", model_name: str = "",
                   id_gen: ids.IdGenerator | None = None,
                   max_rounds: int = DEFAULT_MAX_ROUNDS) -> list[ModelExtraction]:
    """Iterative extract_model_data loop, one call per distinct model."""
    id_gen = id_gen or ids.IdGenerator()
    tool = ToolDefinition(
        "extract_model_data", catalog.MODEL_SCHEMA,
        "Record the characteristics of one dynamic transmission model.")
    request = ChatRequest(
        model_name=model_name, system_text=prompts.MODEL_EXTRACT_SYSTEM,
        user_text=prompts.model_extraction_prompt(
            pathogen_name, title,
            clip_document(doc.full_text, doc.article_id)),
        tools=[tool])
    try:
        payloads = gateway.call_with_tools(
            request, partial(validate_payload, schema=catalog.MODEL_SCHEMA),
            max_rounds, stage_label="extract-models",
            article_id=doc.article_id)
    except RoundsExhausted as exc:
        log.warning("model extraction rounds exhausted for %s: %s",
                    doc.article_id, exc)
        payloads = exc.validated
    return [ModelExtraction.from_payload(p, id=id_gen.new_id(),
                                         article_id=doc.article_id,
                                         pathogen=pathogen)
            for p in payloads]


# -------------------------------------------------------------- outbreaks

def screen_outbreaks(doc: MarkdownDoc, gateway: Gateway, *, title: str = "",
                     model_name: str = "") -> ScreenVerdict:
    return _screen_true_false(
        prompts.OUTBREAK_SCREEN_SYSTEM,
        prompts.outbreak_screening_prompt(
            title, clip_document(doc.full_text, doc.article_id)), gateway,
        model_name=model_name, stage_label="extract-outbreaks",
        article_id=doc.article_id)


def extract_outbreaks(doc: MarkdownDoc, pathogen: str, gateway: Gateway, *,
                      pathogen_name: str, title: str = "",
                      model_name: str = "",
                      id_gen: ids.IdGenerator | None = None,
                      max_rounds: int = DEFAULT_MAX_ROUNDS
                      ) -> list[OutbreakExtraction]:
    """Iterative extract_outbreak_data loop, one call per distinct
    outbreak; pathogen-specific minimum-size rules ride in the prompt."""
    id_gen = id_gen or ids.IdGenerator()
    tool = ToolDefinition(
        "extract_outbreak_data", catalog.OUTBREAK_SCHEMA,
        "Record the characteristics of one concluded outbreak event.")
    request = ChatRequest(
        model_name=model_name, system_text=prompts.OUTBREAK_EXTRACT_SYSTEM,
        user_text=prompts.outbreak_extraction_prompt(
            pathogen_name, pathogen, title,
            clip_document(doc.full_text, doc.article_id)),
        tools=[tool])
    try:
        payloads = gateway.call_with_tools(
            request, partial(validate_payload, schema=catalog.OUTBREAK_SCHEMA),
            max_rounds, stage_label="extract-outbreaks",
            article_id=doc.article_id)
    except RoundsExhausted as exc:
        log.warning("outbreak extraction rounds exhausted for %s: %s",
                    doc.article_id, exc)
        payloads = exc.validated
    return [OutbreakExtraction.from_payload(p, id=id_gen.new_id(),
                                            article_id=doc.article_id,
                                            pathogen=pathogen)
            for p in payloads]
