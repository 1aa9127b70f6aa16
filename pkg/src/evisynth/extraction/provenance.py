"""Provenance tracing: per-field verbatim quotes linking extractions
back to the source document.

The model cites one field (or one selected option of a multi-select
field) per tool call, receiving the complete extracted record in the
prompt. Quotes are verified as substrings of the normalised document
text; unverifiable quotes are kept but flagged, never dropped.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import asdict

from ..convert.ocr import MarkdownDoc
from ..llm.gateway import ChatRequest, Gateway, RoundsExhausted, ToolDefinition
from . import prompts
from .pipelines import clip_document
from .records import (
    ModelExtraction,
    OutbreakExtraction,
    ParameterExtraction,
    ProvenanceEntry,
    ProvenanceTrace,
    record_data_type,
)
from .schema import FieldSchema, Kind, validate_payload

log = logging.getLogger(__name__)

_DASHES = dict.fromkeys(map(ord, "‐‑‒–—―−"),
                        "-")


def normalize_for_matching(text: str) -> str:
    """Collapse whitespace and unify unicode dashes before substring
    search."""
    return re.sub(r"\s+", " ", text.translate(_DASHES)).strip().lower()


def verify_quote(quote: str, doc_text: str) -> bool:
    return normalize_for_matching(quote) in normalize_for_matching(doc_text)


def _record_fields(record) -> dict:
    doc = asdict(record)
    for bookkeeping in ("id", "article_id", "pathogen", "population",
                        "aggregation"):
        doc.pop(bookkeeping, None)
    if isinstance(record, ParameterExtraction):
        doc.update(doc.pop("fields", {}))
    return {k: v for k, v in doc.items() if v not in (None, [], "")}


def _citation_tool(populated: dict) -> tuple[ToolDefinition, dict[str, list]]:
    multi = {name: value for name, value in populated.items()
             if isinstance(value, list)}
    schema = (
        FieldSchema("field", Kind.ENUM, required=True, nullable=False,
                    allowed_values=tuple(populated),
                    description="The extracted characteristic this citation "
                                "supports."),
        FieldSchema("option", Kind.STRING,
                    description="For multi-select fields, the selected "
                                "option this citation supports."),
        FieldSchema("quote", Kind.STRING, required=True, nullable=False,
                    description="Verbatim quote, equation reference, or "
                                "table citation from the article."),
    )
    tool = ToolDefinition(
        "cite_evidence", schema,
        "Cite the article evidence supporting one extracted characteristic.")
    return tool, multi


def extract_provenance(record, doc: MarkdownDoc, gateway: Gateway, *,
                       title: str = "", model_name: str = "",
                       max_rounds: int = 3) -> ProvenanceTrace:
    """Build the provenance trace for one extraction record.

    Raises ValueError for an empty record. The validator forces field
    names onto the record's populated fields and multi-select options
    onto the selected values; every selected multi-select option must
    end up with at least one supporting entry.
    """
    populated = _record_fields(record)
    if not populated:
        raise ValueError(f"record {record.id} has no extracted fields to trace")
    tool, multi = _citation_tool(populated)
    schema = tool.parameter_schema

    def validator(payload: dict) -> list[str]:
        errors = validate_payload(payload, schema)
        if errors:
            return errors
        name = payload["field"]
        option = payload.get("option")
        if name in multi:
            if option is None:
                errors.append(
                    "field 'option' violates rule 'multi_select_support': "
                    f"{name!r} is multi-select; cite each selected option "
                    "separately")
            elif option not in [str(v) for v in multi[name]]:
                errors.append(
                    "field 'option' violates rule 'multi_select_support': "
                    f"{option!r} is not a selected option of {name!r} "
                    f"(selected: {multi[name]})")
        return errors

    data_type = record_data_type(record)
    request = ChatRequest(
        model_name=model_name,
        system_text=prompts.PARAMETER_SYSTEM if data_type == "parameter"
        else prompts.MODEL_EXTRACT_SYSTEM if data_type == "model"
        else prompts.OUTBREAK_EXTRACT_SYSTEM,
        user_text=prompts.provenance_prompt(
            json.dumps(populated, ensure_ascii=False, default=str), title,
            clip_document(doc.full_text, doc.article_id)),
        tools=[tool])
    try:
        payloads = gateway.call_with_tools(
            request, validator, max_rounds,
            stage_label=f"provenance-{data_type}", article_id=doc.article_id)
    except RoundsExhausted as exc:
        log.warning("provenance rounds exhausted for %s: %s", record.id, exc)
        payloads = exc.validated

    entries = []
    for payload in payloads:
        name = payload["field"]
        if payload.get("option"):
            name = f"{name}:{payload['option']}"
        entries.append(ProvenanceEntry(
            field=name, quote=payload["quote"],
            verified=verify_quote(payload["quote"], doc.full_text)))

    cited = {e.field for e in entries}
    for name, options in multi.items():
        for option in options:
            if f"{name}:{option}" not in cited:
                log.info("no citation for %s option %r of %s", name, option,
                         record.id)
    return ProvenanceTrace(extraction_id=record.id, entries=entries)
