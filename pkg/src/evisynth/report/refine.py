"""The K-round critique-revise refinement loop.

Each round critiques the current draft against the 8-dimension rubric
(strict JSON, one re-ask on parse failure), revises with the complete
evidence packet in context, then runs the non-negotiable grounding
checks. K is fixed: no early stopping, exactly K critique and K revise
calls.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field

from ..llm.gateway import ChatRequest, Gateway
from . import prompts
from .checks import enforce_checks
from .manifest import ContentManifest
from .packet import EvidencePacket
from .prompts import rubric_dimensions

log = logging.getLogger(__name__)


class CritiqueParseError(ValueError):
    pass


class EmptyRevisionError(ValueError):
    pass


@dataclass
class CritiqueResult:
    scores: dict[str, int]
    issues: dict[str, list[str]]
    suggestions: dict[str, list[str]]
    priority_fixes: list[str] = field(default_factory=list)


def _parse_critique(text: str, kind: str) -> CritiqueResult:
    match = re.search(r"\{.*\}", text, re.S)
    if match is None:
        raise CritiqueParseError("no JSON object in critique response")
    try:
        doc = json.loads(match.group(0))
    except ValueError as exc:
        raise CritiqueParseError(f"critique is not valid JSON: {exc}") from exc
    dimensions = doc.get("dimensions")
    if not isinstance(dimensions, dict):
        raise CritiqueParseError("critique JSON lacks a 'dimensions' object")
    expected = rubric_dimensions(kind)
    if sorted(dimensions) != sorted(expected):
        raise CritiqueParseError(
            f"critique dimensions {sorted(dimensions)} do not match the "
            f"rubric {sorted(expected)}")
    scores: dict[str, int] = {}
    issues: dict[str, list[str]] = {}
    suggestions: dict[str, list[str]] = {}
    for name, entry in dimensions.items():
        score = entry.get("score")
        if not isinstance(score, int) or not 1 <= score <= 5:
            raise CritiqueParseError(
                f"dimension {name!r} score {score!r} is not an integer in "
                "1..5")
        scores[name] = score
        issues[name] = list(entry.get("issues", []))
        suggestions[name] = list(entry.get("suggestions", []))
    return CritiqueResult(scores, issues, suggestions,
                          list(doc.get("priority_fixes", [])))


def critique(draft: str, packet: EvidencePacket, gateway: Gateway, *,
             kind: str = "outbreak", model_name: str = "",
             stage_label: str = "report-critique") -> CritiqueResult:
    """Rubric critique of the current draft; strict JSON with one re-ask."""
    system, user = prompts.critique_prompt(
        kind, packet.stats_text, [p for p, _ in packet.required_figures],
        draft)
    request = ChatRequest(model_name=model_name, system_text=system,
                          user_text=user)
    text, _ = gateway.complete(request, stage_label=stage_label)
    try:
        return _parse_critique(text, kind)
    except CritiqueParseError as exc:
        log.info("critique parse failed (%s); re-asking once", exc)
        retry = ChatRequest(
            model_name=model_name, system_text=system,
            user_text=user + "\n\nYour previous response was not valid "
            "strict JSON in the required shape. Return STRICT JSON only.")
        text, _ = gateway.complete(retry, stage_label=stage_label)
        return _parse_critique(text, kind)


def revise(draft: str, critique_result: CritiqueResult,
           packet: EvidencePacket, gateway: Gateway, *,
           kind: str = "outbreak", model_name: str = "",
           stage_label: str = "report-revise") -> str:
    """Full-replacement revision; an empty response is an error and the
    caller keeps the previous draft."""
    system, user = prompts.revise_prompt(
        kind, json.dumps(critique_result.scores, indent=2),
        "\n".join(f"- {fix}" for fix in critique_result.priority_fixes)
        or "(none)",
        packet.packet_text(), draft)
    request = ChatRequest(model_name=model_name, system_text=system,
                          user_text=user)
    text, _ = gateway.complete(request, stage_label=stage_label)
    if not text.strip():
        raise EmptyRevisionError("revision returned an empty document")
    return text


@dataclass
class RefineRound:
    draft_before: str
    critique: CritiqueResult
    draft_after: str


def refine(initial_draft: str, packet: EvidencePacket,
           manifest: ContentManifest, gateway: Gateway, *, K: int = 5,
           kind: str = "outbreak", model_name: str = ""
           ) -> tuple[str, list[RefineRound]]:
    """Run exactly K critique-revise rounds, each followed by the
    grounding checks; returns the final draft plus the iteration log."""
    draft = enforce_checks(initial_draft, manifest)
    rounds: list[RefineRound] = []
    for _ in range(K):
        critique_result = critique(draft, packet, gateway, kind=kind,
                                   model_name=model_name)
        try:
            revised = revise(draft, critique_result, packet, gateway,
                             kind=kind, model_name=model_name)
        except EmptyRevisionError:
            log.warning("empty revision; retaining previous draft this round")
            revised = draft
        revised = enforce_checks(revised, manifest)
        rounds.append(RefineRound(draft, critique_result, revised))
        draft = revised
    return draft, rounds


def initial_synthesis(packet: EvidencePacket, gateway: Gateway, *,
                      kind: str = "outbreak", model_name: str = "") -> str:
    """First narrative pass over the evidence packet; falls back to the
    programmatic draft if the model returns nothing."""
    system, user = prompts.synthesis_prompt(kind, packet.packet_text())
    request = ChatRequest(model_name=model_name, system_text=system,
                          user_text=user)
    text, _ = gateway.complete(request, stage_label="report-synthesis")
    return text.strip() or packet.initial_draft
