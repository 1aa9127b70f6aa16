"""Decision parsing, stage execution, and strategy composition.

parse_decision is total: the last decision tag in the transcript wins,
and a missing tag defaults to Include (the pipeline is recall-first;
false inclusions are correctable downstream, exclusions are not).
Stage failures likewise degrade to flagged Include decisions.
"""

from __future__ import annotations

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..llm.gateway import Gateway, GatewayError
from .criteria import ScreeningCriteria
from .prompts import assemble_prompt

log = logging.getLogger(__name__)

INCLUDE_TAG = "<decision>INCLUDE</decision>"
EXCLUDE_TAG = "<decision>EXCLUDE</decision>"


class Verdict:
    INCLUDE = "Include"
    EXCLUDE = "Exclude"


class StrategyMode:
    TWO_STAGE_AI = "TwoStageAI"
    HUMAN_ABSTRACT_THEN_AI = "HumanAbstractThenAI"
    DIRECT_FULLTEXT = "DirectFullText"

    ALL = (TWO_STAGE_AI, HUMAN_ABSTRACT_THEN_AI, DIRECT_FULLTEXT)


@dataclass
class ScreeningDecision:
    article_id: str
    stage: str
    verdict: str
    transcript: str
    decided_at: str
    flags: list[str] = field(default_factory=list)


def decision_tags(transcript: str) -> list[str]:
    """All decision tags in order of appearance (case-sensitive match)."""
    found = []
    for idx in range(len(transcript)):
        if transcript.startswith(INCLUDE_TAG, idx):
            found.append(Verdict.INCLUDE)
        elif transcript.startswith(EXCLUDE_TAG, idx):
            found.append(Verdict.EXCLUDE)
    return found


def parse_decision(transcript: str) -> str:
    """Last tag wins; missing tag defaults to Include."""
    tags = decision_tags(transcript)
    return tags[-1] if tags else Verdict.INCLUDE


def run_stage(articles: list, criteria: ScreeningCriteria, gateway: Gateway,
              *, model_name: str = "", workers: int = 8,
              now_iso=None) -> list[ScreeningDecision]:
    """Screen a batch of articles; one decision per article.

    Model or transport failures never drop an article: after retries
    the decision is a flagged Include.
    """
    now_iso = now_iso or (lambda: time.strftime("%Y-%m-%dT%H:%M:%S+00:00",
                                                time.gmtime()))
    stage_label = f"screen-{criteria.stage.lower()}"

    def screen(article) -> ScreeningDecision:
        flags: list[str] = []
        try:
            request = assemble_prompt(article, criteria, model_name)
            transcript, _ = gateway.complete(request, stage_label=stage_label,
                                             article_id=article.article_id)
        except GatewayError as exc:
            log.warning("screening failed for %s: %s", article.article_id, exc)
            return ScreeningDecision(article.article_id, criteria.stage,
                                     Verdict.INCLUDE, f"[error: {exc}]",
                                     now_iso(), ["error"])
        if not decision_tags(transcript):
            flags.append("missing_tag")
            log.info("no decision tag for %s; defaulting to Include",
                     article.article_id)
        return ScreeningDecision(article.article_id, criteria.stage,
                                 parse_decision(transcript), transcript,
                                 now_iso(), flags)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        decisions = list(pool.map(screen, articles))
    return sorted(decisions, key=lambda d: d.article_id)


def compose_strategy(abstract_decisions: dict[str, str],
                     fulltext_decisions: dict[str, str],
                     human_abstract: dict[str, str] | None,
                     mode: str) -> dict[str, str]:
    """Combine stage verdicts under one of the three evaluation strategies.

    TwoStageAI: any AI abstract Exclude forces the final Exclude.
    HumanAbstractThenAI: any human abstract Exclude forces the final
    Exclude. DirectFullText: the AI full-text verdict stands alone.
    """
    if mode not in StrategyMode.ALL:
        raise ValueError(f"unknown strategy mode {mode!r}")
    if mode == StrategyMode.HUMAN_ABSTRACT_THEN_AI and human_abstract is None:
        raise ValueError("HumanAbstractThenAI requires human abstract verdicts")

    final: dict[str, str] = {}
    for article_id, fulltext in fulltext_decisions.items():
        if mode == StrategyMode.DIRECT_FULLTEXT:
            final[article_id] = fulltext
            continue
        gate_map = (abstract_decisions
                    if mode == StrategyMode.TWO_STAGE_AI else human_abstract)
        gate = gate_map.get(article_id, Verdict.EXCLUDE)
        final[article_id] = (Verdict.INCLUDE
                             if gate == Verdict.INCLUDE
                             and fulltext == Verdict.INCLUDE
                             else Verdict.EXCLUDE)
    return final


# -------------------------------------------------------------- persistence

DECISION_COLUMNS = ["article_id", "stage", "verdict", "flags", "decided_at"]


def write_decisions_csv(decisions: list[ScreeningDecision], path: str | Path,
                        transcripts_dir: str | Path | None = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=DECISION_COLUMNS)
        writer.writeheader()
        for d in decisions:
            writer.writerow({"article_id": d.article_id, "stage": d.stage,
                             "verdict": d.verdict, "flags": ";".join(d.flags),
                             "decided_at": d.decided_at})
    if transcripts_dir is not None:
        transcripts_dir = Path(transcripts_dir)
        transcripts_dir.mkdir(parents=True, exist_ok=True)
        for d in decisions:
            (transcripts_dir / f"{d.article_id}.txt").write_text(
                d.transcript, encoding="utf-8")


def read_decisions_csv(path: str | Path) -> list[ScreeningDecision]:
    out = []
    with open(path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            out.append(ScreeningDecision(
                article_id=row["article_id"], stage=row["stage"],
                verdict=row["verdict"], transcript="",
                decided_at=row.get("decided_at", ""),
                flags=[x for x in row.get("flags", "").split(";") if x]))
    return out
