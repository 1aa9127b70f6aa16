"""Deterministic screening prompt assembly.

The prompt carries, in order: role instruction, study objectives,
inclusion criteria, exclusion criteria, the article content, and the
chain-of-thought screening instructions ending with the decision-tag
directive. Identical inputs yield byte-identical prompts (golden-file
tested), so transcripts are reproducible and cacheable.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..biblio.records import ArticleRecord
from ..llm.gateway import ChatRequest
from .criteria import ScreeningCriteria, Stage

SYSTEM_TEXT = ("You are an expert epidemiologist screening abstracts for a "
               "systematic review on the target pathogen.")

DECISION_DIRECTIVE = (
    "We will conclude by outputting (on the very last line) "
    "<decision>EXCLUDE</decision> if the paper warrants exclusion, or "
    "<decision>INCLUDE</decision> if inclusion is advised or uncertainty "
    "persists."
)

_SHARED_INSTRUCTIONS = (
    "We now assess whether the paper should be included in the systematic "
    "review by evaluating it against each and every predefined inclusion and "
    "exclusion criterion. First, we will reflect on how we will decide "
    "whether a paper should be included or excluded. Then, we will think "
    "step by step for each criterion, giving reasons for why they are met "
    "or not met."
)

_ABSTRACT_GUIDANCE = (
    "Studies that may not fully align with the primary focus of our "
    "inclusion criteria but provide data or insights potentially relevant "
    "to our review deserve thoughtful consideration. Given the nature of "
    "abstracts as concise summaries of comprehensive research, some degree "
    "of interpretation is necessary.\n\n"
    "Our aim should be to inclusively screen abstracts, ensuring broad "
    "coverage of pertinent studies while filtering out those that are "
    "clearly irrelevant."
)

_FULLTEXT_GUIDANCE = (
    "Critically evaluate: Does this paper contain extractable quantitative "
    "data, models, or parameters relevant to disease transmission and "
    "outbreak response? This is essential for inclusion."
)


@dataclass
class FullTextArticle:
    """Converted article content presented at the full-text stage."""

    article_id: str
    title: str
    full_text: str


def _numbered(items: list[str]) -> str:
    return "\n".join(f"{i}. {item}" for i, item in enumerate(items, 1))


def assemble_prompt(article, criteria: ScreeningCriteria,
                    model_name: str = "") -> ChatRequest:
    """Build the screening ChatRequest for one article at one stage."""
    if criteria.stage == Stage.ABSTRACT:
        if not isinstance(article, ArticleRecord):
            raise TypeError("abstract screening takes an ArticleRecord")
        if not article.title or not article.abstract:
            raise ValueError(
                f"article {article.article_id} lacks title/abstract required "
                "for abstract screening")
        content_header = "Abstract (To Screen)"
        content = f"Title: {article.title}\nAbstract: {article.abstract}"
        guidance = _ABSTRACT_GUIDANCE
    else:
        if not isinstance(article, FullTextArticle):
            raise TypeError("full-text screening takes a FullTextArticle")
        if not article.full_text:
            raise ValueError(
                f"article {article.article_id} has no converted markdown for "
                "full-text screening")
        content_header = "Full-Text Article (To Screen)"
        content = f"Title: {article.title}\nFull Text: {article.full_text}"
        guidance = _FULLTEXT_GUIDANCE

    sections = [
        "## Study Objectives\n\n" + criteria.study_objectives,
        "## Screening Criteria\n\n"
        "The following is an excerpt of 2 sets of criteria. A study is "
        "considered included if it meets ALL inclusion criteria. If a study "
        "meets ANY exclusion criteria, it should be excluded. Here are the "
        "2 sets of criteria:",
        "### Inclusion Criteria\n\nALL must be met:\n\n"
        + _numbered(criteria.inclusion_items),
        "### Exclusion Criteria\n\nExclude if ANY apply:\n\n"
        + _numbered(criteria.exclusion_items),
        f"## {content_header}\n\n" + content,
        "## Screening Instructions\n\n" + _SHARED_INSTRUCTIONS + "\n\n"
        + guidance + "\n\n" + DECISION_DIRECTIVE,
    ]
    return ChatRequest(model_name=model_name, system_text=SYSTEM_TEXT,
                       user_text="\n\n".join(sections))
