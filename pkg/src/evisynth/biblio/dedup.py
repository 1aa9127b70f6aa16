"""Hierarchical five-level record deduplication and quality control.

Records are matched in key order DOI > PMID > PMCID > OpenAlex ID >
title-year. Merging preserves every non-null identifier across the
duplicates while narrative fields (title, abstract, journal, plus
authors and year) keep the first non-null value; records seen in more
than one database are marked source "Both".
"""

from __future__ import annotations

import logging
from dataclasses import replace

from .identifiers import IdentifierKind, InvalidIdentifierError, normalize_identifier
from .records import ArticleRecord, Source

log = logging.getLogger(__name__)

_ID_FIELDS = ("doi", "pmid", "pmcid", "openalex_id", "url", "openalex_pdf_url")
_NARRATIVE_FIELDS = ("title", "abstract", "journal", "authors", "year")


def _keys_for(record: ArticleRecord) -> list[tuple[str, str]]:
    keys = []
    for kind, value in (
        (IdentifierKind.DOI, record.doi),
        (IdentifierKind.PMID, record.pmid),
        (IdentifierKind.PMCID, record.pmcid),
        (IdentifierKind.OPENALEX, record.openalex_id),
    ):
        if value:
            try:
                keys.append((kind, normalize_identifier(kind, value)))
            except InvalidIdentifierError:
                continue
    if record.title and record.year is not None:
        try:
            keys.append((IdentifierKind.TITLE_YEAR,
                         normalize_identifier(IdentifierKind.TITLE_YEAR,
                                              (record.title, record.year))))
        except InvalidIdentifierError:
            pass
    return keys


def _merge_into(canonical: ArticleRecord, dup: ArticleRecord) -> ArticleRecord:
    updates: dict = {}
    for name in _ID_FIELDS:
        if getattr(canonical, name) in (None, "") and getattr(dup, name) not in (None, ""):
            updates[name] = getattr(dup, name)
    for name in _NARRATIVE_FIELDS:
        current = getattr(canonical, name)
        if current in (None, "") and getattr(dup, name) not in (None, ""):
            updates[name] = getattr(dup, name)
    if dup.source != canonical.source:
        updates["source"] = Source.BOTH
    return replace(canonical, **updates) if updates else canonical


def deduplicate(records: list[ArticleRecord]) -> list[ArticleRecord]:
    """Merge duplicates matched at any of the five identifier levels.

    Pure function; output preserves first-occurrence order. A record
    whose keys hit several existing groups is evidence those groups are
    the same article, so the groups are joined too (union-find), with
    the earliest group's narrative values taking precedence.
    """
    groups: list[ArticleRecord | None] = []
    parent: list[int] = []
    index: dict[tuple[str, str], int] = {}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for rec in records:
        keys = _keys_for(rec)
        roots = sorted({find(index[k]) for k in keys if k in index})
        if not roots:
            groups.append(rec)
            parent.append(len(groups) - 1)
            target = len(groups) - 1
        else:
            target = roots[0]
            groups[target] = _merge_into(groups[target], rec)
            for other in roots[1:]:
                groups[target] = _merge_into(groups[target], groups[other])
                groups[other] = None
                parent[other] = target
        for key in _keys_for(groups[target]):
            index.setdefault(key, target)

    return [g for g in groups if g is not None]


def quality_control(records: list[ArticleRecord],
                    failed_validation: set[str] | None = None) -> list[ArticleRecord]:
    """Final filtering pass after retrieval.

    Drops records lacking abstracts, duplicate article ids, duplicate
    DOIs (first occurrence kept), and records whose downloaded file
    failed validation (``failed_validation`` holds those article ids).
    """
    failed = failed_validation or set()
    seen_ids: set[str] = set()
    seen_dois: set[str] = set()
    kept = []
    for rec in records:
        if not rec.abstract or not rec.abstract.strip():
            log.debug("QC drop (no abstract): %s", rec.article_id)
            continue
        if rec.article_id in seen_ids:
            continue
        if rec.article_id in failed:
            log.debug("QC drop (failed file validation): %s", rec.article_id)
            continue
        if rec.doi:
            try:
                key = normalize_identifier(IdentifierKind.DOI, rec.doi)
            except InvalidIdentifierError:
                key = None
            if key is not None:
                if key in seen_dois:
                    continue
                seen_dois.add(key)
        seen_ids.add(rec.article_id)
        kept.append(rec)
    return kept
