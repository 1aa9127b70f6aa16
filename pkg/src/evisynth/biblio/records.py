"""Record types for the retrieval stage plus CSV/JSONL persistence.

The article CSV columns are exactly the metadata fields captured at
search time plus the fields populated during PDF retrieval, in that
order, so downstream stages and external consumers see a stable layout.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable, Iterator


class Source:
    OPENALEX = "OpenAlex"
    PUBMED = "PubMed"
    EUROPEPMC = "EuropePMC"
    BOTH = "Both"


@dataclass
class PathogenQueryConfig:
    """Pathogen-specific pieces interpolated into the standard query."""

    pathogen_name: str
    identifier_clause: str
    additional_terms: str | None = None
    exclusion_clause: str | None = None

    def __post_init__(self):
        if not self.identifier_clause or not self.identifier_clause.strip():
            raise ValueError("identifier_clause must be non-empty")


# Search-time metadata columns followed by download-time columns.
SEARCH_FIELDS = [
    "article_id",
    "source",
    "pmid",
    "pmcid",
    "doi",
    "title",
    "authors",
    "journal",
    "year",
    "abstract",
    "url",
    "openalex_id",
    "openalex_pdf_url",
    "pathogen",
    "query",
    "harvested_at",
]
DOWNLOAD_FIELDS = [
    "downloaded",
    "downloaded_path",
    "download_source",
    "download_attempted_at",
    "download_error",
]
ARTICLE_FIELDS = SEARCH_FIELDS + DOWNLOAD_FIELDS


@dataclass
class ArticleRecord:
    article_id: str
    source: str
    title: str
    pathogen: str
    query: str
    harvested_at: str
    pmid: str | None = None
    pmcid: str | None = None
    doi: str | None = None
    authors: str = ""
    journal: str | None = None
    year: int | None = None
    abstract: str | None = None
    url: str | None = None
    openalex_id: str | None = None
    openalex_pdf_url: str | None = None
    downloaded: bool = False
    downloaded_path: str | None = None
    download_source: str | None = None
    download_attempted_at: str | None = None
    download_error: str | None = None

    def __post_init__(self):
        has_key = any(
            v not in (None, "")
            for v in (self.doi, self.pmid, self.pmcid, self.openalex_id)
        ) or (self.title and self.year is not None)
        if not has_key:
            raise ValueError(
                f"record {self.article_id!r} has no identifier "
                "(need doi, pmid, pmcid, openalex_id, or title+year)"
            )

    def to_row(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ARTICLE_FIELDS}


def write_articles_csv(records: Iterable[ArticleRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=ARTICLE_FIELDS)
        writer.writeheader()
        for rec in records:
            row = rec.to_row()
            row["downloaded"] = "true" if row["downloaded"] else "false"
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})


def write_articles_jsonl(records: Iterable[ArticleRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec.to_row(), ensure_ascii=False) + "\n")


def read_articles_jsonl(path: str | Path) -> Iterator[ArticleRecord]:
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            yield ArticleRecord(**row)


def read_articles_csv(path: str | Path) -> Iterator[ArticleRecord]:
    with open(path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            kwargs = {k: (v if v != "" else None) for k, v in row.items()}
            kwargs["downloaded"] = row.get("downloaded") == "true"
            if kwargs.get("year") is not None:
                kwargs["year"] = int(kwargs["year"])
            kwargs["authors"] = kwargs.get("authors") or ""
            for req in ("title", "pathogen", "query", "harvested_at", "source"):
                kwargs[req] = kwargs.get(req) or ""
            yield ArticleRecord(**kwargs)


@dataclass
class DownloadOutcome:
    """Result of one cascading download attempt."""

    SUCCESS = "Success"
    ALL_SOURCES_FAILED = "AllSourcesFailed"
    SKIPPED = "Skipped"

    status: str
    source_tried: list[tuple[str, str]] = field(default_factory=list)
    bytes_written: int | None = None
