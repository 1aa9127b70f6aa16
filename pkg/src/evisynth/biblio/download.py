"""Cascading PDF retrieval with validation, caching, and checkpoints.

Sources are tried strictly in priority order, stopping at the first
validated download:

    1. OpenAlex direct PDF URL   (30 req/s, not cached)
    2. Europe PMC fulltext        (20 req/s, cached)
    3. Unpaywall                  (50 req/s, cached)
    4. OpenAlex DOI lookup        (30 req/s, cached)

Bytes stream to a temp file in 64 KB chunks, are validated (magic
bytes, HTML denial inspection, 500 MB cap), then the file is renamed
using identifier priority PMID > PMCID > DOI hash > title hash.
Progress is checkpointed every 50 records; resuming never re-downloads
an already-successful record.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Callable, Iterable

from .cache import DiskCache
from .identifiers import IdentifierKind, InvalidIdentifierError, normalize_identifier
from .ratelimit import SlidingWindowRateLimiter
from .records import ArticleRecord, DownloadOutcome
from .transport import TransportError, request_with_retries

log = logging.getLogger(__name__)

CHUNK_SIZE = 64 * 1024
MAX_PDF_BYTES = 500 * 1024 * 1024
CHECKPOINT_EVERY = 50

SOURCE_ORDER = ("openalex_direct", "europepmc", "unpaywall", "openalex_doi")
SOURCE_RATE_LIMITS = {
    "openalex_direct": 30,
    "europepmc": 20,
    "unpaywall": 50,
    "openalex_doi": 30,
}

DENIAL_PHRASES = ("access denied", "sign in", "captcha", "just a moment",
                  "forbidden")


class PdfVerdict:
    VALID = "Valid"
    NOT_PDF = "NotPdf"
    HTML_DENIAL = "HtmlDenialPage"
    TOO_LARGE = "TooLarge"


def validate_pdf(head: bytes, length: int, content_type: str | None = None,
                 denial_phrases: Iterable[str] = DENIAL_PHRASES) -> str:
    """Classify a downloaded byte stream.

    ``head`` is the first few KB of the stream, ``length`` the total
    byte count. HTML-denial inspection runs before the magic-byte check
    so paywall pages get the specific verdict.
    """
    if length > MAX_PDF_BYTES:
        return PdfVerdict.TOO_LARGE
    sniff = head[:4096].decode("latin-1", errors="replace").lower()
    looks_html = "<html" in sniff or (content_type or "").lower().startswith("text/html")
    if looks_html and any(p in sniff for p in denial_phrases):
        return PdfVerdict.HTML_DENIAL
    if not head.startswith(b"%PDF"):
        return PdfVerdict.NOT_PDF
    return PdfVerdict.VALID


def pdf_filename(record: ArticleRecord) -> str:
    """Standardised filename by identifier priority."""
    if record.pmid:
        return f"{normalize_identifier(IdentifierKind.PMID, record.pmid)}.pdf"
    if record.pmcid:
        return f"{normalize_identifier(IdentifierKind.PMCID, record.pmcid)}.pdf"
    if record.doi:
        key = normalize_identifier(IdentifierKind.DOI, record.doi)
        return f"doi-{hashlib.sha256(key.encode()).hexdigest()[:16]}.pdf"
    key = normalize_identifier(IdentifierKind.TITLE_YEAR,
                               (record.title, record.year or ""))
    return f"title-{hashlib.sha256(key.encode()).hexdigest()[:16]}.pdf"


class Checkpoint:
    """Single JSON file mapping processed article ids to outcomes."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.processed: dict[str, dict] = {}
        self._pending = 0
        if self.path.exists():
            try:
                with open(self.path, encoding="utf-8") as f:
                    self.processed = json.load(f).get("processed", {})
            except (OSError, ValueError):
                log.warning("unreadable checkpoint at %s; starting fresh", self.path)

    def completed(self, article_id: str) -> bool:
        entry = self.processed.get(article_id)
        return bool(entry and entry.get("status") == DownloadOutcome.SUCCESS)

    def record(self, article_id: str, status: str, path: str | None = None) -> None:
        with self._lock:
            self.processed[article_id] = {"status": status, "path": path}
            self._pending += 1
            if self._pending >= CHECKPOINT_EVERY:
                self._flush()

    def _flush(self) -> None:
        tmp = self.path.with_suffix(".tmp")
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump({"processed": self.processed}, f)
        os.replace(tmp, self.path)
        self._pending = 0

    def flush(self) -> None:
        with self._lock:
            self._flush()


class DownloadManager:
    """Drives the cascading download for a set of records.

    One shared rate limiter per source; a worker pool (default 16)
    processes records concurrently.
    """

    def __init__(self, out_dir: str | Path, transport, *,
                 cache: DiskCache | None = None,
                 unpaywall_email: str | None = None,
                 europepmc_base: str = "https://www.ebi.ac.uk/europepmc/webservices/rest",
                 unpaywall_base: str = "https://api.unpaywall.org/v2",
                 openalex_base: str = "https://api.openalex.org",
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep,
                 now_iso: Callable[[], str] | None = None,
                 rate_limits: dict[str, float] | None = None):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.transport = transport
        self.cache = cache
        self.unpaywall_email = unpaywall_email or os.environ.get("UNPAYWALL_EMAIL")
        self.europepmc_base = europepmc_base.rstrip("/")
        self.unpaywall_base = unpaywall_base.rstrip("/")
        self.openalex_base = openalex_base.rstrip("/")
        self._sleep = sleep
        self._now_iso = now_iso or (lambda: time.strftime("%Y-%m-%dT%H:%M:%S+00:00",
                                                          time.gmtime()))
        limits = dict(SOURCE_RATE_LIMITS)
        limits.update(rate_limits or {})
        self.limiters = {
            name: SlidingWindowRateLimiter(rate, clock=clock, sleep=sleep)
            for name, rate in limits.items()
        }

    # -- per-source URL resolution ------------------------------------

    def _resolve_url(self, source: str, record: ArticleRecord) -> str:
        """Return the PDF URL for this source or raise LookupError."""
        if source == "openalex_direct":
            if not record.openalex_pdf_url:
                raise LookupError("no openalex_pdf_url on record")
            return record.openalex_pdf_url

        if source == "europepmc":
            if not record.pmcid:
                raise LookupError("no pmcid on record")
            pmcid = normalize_identifier(IdentifierKind.PMCID, record.pmcid)
            return f"{self.europepmc_base}/{pmcid}/fullTextPDF"

        if not record.doi:
            raise LookupError("no doi on record")
        doi = normalize_identifier(IdentifierKind.DOI, record.doi)
        cache_key = f"{source}:{doi}"
        if self.cache is not None:
            cached = self.cache.get(cache_key)
            if cached is not None:
                if DiskCache.is_negative(cached):
                    raise LookupError("cached negative result")
                return cached

        if source == "unpaywall":
            if not self.unpaywall_email:
                raise LookupError("UNPAYWALL_EMAIL not configured")
            url = f"{self.unpaywall_base}/{doi}"
            self.limiters[source].acquire()
            resp = request_with_retries(self.transport, "GET", url,
                                        params={"email": self.unpaywall_email},
                                        sleep=self._sleep)
            pdf_url = None
            if resp.status == 200:
                payload = resp.json()
                loc = payload.get("best_oa_location") or {}
                pdf_url = loc.get("url_for_pdf")
                if not pdf_url:
                    for loc in payload.get("oa_locations") or []:
                        if loc.get("url_for_pdf"):
                            pdf_url = loc["url_for_pdf"]
                            break
        elif source == "openalex_doi":
            url = f"{self.openalex_base}/works/https://doi.org/{doi}"
            self.limiters[source].acquire()
            resp = request_with_retries(self.transport, "GET", url,
                                        sleep=self._sleep)
            pdf_url = None
            if resp.status == 200:
                payload = resp.json()
                for loc in (payload.get("best_oa_location"),
                            payload.get("primary_location")):
                    if loc and loc.get("pdf_url"):
                        pdf_url = loc["pdf_url"]
                        break
        else:
            raise LookupError(f"unknown source {source!r}")

        if not pdf_url:
            if self.cache is not None:
                self.cache.set_negative(cache_key)
            raise LookupError(f"no open-access PDF location (HTTP {resp.status})")
        if self.cache is not None:
            self.cache.set(cache_key, pdf_url)
        return pdf_url

    # -- streaming fetch ------------------------------------------------

    def _fetch(self, source: str, url: str, dest: Path) -> tuple[str, int]:
        """Stream ``url`` to ``dest``; returns (verdict, bytes_written)."""
        self.limiters[source].acquire()
        resp = request_with_retries(self.transport, "GET", url, stream=True,
                                    sleep=self._sleep)
        if resp.status != 200:
            raise TransportError(f"HTTP {resp.status}")
        declared = int(resp.headers.get("content-length", 0) or 0)
        if declared > MAX_PDF_BYTES:
            return PdfVerdict.TOO_LARGE, 0
        head = b""
        total = 0
        with open(dest, "wb") as f:
            for chunk in resp.iter_content(CHUNK_SIZE):
                if not chunk:
                    continue
                if len(head) < 4096:
                    head += chunk[: 4096 - len(head)]
                total += len(chunk)
                if total > MAX_PDF_BYTES:
                    return PdfVerdict.TOO_LARGE, total
                f.write(chunk)
        verdict = validate_pdf(head, max(total, declared),
                               resp.headers.get("content-type"))
        return verdict, total

    # -- cascade ----------------------------------------------------------

    def download_pdf(self, record: ArticleRecord) -> tuple[DownloadOutcome, ArticleRecord]:
        """Try sources in priority order; stop at the first Valid PDF."""
        tried: list[tuple[str, str]] = []
        attempted_at = self._now_iso()
        tmp = self.out_dir / f".{record.article_id}.part"

        for source in SOURCE_ORDER:
            try:
                url = self._resolve_url(source, record)
            except (LookupError, InvalidIdentifierError) as exc:
                tried.append((source, f"skipped: {exc}"))
                continue
            try:
                verdict, nbytes = self._fetch(source, url, tmp)
            except TransportError as exc:
                tried.append((source, f"error: {exc}"))
                continue
            if verdict == PdfVerdict.VALID:
                final = self.out_dir / pdf_filename(record)
                os.replace(tmp, final)
                tried.append((source, "success"))
                updated = replace(record, downloaded=True,
                                  downloaded_path=str(final),
                                  download_source=source,
                                  download_attempted_at=attempted_at,
                                  download_error=None)
                return DownloadOutcome(DownloadOutcome.SUCCESS, tried, nbytes), updated
            tried.append((source, f"invalid: {verdict}"))

        if tmp.exists():
            tmp.unlink()
        error = "; ".join(f"{s}: {msg}" for s, msg in tried)
        updated = replace(record, downloaded=False,
                          download_attempted_at=attempted_at,
                          download_error=error)
        return DownloadOutcome(DownloadOutcome.ALL_SOURCES_FAILED, tried), updated

    def run(self, records: list[ArticleRecord], *, workers: int = 16,
            checkpoint: Checkpoint | None = None) -> list[ArticleRecord]:
        """Download a batch with a bounded worker pool and checkpointing."""
        results: dict[str, ArticleRecord] = {}

        def work(rec: ArticleRecord) -> ArticleRecord:
            if checkpoint is not None and checkpoint.completed(rec.article_id):
                prior = checkpoint.processed[rec.article_id]
                return replace(rec, downloaded=True,
                               downloaded_path=prior.get("path"),
                               download_source=rec.download_source)
            outcome, updated = self.download_pdf(rec)
            if checkpoint is not None:
                checkpoint.record(rec.article_id, outcome.status,
                                  updated.downloaded_path)
            return updated

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for rec, updated in zip(records, pool.map(work, records)):
                results[rec.article_id] = updated
        if checkpoint is not None:
            checkpoint.flush()
        return [results[r.article_id] for r in records]


def download_pdf(record: ArticleRecord, out_dir: str | Path, transport,
                 **kwargs) -> tuple[DownloadOutcome, ArticleRecord]:
    """One-shot convenience wrapper around DownloadManager."""
    return DownloadManager(out_dir, transport, **kwargs).download_pdf(record)
