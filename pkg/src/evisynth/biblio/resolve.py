"""Sibling identifier resolution through NCBI's PMC ID Converter.

Missing pmid/pmcid/doi values are filled in before the download cascade
runs so each source's identifier requirement can be met. Lookups are
cached per normalised key, including negative markers; an unreachable
converter leaves the record unchanged with a logged warning.
"""

from __future__ import annotations

import logging
import time
from dataclasses import replace
from typing import Callable

from .cache import DiskCache
from .identifiers import IdentifierKind, InvalidIdentifierError, normalize_identifier
from .ratelimit import SlidingWindowRateLimiter
from .records import ArticleRecord
from .transport import TransportError, request_with_retries

log = logging.getLogger(__name__)

CONVERTER_URL = "https://www.ncbi.nlm.nih.gov/pmc/utils/idconv/v1.0/"
CONVERTER_RATE_LIMIT = 10


class IdConverter:
    def __init__(self, transport, *, base_url: str = CONVERTER_URL,
                 cache: DiskCache | None = None,
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep,
                 tool: str = "evisynth", email: str | None = None):
        self.transport = transport
        self.base_url = base_url
        self.cache = cache
        self.tool = tool
        self.email = email
        self._sleep = sleep
        self.limiter = SlidingWindowRateLimiter(CONVERTER_RATE_LIMIT,
                                                clock=clock, sleep=sleep)

    def lookup(self, identifier: str, key: str) -> dict | None:
        """Query the converter for one identifier; returns the record
        dict (pmid/pmcid/doi keys) or None."""
        cache_key = f"idconv:{key}"
        if self.cache is not None:
            cached = self.cache.get(cache_key)
            if cached is not None:
                return None if DiskCache.is_negative(cached) else cached

        params = {"ids": identifier, "format": "json", "tool": self.tool}
        if self.email:
            params["email"] = self.email
        self.limiter.acquire()
        resp = request_with_retries(self.transport, "GET", self.base_url,
                                    params=params, sleep=self._sleep)
        result = None
        if resp.status == 200:
            for entry in resp.json().get("records", []):
                if entry.get("status") == "error":
                    continue
                result = {k: entry.get(k) for k in ("pmid", "pmcid", "doi")}
                break
        if self.cache is not None:
            if result is None:
                self.cache.set_negative(cache_key)
            else:
                self.cache.set(cache_key, result)
        return result


def resolve_identifiers(record: ArticleRecord, converter: IdConverter) -> ArticleRecord:
    """Fill in missing sibling identifiers obtainable from the converter."""
    if record.pmid and record.pmcid and record.doi:
        return record
    if not (record.pmid or record.pmcid or record.doi):
        raise ValueError("record has none of pmid/pmcid/doi to resolve from")

    for kind, value in ((IdentifierKind.PMID, record.pmid),
                        (IdentifierKind.PMCID, record.pmcid),
                        (IdentifierKind.DOI, record.doi)):
        if not value:
            continue
        try:
            key = f"{kind}:{normalize_identifier(kind, value)}"
        except InvalidIdentifierError:
            continue
        try:
            found = converter.lookup(str(value), key)
        except TransportError as exc:
            log.warning("id converter unreachable for %s: %s", record.article_id, exc)
            return record
        if found:
            updates = {}
            for name in ("pmid", "pmcid", "doi"):
                if not getattr(record, name) and found.get(name):
                    updates[name] = found[name]
            return replace(record, **updates) if updates else record
    return record
