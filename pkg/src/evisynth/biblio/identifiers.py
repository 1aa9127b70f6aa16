"""Identifier normalisation used by deduplication and caching."""

from __future__ import annotations

import re


class IdentifierKind:
    DOI = "doi"
    PMID = "pmid"
    PMCID = "pmcid"
    OPENALEX = "openalex_id"
    TITLE_YEAR = "title_year"

    ALL = (DOI, PMID, PMCID, OPENALEX, TITLE_YEAR)


class InvalidIdentifierError(ValueError):
    pass


_DOI_PREFIXES = ("https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
                 "http://dx.doi.org/", "doi.org/", "doi:")
_NON_ALNUM = re.compile(r"[^a-z0-9]")


def normalize_identifier(kind: str, raw) -> str:
    """Normalise a raw identifier into its canonical dedup key.

    ``raw`` is a string for all kinds except title-year, which takes a
    ``(title, year)`` pair. Raises :class:`InvalidIdentifierError` when
    the result would be empty.
    """
    if kind == IdentifierKind.TITLE_YEAR:
        title, year = raw
        key = _NON_ALNUM.sub("", (title or "").lower()) + str(year)
        if not _NON_ALNUM.sub("", (title or "").lower()):
            raise InvalidIdentifierError("title normalises to empty string")
        return key

    if raw is None:
        raise InvalidIdentifierError(f"empty {kind}")
    text = str(raw).strip()

    if kind == IdentifierKind.DOI:
        low = text.lower()
        for prefix in _DOI_PREFIXES:
            if low.startswith(prefix):
                low = low[len(prefix):]
        key = low.strip()
    elif kind == IdentifierKind.PMID:
        key = re.sub(r"\D", "", text)
    elif kind == IdentifierKind.PMCID:
        body = text.upper()
        while body.startswith("PMC"):
            body = body[3:]
        key = "PMC" + body if body else ""
    elif kind == IdentifierKind.OPENALEX:
        key = text.rsplit("/", 1)[-1].upper()
    else:
        raise InvalidIdentifierError(f"unknown identifier kind {kind!r}")

    if not key:
        raise InvalidIdentifierError(f"{kind} {raw!r} normalises to empty string")
    return key
