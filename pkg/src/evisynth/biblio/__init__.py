"""Bibliographic retrieval: query building, harvesting, deduplication,
identifier resolution, and cascading PDF download."""

from .records import ArticleRecord, DownloadOutcome, PathogenQueryConfig, Source
from .identifiers import IdentifierKind, InvalidIdentifierError, normalize_identifier
from .queries import build_query, ConfigurationError
from .dedup import deduplicate, quality_control
from .download import PdfVerdict, validate_pdf, download_pdf, DownloadManager
from .resolve import resolve_identifiers

__all__ = [
    "ArticleRecord",
    "DownloadOutcome",
    "PathogenQueryConfig",
    "Source",
    "IdentifierKind",
    "InvalidIdentifierError",
    "normalize_identifier",
    "build_query",
    "ConfigurationError",
    "deduplicate",
    "quality_control",
    "PdfVerdict",
    "validate_pdf",
    "download_pdf",
    "DownloadManager",
    "resolve_identifiers",
]
