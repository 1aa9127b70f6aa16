"""PDF-to-Markdown conversion: page rendering plus a remote OCR stage."""

from .pdf_pages import ConversionFailed, PageImage, page_count, render_pages
from .ocr import (
    DirectoryOcrClient,
    HttpOcrClient,
    MarkdownDoc,
    ScriptedOcrClient,
    convert_article,
    ocr_document,
    PAGE_SEPARATOR,
)

__all__ = [
    "ConversionFailed",
    "PageImage",
    "page_count",
    "render_pages",
    "DirectoryOcrClient",
    "HttpOcrClient",
    "MarkdownDoc",
    "ScriptedOcrClient",
    "convert_article",
    "ocr_document",
    "PAGE_SEPARATOR",
]
