"""OCR stage: page images in, one Markdown document per article out.

The OCR backend is pluggable: anything with ``ocr_page(article_id,
page) -> markdown`` works, so the remote HTTP endpoint can be swapped
for scripted clients in tests and mock runs. Page requests run with
bounded concurrency (default 14 in flight). Output files are written
atomically and conversion is cached by existence: an article whose
markdown already exists is skipped on re-runs.
"""

from __future__ import annotations

import base64
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .pdf_pages import ConversionFailed, PageImage

log = logging.getLogger(__name__)

PAGE_SEPARATOR = "\n\n---\n\n"
DEFAULT_CONCURRENCY = 14


@dataclass
class MarkdownDoc:
    article_id: str
    pages: list[str] = field(default_factory=list)

    @property
    def page_count(self) -> int:
        return len(self.pages)

    @property
    def full_text(self) -> str:
        return PAGE_SEPARATOR.join(self.pages)

    def write(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(self.full_text, encoding="utf-8")
        os.replace(tmp, path)

    @classmethod
    def read(cls, article_id: str, path: str | Path) -> "MarkdownDoc":
        text = Path(path).read_text(encoding="utf-8")
        return cls(article_id, text.split(PAGE_SEPARATOR))


class HttpOcrClient:
    """Remote OCR endpoint: POST base64 page image, get markdown back.

    Any endpoint honouring this contract can be configured, including
    self-hosted open-weight OCR services.
    """

    def __init__(self, endpoint: str, api_key: str | None = None,
                 timeout: float = 120.0, attempts: int = 3,
                 sleep=time.sleep):
        import requests

        self.endpoint = endpoint
        self.api_key = api_key
        self._session = requests.Session()
        self._timeout = timeout
        self._attempts = attempts
        self._sleep = sleep
        self._requests = requests

    def ocr_page(self, article_id: str, page: PageImage) -> str:
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {"page": page.page_number,
                   "image_b64": base64.b64encode(page.png_bytes).decode()}
        last: Exception | None = None
        for attempt in range(self._attempts):
            try:
                resp = self._session.post(self.endpoint, json=payload,
                                          headers=headers,
                                          timeout=self._timeout)
                if resp.status_code == 200:
                    return resp.json()["markdown"]
                last = RuntimeError(f"HTTP {resp.status_code}")
            except (self._requests.RequestException, KeyError, ValueError) as exc:
                last = exc
            if attempt < self._attempts - 1:
                self._sleep(0.5 * (2 ** attempt))
        raise ConversionFailed(f"OCR failed for page {page.page_number}: {last}")


class ScriptedOcrClient:
    """Maps article ids to per-page markdown fragments (tests/mock runs)."""

    def __init__(self, fragments: dict[str, list[str]]):
        self.fragments = fragments
        self.calls: list[tuple[str, int]] = []

    def ocr_page(self, article_id: str, page: PageImage) -> str:
        self.calls.append((article_id, page.page_number))
        pages = self.fragments.get(article_id)
        if pages is None or page.page_number > len(pages):
            raise ConversionFailed(
                f"no scripted OCR output for {article_id} page "
                f"{page.page_number}")
        return pages[page.page_number - 1]


class DirectoryOcrClient:
    """Scripted OCR from a fixture directory.

    Looks for ``{article_id}.p{n}.md`` per page, falling back to
    ``{article_id}.md`` for single-page documents.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def ocr_page(self, article_id: str, page: PageImage) -> str:
        per_page = self.directory / f"{article_id}.p{page.page_number}.md"
        if per_page.exists():
            return per_page.read_text(encoding="utf-8")
        whole = self.directory / f"{article_id}.md"
        if whole.exists() and page.page_number == 1:
            return whole.read_text(encoding="utf-8")
        raise ConversionFailed(
            f"no OCR fixture for {article_id} page {page.page_number}")


def ocr_document(images: list[PageImage], client, article_id: str,
                 concurrency: int = DEFAULT_CONCURRENCY) -> MarkdownDoc:
    """Run OCR over a page set and assemble the MarkdownDoc."""
    if not images:
        raise ConversionFailed(f"no page images for {article_id}")

    def one(page: PageImage) -> str:
        if page.corrupt:
            return f"<!-- page {page.page_number} unreadable -->"
        return client.ocr_page(article_id, page)

    with ThreadPoolExecutor(max_workers=concurrency) as pool:
        fragments = list(pool.map(one, images))
    return MarkdownDoc(article_id, fragments)


def convert_article(pdf_path: str | Path, article_id: str,
                    out_dir: str | Path, client, *,
                    dpi: int | None = None,
                    concurrency: int = DEFAULT_CONCURRENCY) -> Path:
    """Convert one article PDF to ``<article_id>.md``; skips existing."""
    from .pdf_pages import DEFAULT_DPI, render_pages

    out_path = Path(out_dir) / f"{article_id}.md"
    if out_path.exists():
        log.debug("markdown exists for %s; skipping conversion", article_id)
        return out_path
    images = render_pages(pdf_path, dpi=dpi or DEFAULT_DPI)
    doc = ocr_document(images, client, article_id, concurrency=concurrency)
    doc.write(out_path)
    return out_path
