"""Page-by-page PDF rasterisation.

No PDF library is assumed: a minimal pure-Python parser walks the
object table, counts /Type /Page objects, inflates FlateDecode content
streams, and recovers text from Tj/TJ operators. Each page is drawn
onto a PIL raster at the configured DPI (default 200). This is a
best-effort renderer adequate for driving the OCR stage and the mocked
pipeline; an external rasteriser command can be plugged in where exact
fidelity matters. A corrupt page yields a flagged placeholder image
while the remaining pages still render.
"""

from __future__ import annotations

import base64
import io
import logging
import re
import zlib
from dataclasses import dataclass
from pathlib import Path

from PIL import Image, ImageDraw

log = logging.getLogger(__name__)

DEFAULT_DPI = 200
_PAGE_SIZE_INCHES = (8.5, 11.0)

_OBJ_RE = re.compile(rb"(\d+)\s+(\d+)\s+obj\b(.*?)endobj", re.S)
_STREAM_RE = re.compile(rb"stream\r?\n(.*?)endstream", re.S)
_TEXT_SHOW_RE = re.compile(rb"\((?:[^()\\]|\\.)*\)")


class ConversionFailed(Exception):
    pass


@dataclass
class PageImage:
    page_number: int
    png_bytes: bytes
    text: str = ""
    corrupt: bool = False


def _parse_objects(data: bytes) -> dict[int, bytes]:
    return {int(m.group(1)): m.group(3) for m in _OBJ_RE.finditer(data)}


def _page_objects(objects: dict[int, bytes]) -> list[tuple[int, bytes]]:
    pages = []
    for num, body in sorted(objects.items()):
        if re.search(rb"/Type\s*/Page\b(?!s)", body):
            pages.append((num, body))
    return pages


def page_count(pdf_bytes: bytes) -> int:
    return len(_page_objects(_parse_objects(pdf_bytes)))


def _decode_stream(body: bytes) -> bytes:
    match = _STREAM_RE.search(body)
    if match is None:
        return b""
    raw = match.group(1)
    if b"/ASCII85Decode" in body:
        text = raw.strip()
        if text.startswith(b"<~"):
            text = text[2:]
        if text.endswith(b"~>"):
            text = text[:-2]
        raw = base64.a85decode(text)
    if b"/FlateDecode" in body:
        # decompressobj tolerates EOL padding before the endstream keyword
        inflater = zlib.decompressobj()
        out = inflater.decompress(raw)
        return out + inflater.flush()
    return raw.rstrip(b"\r\n")


def _unescape(literal: bytes) -> str:
    text = literal[1:-1]
    text = re.sub(rb"\\([()\\])", rb"\1", text)
    text = re.sub(rb"\\\d{1,3}", b"", text)
    return text.decode("latin-1", errors="replace")


def _extract_text(content: bytes) -> str:
    lines: list[str] = []
    # group show operators by text line: split on ET/Td movements crudely
    for chunk in re.split(rb"T[dDm*]|ET", content):
        shown = [_unescape(m.group(0)) for m in _TEXT_SHOW_RE.finditer(chunk)]
        if shown:
            lines.append("".join(shown))
    return "\n".join(line for line in lines if line.strip())


def _draw_page(text: str, dpi: int, banner: str | None = None) -> bytes:
    width = int(_PAGE_SIZE_INCHES[0] * dpi)
    height = int(_PAGE_SIZE_INCHES[1] * dpi)
    image = Image.new("L", (width, height), color=255)
    draw = ImageDraw.Draw(image)
    margin = dpi // 2
    y = margin
    if banner:
        draw.rectangle([0, 0, width, margin // 2], fill=200)
        draw.text((margin // 4, margin // 8), banner, fill=0)
        y += margin // 2
    line_height = max(dpi // 14, 10)
    for line in text.splitlines():
        if y > height - margin:
            break
        draw.text((margin, y), line[:200], fill=0)
        y += line_height
    buf = io.BytesIO()
    image.save(buf, format="PNG")
    return buf.getvalue()


def render_pages(pdf: str | Path | bytes, dpi: int = DEFAULT_DPI) -> list[PageImage]:
    """Rasterise every page of a validated PDF.

    Returns one PageImage per page; corrupt pages come back flagged with
    a placeholder raster instead of aborting the document. An empty page
    tree raises ConversionFailed.
    """
    data = pdf if isinstance(pdf, bytes) else Path(pdf).read_bytes()
    if not data.startswith(b"%PDF"):
        raise ConversionFailed("not a PDF (missing %PDF header)")
    objects = _parse_objects(data)
    pages = _page_objects(objects)
    if not pages:
        raise ConversionFailed("PDF contains no pages")

    images: list[PageImage] = []
    for index, (num, body) in enumerate(pages, start=1):
        try:
            content = b""
            ref = re.search(rb"/Contents\s+(\d+)\s+\d+\s+R", body)
            if ref is not None:
                content = _decode_stream(objects.get(int(ref.group(1)), b""))
            else:
                content = _decode_stream(body)
            text = _extract_text(content)
            images.append(PageImage(index, _draw_page(text, dpi), text=text))
        except (zlib.error, ValueError, KeyError) as exc:
            log.warning("page %d of PDF unreadable (%s); using placeholder",
                        index, exc)
            images.append(PageImage(
                index, _draw_page("", dpi, banner=f"page {index} unreadable"),
                corrupt=True))
    return images
