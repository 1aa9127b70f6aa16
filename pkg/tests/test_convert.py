from __future__ import annotations

import io

import pytest
from PIL import Image

from evisynth.convert import (
    ConversionFailed,
    DirectoryOcrClient,
    MarkdownDoc,
    PAGE_SEPARATOR,
    ScriptedOcrClient,
    convert_article,
    ocr_document,
    render_pages,
)
from pdf_helpers import make_pdf


def test_three_page_pdf_renders_three_images():
    pdf = make_pdf(["page one text", "page two text", "page three text"])
    images = render_pages(pdf)
    assert len(images) == 3
    assert [i.page_number for i in images] == [1, 2, 3]
    assert "page two text" in images[1].text


def test_rendered_image_is_png_at_dpi():
    pdf = make_pdf(["hello"])
    (page,) = render_pages(pdf, dpi=100)
    img = Image.open(io.BytesIO(page.png_bytes))
    assert img.size == (850, 1100)


def test_compressed_streams_supported():
    pdf = make_pdf(["flate encoded body"], compress=True)
    (page,) = render_pages(pdf)
    assert "flate encoded body" in page.text


def test_zero_page_pdf_errors():
    with pytest.raises(ConversionFailed):
        render_pages(b"%PDF-1.4\ntrailer\n%%EOF")


def test_non_pdf_errors():
    with pytest.raises(ConversionFailed):
        render_pages(b"<html>not a pdf</html>")


def test_corrupt_page_flagged_others_survive():
    import re

    pdf = make_pdf([f"page {i}" for i in range(1, 6)], compress=True)
    # scramble page 3's content stream (object 8) so inflate fails
    match = re.search(rb"8 0 obj.*?stream\n", pdf, re.S)
    start = match.end()
    corrupted = pdf[:start] + b"\xde\xad\xbe\xef" + pdf[start + 4:]
    images = render_pages(corrupted)
    assert len(images) == 5
    assert sum(1 for i in images if i.corrupt) == 1
    assert images[2].corrupt


def test_reportlab_pdfs_parse():
    # cross-check the mini parser against a mainstream PDF writer
    from reportlab.pdfgen import canvas

    buf = io.BytesIO()
    c = canvas.Canvas(buf)
    for i in range(2):
        c.drawString(72, 720, f"reportlab page {i + 1}")
        c.showPage()
    c.save()
    images = render_pages(buf.getvalue())
    assert len(images) == 2
    assert "reportlab page 1" in images[0].text


# ---------------------------------------------------------------------- OCR

def test_ocr_document_mock_round_trip():
    pdf = make_pdf(["alpha", "beta"])
    images = render_pages(pdf)
    client = ScriptedOcrClient({"A1": ["# Alpha\n\ntext", "## Beta\n\nmore"]})
    doc = ocr_document(images, client, "A1")
    assert doc.pages == ["# Alpha\n\ntext", "## Beta\n\nmore"]
    assert doc.page_count == 2
    assert doc.full_text == "# Alpha\n\ntext" + PAGE_SEPARATOR + "## Beta\n\nmore"


def test_ocr_empty_image_list_errors():
    with pytest.raises(ConversionFailed):
        ocr_document([], ScriptedOcrClient({}), "A1")


def test_ocr_concurrency_honoured():
    import threading

    lock = threading.Lock()
    state = {"current": 0, "peak": 0}

    class SlowClient:
        def ocr_page(self, article_id, page):
            import time

            with lock:
                state["current"] += 1
                state["peak"] = max(state["peak"], state["current"])
            time.sleep(0.02)
            with lock:
                state["current"] -= 1
            return f"p{page.page_number}"

    pdf = make_pdf([f"page {i}" for i in range(30)])
    images = render_pages(pdf)
    doc = ocr_document(images, SlowClient(), "A1", concurrency=14)
    assert doc.page_count == 30
    assert state["peak"] <= 14
    assert state["peak"] > 1  # actually ran concurrently


def test_convert_article_skips_existing(tmp_path):
    pdf_path = tmp_path / "a.pdf"
    pdf_path.write_bytes(make_pdf(["content"]))
    client = ScriptedOcrClient({"A1": ["converted"]})
    out = convert_article(pdf_path, "A1", tmp_path / "md", client)
    assert out.read_text() == "converted"
    assert client.calls == [("A1", 1)]
    convert_article(pdf_path, "A1", tmp_path / "md", client)
    assert client.calls == [("A1", 1)]  # cache-by-existence


def test_markdown_doc_round_trip(tmp_path):
    doc = MarkdownDoc("A9", ["one", "two"])
    doc.write(tmp_path / "A9.md")
    loaded = MarkdownDoc.read("A9", tmp_path / "A9.md")
    assert loaded.pages == doc.pages
    assert loaded.full_text == doc.full_text


def test_directory_ocr_client(tmp_path):
    (tmp_path / "A1.md").write_text("whole doc", encoding="utf-8")
    (tmp_path / "A2.p1.md").write_text("page 1", encoding="utf-8")
    (tmp_path / "A2.p2.md").write_text("page 2", encoding="utf-8")
    client = DirectoryOcrClient(tmp_path)
    pdf = make_pdf(["x", "y"])
    img1, img2 = render_pages(pdf)
    assert client.ocr_page("A2", img1) == "page 1"
    assert client.ocr_page("A2", img2) == "page 2"
    assert client.ocr_page("A1", img1) == "whole doc"
    with pytest.raises(ConversionFailed):
        client.ocr_page("A1", img2)
