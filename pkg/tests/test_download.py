from __future__ import annotations

import json

import pytest

from evisynth.biblio.cache import DiskCache
from evisynth.biblio.download import (
    Checkpoint,
    DownloadManager,
    PdfVerdict,
    pdf_filename,
    validate_pdf,
)
from evisynth.biblio.ratelimit import FakeClock, SlidingWindowRateLimiter
from evisynth.biblio.records import DownloadOutcome
from evisynth.biblio.transport import FakeResponse, TransportError

PDF = b"%PDF-1.7\n" + b"x" * 600


class ScriptedTransport:
    """Maps URL substrings to responses; records every request."""

    def __init__(self, routes):
        self.routes = routes
        self.calls: list[str] = []

    def request(self, method, url, params=None, headers=None, stream=False):
        self.calls.append(url)
        for needle, response in self.routes:
            if needle in url:
                if isinstance(response, Exception):
                    raise response
                if callable(response):
                    return response()
                return response
        return FakeResponse(404, b"not found")


# ---------------------------------------------------------------- validate

def test_validate_pdf_valid():
    assert validate_pdf(b"%PDF-1.7 rest", 1000) == PdfVerdict.VALID


def test_validate_pdf_html_denial():
    body = b"<html><body>Access Denied</body></html>"
    assert validate_pdf(body, len(body)) == PdfVerdict.HTML_DENIAL


def test_validate_pdf_not_pdf():
    assert validate_pdf(b"plain text", 10) == PdfVerdict.NOT_PDF


def test_validate_pdf_too_large():
    assert validate_pdf(b"%PDF-", 501 * 1024 * 1024) == PdfVerdict.TOO_LARGE


def test_validate_pdf_html_without_denial_phrase_is_not_pdf():
    body = b"<html><body>hello world</body></html>"
    assert validate_pdf(body, len(body)) == PdfVerdict.NOT_PDF


# ---------------------------------------------------------------- filenames

def test_filename_priority(make_record):
    assert pdf_filename(make_record(pmid="123", pmcid="PMC9", doi="10.1/x")) == "123.pdf"
    assert pdf_filename(make_record(pmid=None, pmcid="pmc9", doi="10.1/x")) == "PMC9.pdf"
    name = pdf_filename(make_record(pmid=None, pmcid=None, doi="10.1/x"))
    assert name.startswith("doi-") and len(name) == len("doi-") + 16 + 4
    name = pdf_filename(make_record(pmid=None, pmcid=None, doi=None,
                                    title="T", year=2020))
    assert name.startswith("title-")


# ---------------------------------------------------------------- cascade

def manager(tmp_path, transport, **kw):
    clock = FakeClock()
    kw.setdefault("unpaywall_email", "team@example.org")
    kw.setdefault("now_iso", lambda: "2026-01-01T00:00:00+00:00")
    return DownloadManager(tmp_path / "pdfs", transport, clock=clock,
                           sleep=clock.sleep, **kw)


def test_first_source_success_stops_cascade(tmp_path, make_record):
    transport = ScriptedTransport([("direct.example/a.pdf", FakeResponse(200, PDF))])
    rec = make_record(openalex_pdf_url="https://direct.example/a.pdf",
                      pmcid="PMC1", doi="10.1/x", pmid="55")
    outcome, updated = manager(tmp_path, transport).download_pdf(rec)
    assert outcome.status == DownloadOutcome.SUCCESS
    assert [s for s, _ in outcome.source_tried] == ["openalex_direct"]
    assert updated.downloaded and updated.download_source == "openalex_direct"
    assert updated.downloaded_path.endswith("55.pdf")
    assert len(transport.calls) == 1


def test_cascade_order_and_exhaustion(tmp_path, make_record):
    html = FakeResponse(200, b"<html>Access Denied</html>",
                        headers={"content-type": "text/html"})
    transport = ScriptedTransport([
        ("direct.example", lambda: html),
        ("europepmc", lambda: html),
        ("unpaywall", FakeResponse(200, json.dumps(
            {"best_oa_location": {"url_for_pdf": "https://up.example/x.pdf"}}
        ).encode())),
        ("up.example/x.pdf", lambda: html),
        ("api.openalex.org/works", FakeResponse(200, json.dumps(
            {"best_oa_location": {"pdf_url": "https://oa.example/y.pdf"}}
        ).encode())),
        ("oa.example/y.pdf", lambda: html),
    ])
    rec = make_record(openalex_pdf_url="https://direct.example/a.pdf",
                      pmcid="PMC1", doi="10.1/x")
    outcome, updated = manager(tmp_path, transport).download_pdf(rec)
    assert outcome.status == DownloadOutcome.ALL_SOURCES_FAILED
    assert [s for s, _ in outcome.source_tried] == list(
        ("openalex_direct", "europepmc", "unpaywall", "openalex_doi"))
    assert "HtmlDenialPage" in updated.download_error
    assert not updated.downloaded


def test_fallthrough_to_second_source(tmp_path, make_record):
    transport = ScriptedTransport([
        ("direct.example", TransportError("boom")),
        ("europepmc", FakeResponse(200, PDF)),
    ])
    rec = make_record(openalex_pdf_url="https://direct.example/a.pdf",
                      pmcid="PMC42", doi=None, pmid=None)
    outcome, updated = manager(tmp_path, transport).download_pdf(rec)
    assert outcome.status == DownloadOutcome.SUCCESS
    assert updated.download_source == "europepmc"
    assert updated.downloaded_path.endswith("PMC42.pdf")


def test_sources_without_identifiers_skipped(tmp_path, make_record):
    transport = ScriptedTransport([])
    rec = make_record(openalex_pdf_url=None, pmcid=None, doi=None,
                      pmid="77", title="T", year=2020)
    outcome, _ = manager(tmp_path, transport).download_pdf(rec)
    assert outcome.status == DownloadOutcome.ALL_SOURCES_FAILED
    assert all("skipped" in msg for _, msg in outcome.source_tried)
    assert transport.calls == []


def test_unpaywall_url_cached(tmp_path, make_record):
    payload = FakeResponse(200, json.dumps(
        {"best_oa_location": {"url_for_pdf": "https://up.example/x.pdf"}}).encode())
    transport = ScriptedTransport([
        ("unpaywall", payload),
        ("up.example/x.pdf", lambda: FakeResponse(200, PDF)),
    ])
    cache = DiskCache(tmp_path / "cache")
    mgr = manager(tmp_path, transport, cache=cache)
    rec = make_record(openalex_pdf_url=None, pmcid=None, doi="10.2/z", pmid=None)
    outcome, _ = mgr.download_pdf(rec)
    assert outcome.status == DownloadOutcome.SUCCESS
    api_calls = [c for c in transport.calls if "unpaywall" in c]
    assert len(api_calls) == 1

    rec2 = make_record(openalex_pdf_url=None, pmcid=None, doi="10.2/z", pmid=None)
    mgr.download_pdf(rec2)
    api_calls = [c for c in transport.calls if "unpaywall" in c]
    assert len(api_calls) == 1  # second lookup served from cache


def test_too_large_stream_rejected(tmp_path, make_record):
    big = FakeResponse(200, PDF, headers={"content-length": str(600 * 1024 * 1024)})
    transport = ScriptedTransport([("direct.example", big)])
    rec = make_record(openalex_pdf_url="https://direct.example/a.pdf",
                      pmcid=None, doi=None)
    outcome, _ = manager(tmp_path, transport).download_pdf(rec)
    assert outcome.status == DownloadOutcome.ALL_SOURCES_FAILED
    assert "TooLarge" in outcome.source_tried[0][1]


# ---------------------------------------------------------------- checkpoint

def test_checkpoint_written_every_50(tmp_path, make_record):
    transport = ScriptedTransport([("direct.example", lambda: FakeResponse(200, PDF))])
    mgr = manager(tmp_path, transport)
    ckpt = Checkpoint(tmp_path / "ckpt.json")
    records = [make_record(openalex_pdf_url="https://direct.example/a.pdf",
                           pmid=str(1000 + i), doi=None, pmcid=None)
               for i in range(50)]
    for rec in records[:49]:
        outcome, updated = mgr.download_pdf(rec)
        ckpt.record(rec.article_id, outcome.status, updated.downloaded_path)
    assert not (tmp_path / "ckpt.json").exists()
    outcome, updated = mgr.download_pdf(records[49])
    ckpt.record(records[49].article_id, outcome.status, updated.downloaded_path)
    assert (tmp_path / "ckpt.json").exists()
    data = json.loads((tmp_path / "ckpt.json").read_text())
    assert len(data["processed"]) == 50


def test_resume_skips_completed(tmp_path, make_record):
    transport = ScriptedTransport([("direct.example", lambda: FakeResponse(200, PDF))])
    mgr = manager(tmp_path, transport)
    records = [make_record(openalex_pdf_url="https://direct.example/a.pdf",
                           pmid=str(2000 + i), doi=None, pmcid=None)
               for i in range(3)]
    ckpt = Checkpoint(tmp_path / "ckpt.json")
    mgr.run(records, workers=2, checkpoint=ckpt)
    first_calls = len(transport.calls)
    assert first_calls == 3

    resumed = Checkpoint(tmp_path / "ckpt.json")
    out = mgr.run(records, workers=2, checkpoint=resumed)
    assert len(transport.calls) == first_calls  # no re-downloads
    assert all(r.downloaded for r in out)


# ---------------------------------------------------------------- rate limit

def test_rate_limiter_sliding_window_never_exceeded():
    clock = FakeClock()
    limiter = SlidingWindowRateLimiter(30, clock=clock, sleep=clock.sleep)
    stamps = [limiter.acquire() for _ in range(100)]
    for i, t in enumerate(stamps):
        window = [s for s in stamps if t - 1.0 < s <= t]
        assert len(window) <= 30, f"window ending at stamp {i} holds {len(window)}"


@pytest.mark.parametrize("rate", [20, 50])
def test_rate_limiter_each_source_rate(rate):
    clock = FakeClock()
    limiter = SlidingWindowRateLimiter(rate, clock=clock, sleep=clock.sleep)
    stamps = [limiter.acquire() for _ in range(rate * 3)]
    for t in stamps:
        assert len([s for s in stamps if t - 1.0 < s <= t]) <= rate


def test_rate_limiter_allows_full_rate_in_window():
    clock = FakeClock()
    limiter = SlidingWindowRateLimiter(10, clock=clock, sleep=clock.sleep)
    stamps = [limiter.acquire() for _ in range(10)]
    assert stamps[-1] == stamps[0]  # ten fit instantly
    eleventh = limiter.acquire()
    assert eleventh >= stamps[0] + 1.0
