from __future__ import annotations

import json

from evisynth.biblio.harvest import EuropePMCClient, OpenAlexClient, PubMedClient
from evisynth.biblio.records import Source
from evisynth.biblio.resolve import IdConverter, resolve_identifiers
from evisynth.biblio.cache import DiskCache
from evisynth.biblio.ratelimit import FakeClock
from evisynth.biblio.transport import FakeResponse, TransportError


class RoutedTransport:
    def __init__(self, routes):
        self.routes = routes
        self.calls = []

    def request(self, method, url, params=None, headers=None, stream=False):
        self.calls.append((url, params))
        for needle, response in self.routes:
            if needle in url:
                if isinstance(response, Exception):
                    raise response
                return response() if callable(response) else response
        return FakeResponse(404, b"{}")


OPENALEX_PAGE = {
    "meta": {"next_cursor": None},
    "results": [
        {
            "id": "https://openalex.org/W1",
            "display_name": "Lassa fever dynamics",
            "doi": "https://doi.org/10.1/abc",
            "publication_year": 2019,
            "best_oa_location": {"pdf_url": "https://host/x.pdf"},
            "primary_location": {"source": {"display_name": "J Epi"}},
            "authorships": [{"author": {"display_name": "A. Person"}}],
            "abstract_inverted_index": {"Lassa": [0], "spreads": [1]},
            "ids": {"pmid": "https://pubmed.ncbi.nlm.nih.gov/77"},
        },
        {"id": None, "display_name": None},  # malformed, skipped
    ],
}


def test_openalex_harvest_populates_fields():
    transport = RoutedTransport([
        ("api.openalex.org/works",
         FakeResponse(200, json.dumps(OPENALEX_PAGE).encode())),
    ])
    client = OpenAlexClient(transport, pathogen="lassa", query="Q")
    records = client.harvest()
    assert len(records) == 1
    rec = records[0]
    assert rec.source == Source.OPENALEX
    assert rec.openalex_pdf_url == "https://host/x.pdf"
    assert rec.abstract == "Lassa spreads"
    assert rec.pmid == "77"
    assert rec.journal == "J Epi"
    assert rec.harvested_at


def test_openalex_empty_page():
    transport = RoutedTransport([
        ("api.openalex.org/works",
         FakeResponse(200, json.dumps({"meta": {"next_cursor": None},
                                       "results": []}).encode())),
    ])
    assert OpenAlexClient(transport, pathogen="x", query="Q").harvest() == []


PUBMED_XML = b"""<?xml version="1.0"?>
<PubmedArticleSet>
  <PubmedArticle>
    <MedlineCitation>
      <PMID>123</PMID>
      <Article>
        <Journal><Title>Journal A</Title>
          <JournalIssue><PubDate><Year>2015</Year></PubDate></JournalIssue>
        </Journal>
        <ArticleTitle>A study</ArticleTitle>
        <Abstract><AbstractText>Some text.</AbstractText></Abstract>
        <AuthorList><Author><LastName>Doe</LastName><ForeName>J</ForeName></Author></AuthorList>
      </Article>
    </MedlineCitation>
    <PubmedData>
      <ArticleIdList>
        <ArticleId IdType="doi">10.9/z</ArticleId>
        <ArticleId IdType="pmc">PMC55</ArticleId>
      </ArticleIdList>
    </PubmedData>
  </PubmedArticle>
  <PubmedArticle>
    <MedlineCitation>
      <PMID>124</PMID>
      <Article>
        <Journal><Title>Journal B</Title></Journal>
        <ArticleTitle>No abstract here</ArticleTitle>
      </Article>
    </MedlineCitation>
  </PubmedArticle>
</PubmedArticleSet>
"""


def test_pubmed_harvest():
    transport = RoutedTransport([
        ("esearch", FakeResponse(200, json.dumps(
            {"esearchresult": {"idlist": ["123", "124"]}}).encode())),
        ("efetch", FakeResponse(200, PUBMED_XML)),
    ])
    records = PubMedClient(transport, pathogen="lassa", query="Q").harvest()
    assert len(records) == 2
    assert records[0].pmid == "123"
    assert records[0].doi == "10.9/z"
    assert records[0].pmcid == "PMC55"
    assert records[0].authors == "J Doe"
    # abstract optional: second record carries none
    assert records[1].abstract is None


def test_europepmc_harvest():
    page = {"resultList": {"result": [
        {"pmid": "9", "pmcid": "PMC9", "doi": "10.2/q", "title": "T",
         "journalTitle": "J", "pubYear": "2018", "abstractText": "A",
         "authorString": "Doe J, Roe R"},
    ]}, "nextCursorMark": "*"}
    transport = RoutedTransport([
        ("europepmc", FakeResponse(200, json.dumps(page).encode())),
    ])
    records = EuropePMCClient(transport, pathogen="x", query="Q").harvest()
    assert len(records) == 1
    assert records[0].source == Source.EUROPEPMC
    assert records[0].authors == "Doe J; Roe R"
    assert records[0].year == 2018


def converter(transport, tmp_path=None):
    clock = FakeClock()
    cache = DiskCache(tmp_path / "c") if tmp_path else None
    return IdConverter(transport, cache=cache, clock=clock, sleep=clock.sleep)


def test_resolver_fills_missing_ids(make_record, tmp_path):
    transport = RoutedTransport([
        ("idconv", FakeResponse(200, json.dumps({"records": [
            {"pmid": "42", "pmcid": "PMC42", "doi": "10.5/d"}]}).encode())),
    ])
    rec = make_record(doi="10.5/d", pmid=None, pmcid=None)
    out = resolve_identifiers(rec, converter(transport, tmp_path))
    assert out.pmid == "42"
    assert out.pmcid == "PMC42"


def test_resolver_complete_record_untouched(make_record, tmp_path):
    transport = RoutedTransport([])
    rec = make_record(doi="10.5/d", pmid="1", pmcid="PMC1")
    out = resolve_identifiers(rec, converter(transport, tmp_path))
    assert out is rec
    assert transport.calls == []


def test_resolver_caches_lookups(make_record, tmp_path):
    transport = RoutedTransport([
        ("idconv", FakeResponse(200, json.dumps({"records": [
            {"pmid": "42", "pmcid": "PMC42", "doi": "10.5/d"}]}).encode())),
    ])
    conv = converter(transport, tmp_path)
    rec = make_record(doi="10.5/d", pmid=None, pmcid=None)
    resolve_identifiers(rec, conv)
    rec2 = make_record(doi="10.5/D", pmid=None, pmcid=None)
    resolve_identifiers(rec2, conv)
    assert len(transport.calls) == 1  # second lookup served from cache


def test_resolver_unreachable_returns_unchanged(make_record, tmp_path):
    transport = RoutedTransport([("idconv", TransportError("down"))])
    rec = make_record(doi="10.5/d", pmid=None, pmcid=None)
    out = resolve_identifiers(rec, converter(transport, tmp_path))
    assert out == rec
