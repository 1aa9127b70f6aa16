"""Metadata harvesting from OpenAlex, PubMed E-utilities, and Europe PMC.

Each client pages through its database's results for one query and
yields ArticleRecords populated with every metadata field the source
provides. Malformed per-record payloads are skipped and logged; HTTP
failures surface after bounded retries. Base URLs are constructor
arguments so tests can point clients at scripted transports.
"""

from __future__ import annotations

import logging
import time
import xml.etree.ElementTree as ET
from typing import Callable

from .. import ids
from .records import ArticleRecord, Source
from .transport import request_with_retries

log = logging.getLogger(__name__)


def _utc_now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S+00:00", time.gmtime())


class HarvestClient:
    def __init__(self, transport, *, pathogen: str, query: str,
                 now_iso: Callable[[], str] | None = None,
                 id_gen: ids.IdGenerator | None = None,
                 sleep=time.sleep):
        self.transport = transport
        self.pathogen = pathogen
        self.query = query
        self._now_iso = now_iso or _utc_now
        self._ids = id_gen or ids.IdGenerator()
        self._sleep = sleep

    def _record(self, **fields) -> ArticleRecord | None:
        base = dict(article_id=self._ids.new_id(), pathogen=self.pathogen,
                    query=self.query, harvested_at=self._now_iso())
        base.update(fields)
        try:
            return ArticleRecord(**base)
        except (TypeError, ValueError) as exc:
            log.warning("skipping malformed %s payload: %s", fields.get("source"), exc)
            return None


class OpenAlexClient(HarvestClient):
    def __init__(self, transport, *, base_url: str = "https://api.openalex.org",
                 per_page: int = 200, **kwargs):
        super().__init__(transport, **kwargs)
        self.base_url = base_url.rstrip("/")
        self.per_page = per_page

    def harvest(self) -> list[ArticleRecord]:
        records: list[ArticleRecord] = []
        cursor = "*"
        while cursor:
            resp = request_with_retries(
                self.transport, "GET", f"{self.base_url}/works",
                params={"search": self.query, "per-page": self.per_page,
                        "cursor": cursor},
                sleep=self._sleep)
            payload = resp.json()
            for work in payload.get("results", []):
                rec = self._parse_work(work)
                if rec is not None:
                    records.append(rec)
            cursor = (payload.get("meta") or {}).get("next_cursor")
        return records

    def _parse_work(self, work: dict) -> ArticleRecord | None:
        try:
            title = work.get("display_name") or work.get("title") or ""
            doi = work.get("doi")
            oa_id = work.get("id")
            pdf_url = None
            for loc in (work.get("best_oa_location"), work.get("primary_location")):
                if loc and loc.get("pdf_url"):
                    pdf_url = loc["pdf_url"]
                    break
            journal = None
            primary = work.get("primary_location") or {}
            if primary.get("source"):
                journal = primary["source"].get("display_name")
            authors = "; ".join(
                (a.get("author") or {}).get("display_name", "")
                for a in work.get("authorships", []) if a.get("author"))
            abstract = _invert_abstract(work.get("abstract_inverted_index"))
            pmid = (work.get("ids") or {}).get("pmid")
            if pmid:
                pmid = pmid.rsplit("/", 1)[-1]
            pmcid = (work.get("ids") or {}).get("pmcid")
            if pmcid:
                pmcid = pmcid.rsplit("/", 1)[-1]
            return self._record(
                source=Source.OPENALEX, title=title, doi=doi, pmid=pmid,
                pmcid=pmcid, openalex_id=oa_id, openalex_pdf_url=pdf_url,
                journal=journal, year=work.get("publication_year"),
                abstract=abstract, authors=authors,
                url=doi or (work.get("ids") or {}).get("openalex"))
        except (KeyError, AttributeError, TypeError) as exc:
            log.warning("skipping malformed OpenAlex work: %s", exc)
            return None


def _invert_abstract(index: dict | None) -> str | None:
    if not index:
        return None
    positions: list[tuple[int, str]] = []
    for word, idxs in index.items():
        for i in idxs:
            positions.append((i, word))
    return " ".join(w for _, w in sorted(positions)) or None


class PubMedClient(HarvestClient):
    """E-utilities esearch + efetch; parses PubmedArticle XML."""

    def __init__(self, transport, *,
                 base_url: str = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils",
                 batch_size: int = 200, api_key: str | None = None, **kwargs):
        super().__init__(transport, **kwargs)
        self.base_url = base_url.rstrip("/")
        self.batch_size = batch_size
        self.api_key = api_key

    def harvest(self) -> list[ArticleRecord]:
        params = {"db": "pubmed", "term": self.query, "retmax": 100000,
                  "retmode": "json"}
        if self.api_key:
            params["api_key"] = self.api_key
        resp = request_with_retries(self.transport, "GET",
                                    f"{self.base_url}/esearch.fcgi",
                                    params=params, sleep=self._sleep)
        pmids = (resp.json().get("esearchresult") or {}).get("idlist", [])
        records: list[ArticleRecord] = []
        for start in range(0, len(pmids), self.batch_size):
            batch = pmids[start:start + self.batch_size]
            fetch_params = {"db": "pubmed", "id": ",".join(batch),
                            "retmode": "xml"}
            if self.api_key:
                fetch_params["api_key"] = self.api_key
            resp = request_with_retries(self.transport, "GET",
                                        f"{self.base_url}/efetch.fcgi",
                                        params=fetch_params, sleep=self._sleep)
            records.extend(self._parse_xml(resp.content))
        return records

    def _parse_xml(self, xml_bytes: bytes) -> list[ArticleRecord]:
        try:
            root = ET.fromstring(xml_bytes)
        except ET.ParseError as exc:
            log.warning("unparseable efetch payload: %s", exc)
            return []
        out = []
        for art in root.iter("PubmedArticle"):
            rec = self._parse_article(art)
            if rec is not None:
                out.append(rec)
        return out

    def _parse_article(self, art: ET.Element) -> ArticleRecord | None:
        pmid = art.findtext(".//PMID")
        title = "".join((art.find(".//ArticleTitle") is not None and
                         art.find(".//ArticleTitle").itertext()) or []) or ""
        abstract_parts = [
            "".join(t.itertext()) for t in art.findall(".//Abstract/AbstractText")
        ]
        abstract = " ".join(p for p in abstract_parts if p) or None
        journal = art.findtext(".//Journal/Title")
        year_text = (art.findtext(".//JournalIssue/PubDate/Year")
                     or art.findtext(".//ArticleDate/Year"))
        year = int(year_text) if year_text and year_text.isdigit() else None
        doi = None
        pmcid = None
        for aid in art.findall(".//ArticleIdList/ArticleId"):
            if aid.get("IdType") == "doi":
                doi = aid.text
            elif aid.get("IdType") == "pmc":
                pmcid = aid.text
        authors = "; ".join(
            " ".join(filter(None, (a.findtext("ForeName"), a.findtext("LastName"))))
            for a in art.findall(".//AuthorList/Author"))
        return self._record(source=Source.PUBMED, title=title, pmid=pmid,
                            pmcid=pmcid, doi=doi, journal=journal, year=year,
                            abstract=abstract, authors=authors,
                            url=f"https://pubmed.ncbi.nlm.nih.gov/{pmid}/"
                            if pmid else None)


class EuropePMCClient(HarvestClient):
    def __init__(self, transport, *,
                 base_url: str = "https://www.ebi.ac.uk/europepmc/webservices/rest",
                 page_size: int = 1000, **kwargs):
        super().__init__(transport, **kwargs)
        self.base_url = base_url.rstrip("/")
        self.page_size = page_size

    def harvest(self) -> list[ArticleRecord]:
        records: list[ArticleRecord] = []
        cursor = "*"
        while cursor:
            resp = request_with_retries(
                self.transport, "GET", f"{self.base_url}/search",
                params={"query": self.query, "format": "json",
                        "pageSize": self.page_size, "cursorMark": cursor},
                sleep=self._sleep)
            payload = resp.json()
            for hit in (payload.get("resultList") or {}).get("result", []):
                rec = self._parse_hit(hit)
                if rec is not None:
                    records.append(rec)
            next_cursor = payload.get("nextCursorMark")
            cursor = next_cursor if next_cursor and next_cursor != cursor else None
        return records

    def _parse_hit(self, hit: dict) -> ArticleRecord | None:
        try:
            year = hit.get("pubYear")
            return self._record(
                source=Source.EUROPEPMC, title=hit.get("title") or "",
                pmid=hit.get("pmid"), pmcid=hit.get("pmcid"),
                doi=hit.get("doi"), journal=hit.get("journalTitle"),
                year=int(year) if year else None,
                abstract=hit.get("abstractText"),
                authors=hit.get("authorString", "").replace(", ", "; "),
                url=hit.get("doi") and f"https://doi.org/{hit['doi']}")
        except (TypeError, ValueError) as exc:
            log.warning("skipping malformed Europe PMC hit: %s", exc)
            return None


def harvest(query: str, database: str, transport, *, pathogen: str,
            **kwargs) -> list[ArticleRecord]:
    """Harvest one query against one database."""
    clients = {"OpenAlex": OpenAlexClient, "PubMed": PubMedClient,
               "EuropePMC": EuropePMCClient}
    if database not in clients:
        raise ValueError(f"unknown database {database!r}")
    client = clients[database](transport, pathogen=pathogen, query=query, **kwargs)
    return client.harvest()
