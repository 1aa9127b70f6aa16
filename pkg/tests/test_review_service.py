from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient
from hypothesis import given, settings, strategies as st

from evisynth.extraction.records import (
    ModelExtraction,
    OutbreakExtraction,
    ProvenanceEntry,
    ProvenanceTrace,
)
from evisynth.review import ReviewStore, create_app
from evisynth.review.highlights import locate_spans
from evisynth.review.store import ValidationFailed

DOC = ("# Outbreak report\n\nThe outbreak in Lagos produced 120 confirmed "
       "cases and 17 deaths between March and July 2018.")


def make_store(**kw) -> ReviewStore:
    store = ReviewStore(now_iso=lambda: "2026-01-01T00:00:00+00:00", **kw)
    records = [
        OutbreakExtraction(id="OB1", article_id="A1", pathogen="lassa",
                           outbreak_country="Nigeria",
                           outbreak_start_year=2018, cases_confirmed=120,
                           deaths=17),
        OutbreakExtraction(id="OB2", article_id="A1", pathogen="lassa",
                           outbreak_country="Guinea"),
        ModelExtraction(id="MD1", article_id="A2", pathogen="lassa",
                        model_type="Compartmental", compartmental_type="SEIR",
                        code_available=True),
        OutbreakExtraction(id="OB3", article_id="A3", pathogen="zika",
                           outbreak_country="Brazil"),
    ]
    traces = {"OB1": ProvenanceTrace("OB1", [
        ProvenanceEntry("cases_confirmed", "120 confirmed cases", True),
        ProvenanceEntry("deaths", "not actually in the document", False),
    ])}
    store.ingest(records, traces)
    store.put_document("A1", DOC)
    return store


def client(store) -> TestClient:
    return TestClient(create_app(store, token=None))


# ----------------------------------------------------------------- listing

def test_list_filters_by_status():
    store = make_store()
    store.submit_review("OB2", "Verify", reviewer="rev")
    api = client(store)
    pending = api.get("/v1/items", params={"status": "Pending"}).json()
    assert {i["item_id"] for i in pending["items"]} == {"MD1", "OB1", "OB3"}
    verified = api.get("/v1/items", params={"status": "Verified"}).json()
    assert [i["item_id"] for i in verified["items"]] == ["OB2"]


def test_list_empty_store():
    api = client(ReviewStore())
    out = api.get("/v1/items").json()
    assert out == {"items": [], "next_after": None}


def test_summaries_carry_article_counts():
    api = client(make_store())
    out = api.get("/v1/items", params={"pathogen": "lassa"}).json()
    by_id = {i["item_id"]: i for i in out["items"]}
    assert by_id["OB1"]["article_counts"]["outbreak"] == 2
    assert by_id["MD1"]["article_counts"]["model"] == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.lists(st.text(alphabet="xyz", min_size=1,
                                           max_size=3), max_size=4))
def test_keyset_pagination_stable_under_inserts(page_size, insert_suffixes):
    store = make_store()
    api = client(store)
    seen: list[str] = []
    after = None
    inserted = iter(insert_suffixes)
    while True:
        params = {"limit": page_size}
        if after:
            params["after"] = after
        page = api.get("/v1/items", params=params).json()
        if not page["items"]:
            break
        seen.extend(i["item_id"] for i in page["items"])
        after = page["items"][-1]["item_id"]
        # adversarial concurrent insert between pages
        suffix = next(inserted, None)
        if suffix is not None:
            store.ingest([OutbreakExtraction(
                id=f"zz_{suffix}_{len(seen)}", article_id="AX",
                pathogen="lassa", outbreak_country="Chad")])
        if page["next_after"] is None and len(page["items"]) < page_size:
            break
    assert len(seen) == len(set(seen))  # no duplicates despite inserts
    assert {"OB1", "OB2", "OB3", "MD1"} <= set(seen)


# ---------------------------------------------------------------- get_item

def test_get_item_highlights():
    api = client(make_store())
    out = api.get("/v1/items/OB1").json()
    assert out["document_markdown"] == DOC
    (span,) = out["highlights"]
    assert span["field"] == "cases_confirmed"
    assert DOC[span["start"]:span["end"]] == "120 confirmed cases"
    assert out["unlocated_fields"] == ["deaths"]


def test_get_item_unknown_404():
    api = client(make_store())
    assert api.get("/v1/items/nope").status_code == 404


# ----------------------------------------------------------------- reviews

def test_verify_flow():
    store = make_store()
    api = client(store)
    out = api.post("/v1/items/OB1/review",
                   json={"action": "Verify", "reviewer": "alice"})
    assert out.status_code == 200
    assert out.json()["item"]["status"] == "Verified"
    assert store.get_item("OB1").reviewed_at is not None


def test_verify_with_edits_rejected():
    api = client(make_store())
    out = api.post("/v1/items/OB1/review",
                   json={"action": "Verify", "edits": {"deaths": 20}})
    assert out.status_code == 400


def test_modify_valid_edit():
    store = make_store()
    api = client(store)
    out = api.post("/v1/items/OB1/review", json={
        "action": "Modify", "edits": {"deaths": 21}, "reviewer": "bob"})
    assert out.status_code == 200
    item = out.json()["item"]
    assert item["status"] == "Revised"
    assert item["edits"] == {"deaths": 21}
    assert item["provenance_stale"] is True


def test_modify_invalid_country_gets_field_errors():
    api = client(make_store())
    out = api.post("/v1/items/OB1/review", json={
        "action": "Modify", "edits": {"outbreak_country": "USA"}})
    assert out.status_code == 422
    (error,) = out.json()["errors"]
    assert "outbreak_country" in error
    assert "United States of America" in error


def test_reject_flow():
    store = make_store()
    api = client(store)
    out = api.post("/v1/items/OB2/review", json={"action": "Reject"})
    assert out.json()["item"]["status"] == "Rejected"


def test_unknown_action_rejected():
    api = client(make_store())
    assert api.post("/v1/items/OB1/review",
                    json={"action": "Shrug"}).status_code == 400


def test_last_write_wins_both_audited():
    store = make_store()
    store.submit_review("OB1", "Verify", reviewer="alice")
    store.submit_review("OB1", "Reject", reviewer="bob")
    assert store.get_item("OB1").status == "Rejected"
    actions = [(e["action"], e["reviewer"]) for e in store.audit_log()]
    assert actions == [("Verify", "alice"), ("Reject", "bob")]


def test_audit_replay_reconstructs_statuses():
    store = make_store()
    store.submit_review("OB1", "Verify")
    store.submit_review("OB2", "Modify", {"deaths": 3.0})
    store.submit_review("OB3", "Reject")
    store.submit_review("OB3", "Verify")
    replayed = store.replay_statuses()
    actual = {i.item_id: i.status
              for i in store.list_items(limit=100)}
    assert replayed == actual


# ------------------------------------------------------------------ export

def test_export_only_verified_and_revised(tmp_path):
    store = make_store()
    store.submit_review("OB1", "Verify")
    store.submit_review("OB2", "Reject")
    api = client(store)
    out = api.get("/v1/export/lassa").json()
    assert len(out["records"]) == 1
    assert out["records"][0]["id"] == "OB1"

    paths = store.export_validated("lassa", tmp_path)
    lines = paths["outbreak"].read_text().strip().splitlines()
    assert len(lines) == 1
    csv_text = (tmp_path / "lassa_outbreaks_validated.csv").read_text()
    assert "outbreak_country" in csv_text.splitlines()[0]


def test_export_applies_edits(tmp_path):
    store = make_store()
    store.submit_review("OB1", "Modify", {"deaths": 99.0})
    paths = store.export_validated("lassa", tmp_path)
    (line,) = paths["outbreak"].read_text().strip().splitlines()
    assert json.loads(line)["deaths"] == 99.0


def test_export_empty_store_headers_only(tmp_path):
    store = ReviewStore()
    store.export_validated("lassa", tmp_path)
    csv_text = (tmp_path / "lassa_outbreaks_validated.csv").read_text()
    assert csv_text.strip() != ""
    assert (tmp_path / "lassa_outbreaks_validated.jsonl").read_text() == ""


def test_exported_rows_pass_schema(tmp_path):
    store = make_store()
    store.submit_review("OB1", "Modify", {"deaths": 5.0})
    store.submit_review("MD1", "Verify")
    store.export_validated("lassa", tmp_path)  # raises on violation


# ------------------------------------------------------------------- schema

def test_schema_endpoint_drives_forms():
    api = client(make_store())
    out = api.get("/v1/schemas/outbreak").json()
    country = next(f for f in out["fields"]
                   if f["name"] == "outbreak_country")
    assert "Nigeria" in country["allowed_values"]
    assert country["required"] is True
    assert api.get("/v1/schemas/bogus").status_code == 404


# -------------------------------------------------------------------- auth

def test_token_enforced_when_configured():
    store = make_store()
    api = TestClient(create_app(store, token="sekrit"))
    assert api.get("/v1/items").status_code == 401
    ok = api.get("/v1/items", headers={"Authorization": "Bearer sekrit"})
    assert ok.status_code == 200


# -------------------------------------------------------------- highlights

def test_locate_spans_normalised_match():
    trace = ProvenanceTrace("X", [
        ProvenanceEntry("f", "120   confirmed\ncases", True)])
    spans, flagged = locate_spans(trace, DOC)
    assert flagged == []
    assert DOC[spans[0].start:spans[0].end] == "120 confirmed cases"


def test_locate_spans_missing_quote_flagged():
    trace = ProvenanceTrace("X", [ProvenanceEntry("f", "absent text", False)])
    spans, flagged = locate_spans(trace, DOC)
    assert spans == [] and flagged == ["f"]


def test_store_validation_failed_lists_errors():
    store = make_store()
    with pytest.raises(ValidationFailed) as err:
        store.submit_review("OB1", "Modify",
                            {"outbreak_location": "Lagos, Abuja"})
    assert any("no_commas" in e for e in err.value.errors)
