"""Review persistence: an embedded SQLite store with an append-only
audit log.

Items move Pending -> Verified | Revised | Rejected. Verify requires no
edits; Modify validates its edits through the extraction schema gate
before flagging the item Revised; Reject dismisses false positives.
Every transition appends to the audit log, and replaying that log
reconstructs item statuses exactly. Export emits only Verified and
Revised items, with edits applied and re-validated.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..extraction import catalog
from ..extraction.records import (
    ParameterExtraction,
    ProvenanceTrace,
    ProvenanceEntry,
    record_data_type,
    record_from_json,
    record_to_json,
    write_records_csv,
)
from ..extraction.schema import validate_payload

VALID_ACTIONS = ("Verify", "Modify", "Reject")
STATUSES = ("Pending", "Verified", "Revised", "Rejected")


class ReviewError(ValueError):
    pass


class ValidationFailed(ReviewError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass
class ReviewItem:
    item_id: str
    article_id: str
    pathogen: str
    data_type: str
    extraction: dict
    provenance: dict | None = None
    status: str = "Pending"
    edits: dict = field(default_factory=dict)
    reviewer: str = ""
    reviewed_at: str | None = None
    provenance_stale: bool = False


def _record_payload(record) -> dict:
    """Record back into tool-call payload form for edit validation."""
    doc = record_to_json(record)
    for bookkeeping in ("id", "article_id", "pathogen", "data_type",
                        "population", "aggregation", "parameter_class",
                        "parameter_type", "paired_uncertainty"):
        doc.pop(bookkeeping, None)
    if isinstance(record, ParameterExtraction):
        doc.update(doc.pop("fields", {}))
        if record.paired_uncertainty:
            doc["paired_uncertainty_lower"] = record.paired_uncertainty[0]
            doc["paired_uncertainty_upper"] = record.paired_uncertainty[1]
    return {k: v for k, v in doc.items() if v is not None}


def _schema_for_item(item: ReviewItem):
    if item.data_type == "model":
        return catalog.MODEL_SCHEMA
    if item.data_type == "outbreak":
        return catalog.OUTBREAK_SCHEMA
    parameter_class = item.extraction.get("parameter_class")
    return catalog.PARAMETER_VALUE_SCHEMAS[parameter_class]


def validate_edits(item: ReviewItem, edits: dict) -> list[str]:
    """Validate reviewer edits by applying them over the record payload
    and running the full schema gate."""
    record = record_from_json(item.extraction)
    schema = _schema_for_item(item)
    population_fields = {f.name for f in catalog.POPULATION_SCHEMA}
    main_edits = {k: v for k, v in edits.items() if k not in population_fields}
    population_edits = {k: v for k, v in edits.items()
                       if k in population_fields}
    errors: list[str] = []
    if main_edits:
        payload = _record_payload(record)
        payload.update(main_edits)
        errors.extend(validate_payload(payload, schema))
    if population_edits:
        if item.data_type != "parameter":
            errors.append("population fields only apply to parameter "
                          "extractions")
        else:
            errors.extend(validate_payload(population_edits,
                                           catalog.POPULATION_SCHEMA))
    return errors


def apply_edits(item: ReviewItem) -> dict:
    """Extraction JSON with the item's edits folded in."""
    doc = dict(item.extraction)
    population_fields = {f.name for f in catalog.POPULATION_SCHEMA}
    for key, value in item.edits.items():
        if item.data_type == "parameter":
            if key in population_fields:
                population = dict(doc.get("population") or {})
                population[key] = value
                doc["population"] = population
                continue
            if key == "paired_uncertainty_lower":
                pair = list(doc.get("paired_uncertainty") or [None, None])
                pair[0] = value
                doc["paired_uncertainty"] = pair
                continue
            if key == "paired_uncertainty_upper":
                pair = list(doc.get("paired_uncertainty") or [None, None])
                pair[1] = value
                doc["paired_uncertainty"] = pair
                continue
            if key not in doc:
                fields = dict(doc.get("fields") or {})
                fields[key] = value
                doc["fields"] = fields
                continue
        doc[key] = value
    return doc


class ReviewStore:
    def __init__(self, path: str | Path = ":memory:",
                 now_iso=None):
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        self._lock = threading.Lock()
        self._now_iso = now_iso or (lambda: time.strftime(
            "%Y-%m-%dT%H:%M:%S+00:00", time.gmtime()))
        self._init_tables()

    def _init_tables(self) -> None:
        with self._lock, self._conn:
            self._conn.executescript("""
                CREATE TABLE IF NOT EXISTS items (
                    item_id TEXT PRIMARY KEY,
                    article_id TEXT NOT NULL,
                    pathogen TEXT NOT NULL,
                    data_type TEXT NOT NULL,
                    extraction TEXT NOT NULL,
                    provenance TEXT,
                    status TEXT NOT NULL DEFAULT 'Pending',
                    edits TEXT NOT NULL DEFAULT '{}',
                    reviewer TEXT NOT NULL DEFAULT '',
                    reviewed_at TEXT,
                    provenance_stale INTEGER NOT NULL DEFAULT 0
                );
                CREATE TABLE IF NOT EXISTS audit (
                    seq INTEGER PRIMARY KEY AUTOINCREMENT,
                    item_id TEXT NOT NULL,
                    action TEXT NOT NULL,
                    reviewer TEXT NOT NULL DEFAULT '',
                    edits TEXT NOT NULL DEFAULT '{}',
                    at TEXT NOT NULL
                );
                CREATE TABLE IF NOT EXISTS documents (
                    article_id TEXT PRIMARY KEY,
                    markdown TEXT NOT NULL
                );
            """)

    # ------------------------------------------------------------- loading

    def put_document(self, article_id: str, markdown: str) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT OR REPLACE INTO documents VALUES (?, ?)",
                (article_id, markdown))

    def get_document(self, article_id: str) -> str | None:
        row = self._conn.execute(
            "SELECT markdown FROM documents WHERE article_id = ?",
            (article_id,)).fetchone()
        return row["markdown"] if row else None

    def ingest(self, records: list, traces: dict[str, ProvenanceTrace]
               | None = None) -> list[str]:
        """Create pending review items from extraction records."""
        traces = traces or {}
        item_ids = []
        with self._lock, self._conn:
            for record in records:
                trace = traces.get(record.id)
                trace_json = None
                if trace is not None:
                    trace_json = json.dumps({
                        "extraction_id": trace.extraction_id,
                        "entries": [vars(e) for e in trace.entries]})
                self._conn.execute(
                    "INSERT OR REPLACE INTO items (item_id, article_id, "
                    "pathogen, data_type, extraction, provenance) VALUES "
                    "(?, ?, ?, ?, ?, ?)",
                    (record.id, record.article_id, record.pathogen,
                     record_data_type(record),
                     json.dumps(record_to_json(record), ensure_ascii=False),
                     trace_json))
                item_ids.append(record.id)
        return item_ids

    # ------------------------------------------------------------- reading

    @staticmethod
    def _to_item(row: sqlite3.Row) -> ReviewItem:
        return ReviewItem(
            item_id=row["item_id"], article_id=row["article_id"],
            pathogen=row["pathogen"], data_type=row["data_type"],
            extraction=json.loads(row["extraction"]),
            provenance=json.loads(row["provenance"]) if row["provenance"]
            else None,
            status=row["status"], edits=json.loads(row["edits"]),
            reviewer=row["reviewer"], reviewed_at=row["reviewed_at"],
            provenance_stale=bool(row["provenance_stale"]))

    def get_item(self, item_id: str) -> ReviewItem | None:
        row = self._conn.execute("SELECT * FROM items WHERE item_id = ?",
                                 (item_id,)).fetchone()
        return self._to_item(row) if row else None

    def list_items(self, *, pathogen: str | None = None,
                   status: str | None = None,
                   data_type: str | None = None,
                   after: str | None = None,
                   limit: int = 50) -> list[ReviewItem]:
        """Keyset pagination by item_id: stable under concurrent inserts."""
        query = "SELECT * FROM items WHERE 1=1"
        params: list = []
        for column, value in (("pathogen", pathogen), ("status", status),
                              ("data_type", data_type)):
            if value is not None:
                query += f" AND {column} = ?"
                params.append(value)
        if after is not None:
            query += " AND item_id > ?"
            params.append(after)
        query += " ORDER BY item_id LIMIT ?"
        params.append(limit)
        return [self._to_item(r) for r in self._conn.execute(query, params)]

    def article_counts(self, pathogen: str | None = None) -> dict[str, dict]:
        query = ("SELECT article_id, data_type, status, COUNT(*) AS n FROM "
                 "items")
        params: list = []
        if pathogen is not None:
            query += " WHERE pathogen = ?"
            params.append(pathogen)
        query += " GROUP BY article_id, data_type, status"
        counts: dict[str, dict] = {}
        for row in self._conn.execute(query, params):
            entry = counts.setdefault(
                row["article_id"],
                {"parameter": 0, "model": 0, "outbreak": 0, "pending": 0})
            entry[row["data_type"]] += row["n"]
            if row["status"] == "Pending":
                entry["pending"] += row["n"]
        return counts

    # ------------------------------------------------------------ reviewing

    def submit_review(self, item_id: str, action: str,
                      edits: dict | None = None,
                      reviewer: str = "") -> ReviewItem:
        """Apply one verify/modify/reject action.

        Concurrent conflicting submissions resolve last-write-wins; every
        submission lands in the audit log regardless.
        """
        if action not in VALID_ACTIONS:
            raise ReviewError(f"unknown action {action!r}")
        item = self.get_item(item_id)
        if item is None:
            raise KeyError(item_id)
        edits = edits or {}
        if action == "Verify":
            if edits:
                raise ReviewError("Verify must not carry edits; use Modify")
            status, stale = "Verified", item.provenance_stale
            edits = {}
        elif action == "Modify":
            if not edits:
                raise ReviewError("Modify requires a non-empty edits map")
            errors = validate_edits(item, edits)
            if errors:
                raise ValidationFailed(errors)
            status, stale = "Revised", True
        else:
            status, stale = "Rejected", item.provenance_stale
            edits = {}
        at = self._now_iso()
        with self._lock, self._conn:
            self._conn.execute(
                "UPDATE items SET status = ?, edits = ?, reviewer = ?, "
                "reviewed_at = ?, provenance_stale = ? WHERE item_id = ?",
                (status, json.dumps(edits, ensure_ascii=False), reviewer, at,
                 int(stale), item_id))
            self._conn.execute(
                "INSERT INTO audit (item_id, action, reviewer, edits, at) "
                "VALUES (?, ?, ?, ?, ?)",
                (item_id, action, reviewer,
                 json.dumps(edits, ensure_ascii=False), at))
        return self.get_item(item_id)

    def audit_log(self) -> list[dict]:
        return [dict(row) for row in
                self._conn.execute("SELECT * FROM audit ORDER BY seq")]

    def replay_statuses(self) -> dict[str, str]:
        """Reconstruct item statuses purely from the audit log."""
        statuses: dict[str, str] = {
            row["item_id"]: "Pending"
            for row in self._conn.execute("SELECT item_id FROM items")}
        transition = {"Verify": "Verified", "Modify": "Revised",
                      "Reject": "Rejected"}
        for entry in self.audit_log():
            statuses[entry["item_id"]] = transition[entry["action"]]
        return statuses

    # -------------------------------------------------------------- export

    def export_validated(self, pathogen: str, out_dir: str | Path
                         ) -> dict[str, Path]:
        """Write the validated dataset (Verified + Revised with edits
        applied) in the extraction JSONL/CSV formats."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        exported: dict[str, list] = {"parameter": [], "model": [],
                                     "outbreak": []}
        for item in self.list_items(pathogen=pathogen, limit=1_000_000):
            if item.status not in ("Verified", "Revised"):
                continue
            doc = apply_edits(item)
            record = record_from_json(doc)
            payload = _record_payload(record)
            errors = validate_payload(payload,
                                      _schema_for_item(item))
            if errors:
                raise ValidationFailed(
                    [f"item {item.item_id}: {e}" for e in errors])
            exported[item.data_type].append(record)

        paths: dict[str, Path] = {}
        for data_type, records in exported.items():
            jsonl_path = out_dir / f"{pathogen}_{data_type}s_validated.jsonl"
            with open(jsonl_path, "w", encoding="utf-8") as f:
                for record in records:
                    f.write(json.dumps(record_to_json(record),
                                       ensure_ascii=False) + "\n")
            csv_path = out_dir / f"{pathogen}_{data_type}s_validated.csv"
            write_records_csv(records, csv_path)
            paths[data_type] = jsonl_path
        return paths

    def provenance_trace(self, item: ReviewItem) -> ProvenanceTrace | None:
        if item.provenance is None:
            return None
        return ProvenanceTrace(
            extraction_id=item.provenance["extraction_id"],
            entries=[ProvenanceEntry(**e)
                     for e in item.provenance.get("entries", [])])
