"""Ground-truth ingestion, filtering, article alignment, and the
evaluation report.

Ground-truth rows arrive as plain dicts (from CSV); predictions are
this pipeline's extraction records. Rows whose enum-typed values
violate the schema are dropped before evaluation so the system is
never penalised against annotations it is not allowed to produce.
All metrics run over the aligned corpus: the intersection of articles
both sides marked include.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..extraction import catalog
from ..extraction.schema import FieldSchema, Kind
from .metrics import count_metric, extraction_metric, flagging_metric
from .similarity import DEFAULT_PROFILES, WeightProfile

_LIST_SPLIT = "; "


@dataclass
class GroundTruthSet:
    records: list[dict]
    source_label: str = ""
    invalid_dropped: int = 0


def _enum_fields(schema) -> list[FieldSchema]:
    return [f for f in schema if f.kind in (Kind.ENUM, Kind.LIST_OF_ENUM)]


def _schema_for(data_type: str):
    if data_type == "model":
        return catalog.MODEL_SCHEMA
    if data_type == "outbreak":
        return catalog.OUTBREAK_SCHEMA
    if data_type in catalog.PARAMETER_CLASSES:
        return catalog.PARAMETER_VALUE_SCHEMAS[data_type] \
            + catalog.POPULATION_SCHEMA
    raise ValueError(f"unknown data type {data_type!r}")


def filter_ground_truth(rows: list[dict], data_type: str,
                        source_label: str = "") -> GroundTruthSet:
    """Drop rows whose enum-typed values violate the schema."""
    schema = _schema_for(data_type)
    enum_fields = _enum_fields(schema)
    kept: list[dict] = []
    dropped = 0
    for row in rows:
        ok = True
        for f in enum_fields:
            value = row.get(f.name)
            if value in (None, "", []):
                continue
            values = value if isinstance(value, list) else [value]
            if any(v not in f.allowed_values for v in values):
                ok = False
                break
        if ok:
            kept.append(row)
        else:
            dropped += 1
    return GroundTruthSet(kept, source_label, dropped)


def read_ground_truth_csv(path: str | Path, data_type: str) -> list[dict]:
    """Load ground-truth rows from the public CSV column layout.

    Multi-value cells are semicolon-delimited; numeric cells are parsed
    when they look numeric; empty cells become None.
    """
    schema = {f.name: f for f in _schema_for(data_type)}
    rows: list[dict] = []
    with open(path, newline="", encoding="utf-8") as f:
        for raw in csv.DictReader(f):
            row: dict = {}
            for name, cell in raw.items():
                cell = (cell or "").strip()
                spec = schema.get(name)
                if cell == "":
                    row[name] = None
                elif spec is not None and spec.kind in (Kind.LIST_OF_ENUM,
                                                        Kind.LIST_OF_STRING):
                    row[name] = cell.split(_LIST_SPLIT)
                elif spec is not None and spec.kind == Kind.BOOLEAN:
                    row[name] = cell.lower() == "true"
                elif spec is not None and spec.kind == Kind.INTEGER:
                    row[name] = int(float(cell))
                elif spec is not None and spec.kind == Kind.FLOAT:
                    row[name] = float(cell)
                else:
                    row[name] = cell
            rows.append(row)
    return rows


@dataclass
class ArticleSide:
    """One side of the evaluation: include labels plus records grouped
    by (article_id, data_type), plus optional explicit presence flags."""

    included: set[str]
    records: dict[str, dict[str, list]] = field(default_factory=dict)
    flags: set[tuple[str, str]] | None = None

    @classmethod
    def build(cls, included, records_by_type: dict[str, list],
              flags=None) -> "ArticleSide":
        """records_by_type: data_type -> list of records/rows carrying
        an article_id attribute or key."""
        grouped: dict[str, dict[str, list]] = {}
        for data_type, records in records_by_type.items():
            for rec in records:
                article_id = (rec.get("article_id") if isinstance(rec, dict)
                              else rec.article_id)
                grouped.setdefault(article_id, {}).setdefault(
                    data_type, []).append(rec)
        return cls(set(included), grouped,
                   set(flags) if flags is not None else None)

    def presence_flags(self) -> set[tuple[str, str]]:
        if self.flags is not None:
            return self.flags
        return {(article_id, data_type)
                for article_id, by_type in self.records.items()
                for data_type, records in by_type.items() if records}


@dataclass
class AlignedCorpus:
    article_ids: list[str]
    truth: ArticleSide
    pred: ArticleSide

    @property
    def truth_flags(self) -> set[tuple[str, str]]:
        return {(a, t) for a, t in self.truth.presence_flags()
                if a in set(self.article_ids)}

    @property
    def pred_flags(self) -> set[tuple[str, str]]:
        return {(a, t) for a, t in self.pred.presence_flags()
                if a in set(self.article_ids)}

    def truth_records(self, article_id: str, data_type: str) -> list:
        return self.truth.records.get(article_id, {}).get(data_type, [])

    def pred_records(self, article_id: str, data_type: str) -> list:
        return self.pred.records.get(article_id, {}).get(data_type, [])


def align_articles(truth: ArticleSide, pred: ArticleSide) -> AlignedCorpus:
    """Intersect on articles both sides marked include; all metrics run
    over this intersection only."""
    shared = sorted(truth.included & pred.included)
    return AlignedCorpus(shared, truth, pred)


def evaluation_report(corpus: AlignedCorpus, data_types: dict[str, WeightProfile]
                      | None = None) -> dict:
    """Flagging/Count/Extraction triples per data type.

    ``data_types`` maps data type -> weight profile; parameters default
    to the nine evaluated classes under the parameter profile.
    """
    if data_types is None:
        data_types = {"model": DEFAULT_PROFILES["model"],
                      "outbreak": DEFAULT_PROFILES["outbreak"]}
        for cls in catalog.EVALUATED_PARAMETER_CLASSES:
            data_types[cls] = DEFAULT_PROFILES["parameter"]

    report: dict = {"articles": len(corpus.article_ids), "data_types": {}}
    for data_type, profile in data_types.items():
        extraction = extraction_metric(corpus, data_type, profile)
        report["data_types"][data_type] = {
            "flagging": flagging_metric(corpus, data_type).as_dict(),
            "count": count_metric(corpus, data_type).as_dict(),
            "extraction": {
                "overall": extraction["overall"].as_dict(),
                "per_group": {g: t.as_dict()
                              for g, t in extraction["per_group"].items()},
                "per_field": {f: t.as_dict()
                              for f, t in extraction["per_field"].items()},
            },
        }
    return report


def format_report_table(report: dict) -> str:
    """Human-readable table: one Flagging/Count/Extraction block per
    data type."""
    lines = [f"Aligned articles: {report['articles']}", ""]
    header = f"{'Data Type':<28} {'Metric':<12} {'P':>6} {'R':>6} {'F1':>6}"
    lines.append(header)
    lines.append("-" * len(header))
    for data_type, blocks in report["data_types"].items():
        for metric_name in ("flagging", "count"):
            triple = blocks[metric_name]
            lines.append(f"{data_type:<28} {metric_name.capitalize():<12} "
                         f"{triple['precision']:>6.2f} {triple['recall']:>6.2f} "
                         f"{triple['f1']:>6.2f}")
        overall = blocks["extraction"]["overall"]
        lines.append(f"{data_type:<28} {'Extraction':<12} "
                     f"{overall['precision']:>6.2f} {overall['recall']:>6.2f} "
                     f"{overall['f1']:>6.2f}")
    return "\n".join(lines)


def write_report(report: dict, json_path: str | Path,
                 table_path: str | Path | None = None) -> None:
    json_path = Path(json_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    with open(json_path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)
    if table_path is not None:
        Path(table_path).write_text(format_report_table(report) + "\n",
                                    encoding="utf-8")
