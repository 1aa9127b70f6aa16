"""Extraction record types and their JSONL/CSV persistence.

Records are only ever constructed from payloads that passed
validate_payload, so reading a persisted log back yields
schema-conformant rows by construction. JSONL is the primary format
(one schema-tagged record per line); the flattened CSVs mirror the
extraction schema column names for spreadsheet review.
"""

from __future__ import annotations

import csv
import json
import os
import threading
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable, Iterator

from . import catalog

_write_lock = threading.Lock()


@dataclass
class PopulationContext:
    population_sex: str = "unspecified"
    population_sample_type: str = "unspecified"
    population_group: str = "unspecified"
    population_sample_size: int | None = None
    population_age_min: int | None = None
    population_age_max: int | None = None
    population_countries: list[str] = field(default_factory=list)
    population_location: str = ""
    method_moment_value: str = "unspecified"

    @classmethod
    def from_payload(cls, payload: dict) -> "PopulationContext":
        kwargs = {}
        for f in catalog.POPULATION_SCHEMA:
            if payload.get(f.name) is not None:
                kwargs[f.name] = payload[f.name]
        return cls(**kwargs)


@dataclass
class AggregatedRange:
    lower_bound: float
    upper_bound: float
    disaggregated_by: list[str]
    aggregated_ids: list[str]


@dataclass
class ParameterExtraction:
    id: str
    article_id: str
    pathogen: str
    parameter_class: str
    parameter_type: str | None = None
    value: float | None = None
    unit: str | None = None
    fields: dict = field(default_factory=dict)
    value_type: str | None = None
    statistical_approach: str | None = None
    single_type_uncertainty: str | None = None
    single_uncertainty_value: float | None = None
    paired_uncertainty: tuple[float, float] | None = None
    paired_uncertainty_type: str | None = None
    population: PopulationContext | None = None
    aggregation: AggregatedRange | None = None

    # Payload keys holding the class-specific parameter subtype.
    _TYPE_KEYS = ("parameter_type", "type", "delay_type")

    @classmethod
    def from_payload(cls, payload: dict, *, id: str, article_id: str,
                     pathogen: str, parameter_class: str) -> "ParameterExtraction":
        shared = {"value_type", "statistical_approach", "single_type_uncertainty",
                  "single_uncertainty_value", "paired_uncertainty_type",
                  "paired_uncertainty_lower", "paired_uncertainty_upper"}
        parameter_type = None
        for key in cls._TYPE_KEYS:
            if payload.get(key) is not None:
                parameter_type = payload[key]
                break
        lower = payload.get("paired_uncertainty_lower")
        upper = payload.get("paired_uncertainty_upper")
        paired = (lower, upper) if lower is not None or upper is not None else None
        class_fields = {k: v for k, v in payload.items()
                        if k not in shared and k not in ("value", "unit")}
        return cls(
            id=id, article_id=article_id, pathogen=pathogen,
            parameter_class=parameter_class, parameter_type=parameter_type,
            value=payload.get("value"), unit=payload.get("unit"),
            fields=class_fields,
            value_type=payload.get("value_type"),
            statistical_approach=payload.get("statistical_approach"),
            single_type_uncertainty=payload.get("single_type_uncertainty"),
            single_uncertainty_value=payload.get("single_uncertainty_value"),
            paired_uncertainty=paired,
            paired_uncertainty_type=payload.get("paired_uncertainty_type"),
        )


@dataclass
class ModelExtraction:
    id: str
    article_id: str
    pathogen: str
    model_type: str = "Unspecified"
    compartmental_type: str = "Not compartmental"
    stoch_deter: str | None = None
    transmission_route: list[str] = field(default_factory=lambda: ["Unspecified"])
    uncertainty_was_considered: bool | None = None
    spatial_model: bool | None = None
    spillover_included: bool | None = None
    assumptions: list[str] = field(default_factory=lambda: ["Unspecified"])
    theoretical_model: bool = False
    interventions_type: list[str] = field(default_factory=lambda: ["Unspecified"])
    code_available: bool = False
    coding_language: str | None = None
    is_data_used_available: str | None = None
    readme_included: bool | None = None
    notes: str | None = None

    @classmethod
    def from_payload(cls, payload: dict, *, id: str, article_id: str,
                     pathogen: str) -> "ModelExtraction":
        kwargs = {f.name: payload[f.name] for f in catalog.MODEL_SCHEMA
                  if payload.get(f.name) is not None}
        return cls(id=id, article_id=article_id, pathogen=pathogen, **kwargs)


@dataclass
class OutbreakExtraction:
    id: str
    article_id: str
    pathogen: str
    outbreak_is_currently_ongoing: bool = False
    outbreak_country: str = ""
    asymptomatic_transmission_described: bool = False
    outbreak_start_day: int | None = None
    outbreak_start_month: str | None = None
    outbreak_start_year: int | None = None
    outbreak_end_day: int | None = None
    outbreak_end_month: str | None = None
    outbreak_end_year: int | None = None
    outbreak_duration_months: float | None = None
    outbreak_location: str | None = None
    outbreak_location_type: str | None = None
    outbreak_source: str | None = None
    mode_of_detection: str | None = None
    method_of_case_definition: str | None = None
    pre_outbreak: str | None = None
    cases_confirmed: float | None = None
    cases_probable: float | None = None
    cases_suspected: float | None = None
    cases_unspecified: float | None = None
    cases_asymptomatic: float | None = None
    cases_severe: float | None = None
    deaths: float | None = None
    population_size_geographical_area: float | None = None
    type_cases_sex_disagg: str | None = None
    male_cases: float | None = None
    prop_male_cases: float | None = None
    female_cases: float | None = None
    prop_female_cases: float | None = None
    notes: str | None = None

    @classmethod
    def from_payload(cls, payload: dict, *, id: str, article_id: str,
                     pathogen: str) -> "OutbreakExtraction":
        kwargs = {f.name: payload[f.name] for f in catalog.OUTBREAK_SCHEMA
                  if payload.get(f.name) is not None}
        return cls(id=id, article_id=article_id, pathogen=pathogen, **kwargs)


@dataclass
class ProvenanceEntry:
    field: str
    quote: str
    verified: bool = False


@dataclass
class ProvenanceTrace:
    extraction_id: str
    entries: list[ProvenanceEntry] = field(default_factory=list)


# ---------------------------------------------------------------- JSONL io

_DATA_TYPES = {
    "parameter": ParameterExtraction,
    "model": ModelExtraction,
    "outbreak": OutbreakExtraction,
}


def record_data_type(record) -> str:
    for name, klass in _DATA_TYPES.items():
        if isinstance(record, klass):
            return name
    raise TypeError(f"not an extraction record: {type(record).__name__}")


def record_to_json(record) -> dict:
    doc = asdict(record)
    doc["data_type"] = record_data_type(record)
    if isinstance(record, ParameterExtraction) and record.paired_uncertainty:
        doc["paired_uncertainty"] = list(record.paired_uncertainty)
    return doc


def record_from_json(doc: dict):
    doc = dict(doc)
    data_type = doc.pop("data_type")
    klass = _DATA_TYPES[data_type]
    if data_type == "parameter":
        if doc.get("population") is not None:
            doc["population"] = PopulationContext(**doc["population"])
        if doc.get("aggregation") is not None:
            doc["aggregation"] = AggregatedRange(**doc["aggregation"])
        if doc.get("paired_uncertainty") is not None:
            doc["paired_uncertainty"] = tuple(doc["paired_uncertainty"])
    return klass(**doc)


def append_records_jsonl(records: Iterable, path: str | Path) -> None:
    """Append records as JSONL lines; line appends are serialised."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(record_to_json(r), ensure_ascii=False) for r in records]
    if not lines:
        return
    with _write_lock, open(path, "a", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
        f.flush()
        os.fsync(f.fileno())


def read_records_jsonl(path: str | Path) -> Iterator:
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                yield record_from_json(json.loads(line))


def write_provenance_jsonl(traces: Iterable[ProvenanceTrace],
                           path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with _write_lock, open(path, "a", encoding="utf-8") as f:
        for trace in traces:
            f.write(json.dumps(asdict(trace), ensure_ascii=False) + "\n")


def read_provenance_jsonl(path: str | Path) -> Iterator[ProvenanceTrace]:
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            entries = [ProvenanceEntry(**e) for e in doc.get("entries", [])]
            yield ProvenanceTrace(doc["extraction_id"], entries)


# ------------------------------------------------------------------ CSV io

PARAMETER_CSV_COLUMNS = [
    "id", "article_id", "pathogen", "parameter_class", "parameter_type",
    "value", "unit", "rate_denominator", "delay_type", "delay_type_note",
    "genome_site", "transmission", "method", "name", "outcome", "occupation",
    "significant", "adjusted", "numerator", "denominator", "value_type",
    "statistical_approach", "single_type_uncertainty",
    "single_uncertainty_value", "paired_uncertainty_lower",
    "paired_uncertainty_upper", "paired_uncertainty_type", "population_sex",
    "population_sample_type", "population_group", "population_sample_size",
    "population_age_min", "population_age_max", "population_countries",
    "population_location", "method_moment_value", "aggregation_lower_bound",
    "aggregation_upper_bound", "aggregation_disaggregated_by",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "; ".join(str(v) for v in value)
    return str(value)


def _parameter_row(rec: ParameterExtraction) -> dict:
    row = {c: "" for c in PARAMETER_CSV_COLUMNS}
    for name in ("id", "article_id", "pathogen", "parameter_class",
                 "parameter_type", "value", "unit", "value_type",
                 "statistical_approach", "single_type_uncertainty",
                 "single_uncertainty_value", "paired_uncertainty_type"):
        row[name] = _cell(getattr(rec, name))
    if rec.paired_uncertainty:
        row["paired_uncertainty_lower"] = _cell(rec.paired_uncertainty[0])
        row["paired_uncertainty_upper"] = _cell(rec.paired_uncertainty[1])
    for name, value in rec.fields.items():
        if name in row and name not in ("type", "parameter_type", "delay_type"):
            row[name] = _cell(value)
    if "delay_type" in rec.fields:
        row["delay_type"] = _cell(rec.fields["delay_type"])
    if rec.population is not None:
        for name in ("population_sex", "population_sample_type",
                     "population_group", "population_sample_size",
                     "population_age_min", "population_age_max",
                     "population_countries", "population_location",
                     "method_moment_value"):
            row[name] = _cell(getattr(rec.population, name))
    if rec.aggregation is not None:
        row["aggregation_lower_bound"] = _cell(rec.aggregation.lower_bound)
        row["aggregation_upper_bound"] = _cell(rec.aggregation.upper_bound)
        row["aggregation_disaggregated_by"] = _cell(
            rec.aggregation.disaggregated_by)
    return row


def write_records_csv(records: list, path: str | Path) -> None:
    """Flattened CSV export mirroring the extraction schema columns."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not records:
        columns, rows = ["id", "article_id", "pathogen"], []
    else:
        data_type = record_data_type(records[0])
        if data_type == "parameter":
            columns = PARAMETER_CSV_COLUMNS
            rows = [_parameter_row(r) for r in records]
        else:
            schema = (catalog.MODEL_SCHEMA if data_type == "model"
                      else catalog.OUTBREAK_SCHEMA)
            columns = ["id", "article_id", "pathogen"] + [f.name for f in schema]
            rows = [{c: _cell(getattr(r, c)) for c in columns} for r in records]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
