"""The content manifest: a machine-readable inventory of everything the
report must carry (figures, tables, dataset statistics), persisted as
JSON next to the writeup."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

from .descriptives import ReportFigure, ReportTable


@dataclass
class ContentManifest:
    pathogen: str
    timestamp: str
    summary_statistics: dict
    sections: list[str] = field(default_factory=list)
    figures: list[ReportFigure] = field(default_factory=list)
    tables: list[ReportTable] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, doc: dict) -> "ContentManifest":
        return cls(
            pathogen=doc["pathogen"], timestamp=doc["timestamp"],
            summary_statistics=doc["summary_statistics"],
            sections=list(doc.get("sections", [])),
            figures=[ReportFigure(**f) for f in doc.get("figures", [])],
            tables=[ReportTable(**t) for t in doc.get("tables", [])])

    def write(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_json(), f, indent=2, ensure_ascii=False)


DEFAULT_SECTIONS = [
    "Snapshot",
    "Outbreak temporal distribution",
    "Geographic distribution and spread patterns",
    "Outbreak size and severity",
    "Detection and reporting patterns",
    "Demographic patterns",
    "Data quality and gaps",
    "Evidence-based recommendations",
    "Change log",
]

MODEL_SECTIONS = [
    "Snapshot",
    "Model architectures",
    "Stochasticity and uncertainty handling",
    "Transmission routes",
    "Assumptions and interventions",
    "Reproducibility indicators",
    "Data quality and gaps",
    "Evidence-based recommendations",
    "Change log",
]


def build_manifest(figures: list[ReportFigure], tables: list[ReportTable],
                   stats: dict, pathogen: str, *, timestamp: str,
                   sections: list[str] | None = None,
                   base_dir: str | Path | None = None) -> ContentManifest:
    """Assemble and validate the manifest; figure files must exist and
    numbering must be dense from 1. Relative figure paths are resolved
    against ``base_dir``."""
    for figure in figures:
        location = Path(figure.path)
        if base_dir is not None and not location.is_absolute():
            location = Path(base_dir) / location
        if not location.exists():
            raise FileNotFoundError(
                f"manifest figure path does not exist: {figure.path}")
    figures = [ReportFigure(i, f.title, f.caption, f.path, f.row_count)
               for i, f in enumerate(figures, start=1)]
    tables = [ReportTable(i, t.title, t.markdown, t.row_count)
              for i, t in enumerate(tables, start=1)]
    return ContentManifest(pathogen=pathogen, timestamp=timestamp,
                           summary_statistics=stats,
                           sections=list(sections or DEFAULT_SECTIONS),
                           figures=figures, tables=tables)


def load_manifest(path: str | Path) -> ContentManifest:
    with open(path, encoding="utf-8") as f:
        return ContentManifest.from_json(json.load(f))
