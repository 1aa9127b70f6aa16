#!/usr/bin/env python3
"""Start the review service over a run's extraction outputs.

Loads extraction records, provenance traces, and converted markdown
from a finished pipeline run into a fresh (or existing) review store,
then serves the /v1 API plus the built UI (frontend/dist) if present.

Usage:
    python scripts/serve_review.py --run-dir /tmp/demo/run --pathogen lassa \
        [--db review.db] [--port 8010]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from evisynth.extraction.records import (  # noqa: E402
    read_provenance_jsonl,
    read_records_jsonl,
)
from evisynth.review import ReviewStore, create_app  # noqa: E402


def load_run(store: ReviewStore, run_dir: Path, pathogen: str) -> int:
    extractions = run_dir / pathogen / "extractions"
    records = []
    for name in ("parameters.jsonl", "models.jsonl", "outbreaks.jsonl"):
        path = extractions / name
        if path.exists():
            records.extend(read_records_jsonl(path))
    traces = {}
    provenance_path = extractions / "provenance.jsonl"
    if provenance_path.exists():
        for trace in read_provenance_jsonl(provenance_path):
            traces[trace.extraction_id] = trace
    store.ingest(records, traces)
    for md_path in (run_dir / pathogen / "markdown").glob("*.md"):
        store.put_document(md_path.stem, md_path.read_text(encoding="utf-8"))
    return len(records)


def load_demo(store: ReviewStore) -> int:
    """Built-in fixture items for trying the console without a run."""
    from evisynth.extraction.records import (
        ModelExtraction,
        OutbreakExtraction,
        ProvenanceEntry,
        ProvenanceTrace,
    )

    document = ("# Lassa fever outbreak investigation\n\n"
                "The outbreak in Edo State produced 120 confirmed cases and "
                "17 deaths between March and July 2018. A stochastic "
                "compartmental SEIR model was fitted to the case series.")
    records = [
        OutbreakExtraction(id="DEMO-OB1", article_id="A001",
                           pathogen="lassa", outbreak_country="Nigeria",
                           outbreak_start_year=2018,
                           outbreak_start_month="Mar", cases_confirmed=120,
                           deaths=17),
        OutbreakExtraction(id="DEMO-OB2", article_id="A001",
                           pathogen="lassa", outbreak_country="Guinea"),
        ModelExtraction(id="DEMO-MD1", article_id="A001", pathogen="lassa",
                        model_type="Compartmental",
                        compartmental_type="SEIR",
                        stoch_deter="Stochastic", code_available=False),
    ]
    traces = {"DEMO-OB1": ProvenanceTrace("DEMO-OB1", [
        ProvenanceEntry("cases_confirmed", "120 confirmed cases", True),
        ProvenanceEntry("deaths", "17 deaths", True),
    ])}
    store.ingest(records, traces)
    store.put_document("A001", document)
    return len(records)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--run-dir")
    parser.add_argument("--pathogen")
    parser.add_argument("--demo", action="store_true",
                        help="serve built-in fixture items instead of a run")
    parser.add_argument("--db", default="review.db")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8010)
    args = parser.parse_args()

    store = ReviewStore(args.db)
    if args.demo:
        count = load_demo(store)
    elif args.run_dir and args.pathogen:
        count = load_run(store, Path(args.run_dir), args.pathogen)
    else:
        parser.error("need --demo or both --run-dir and --pathogen")
    print(f"loaded {count} extraction records into {args.db}")

    static_dir = Path(__file__).resolve().parents[1] / "frontend" / "dist"
    app = create_app(store, static_dir=static_dir if static_dir.is_dir()
                     else None)
    if static_dir.is_dir():
        print(f"serving UI from {static_dir}")
    else:
        print("no frontend build found; API only (build with: cd frontend "
              "&& npm run build)")

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
