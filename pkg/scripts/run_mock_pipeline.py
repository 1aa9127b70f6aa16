#!/usr/bin/env python3
"""Build the fixture corpus and run the full pipeline end to end with
scripted LLM/OCR backends — no network, no keys, deterministic output.

Usage:
    python scripts/run_mock_pipeline.py --dest /tmp/demo
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from make_fixture_corpus import build_corpus  # noqa: E402

from evisynth.pipeline import load_config, report_run, run  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", required=True,
                        help="directory for corpus and run outputs")
    args = parser.parse_args()

    corpus = build_corpus(args.dest)
    config = load_config(corpus / "config.json")
    summary = run(config)
    print(report_run(summary))
    print()
    evaluation = Path(config.output_root) / "lassa" / "evaluation" / "evaluation.txt"
    if evaluation.exists():
        print(evaluation.read_text())
    print(f"artefacts under {config.output_root}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
