"""Command-line entry point.

Verbs: ``run`` executes the configured stages, ``resume`` re-runs a
config skipping completed stages, ``report`` prints the per-stage
funnel and token/cost tally of a finished run, and ``eval`` runs the
evaluation stage alone against a ground-truth directory.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import RunConfig, STAGES, STRATEGY_FLAGS, load_config
from .orchestrator import RunSummary, StageResult, report_run, run


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="run configuration JSON")
    parser.add_argument("--pathogen")
    parser.add_argument("--stages",
                        help=f"comma-separated subset of {','.join(STAGES)}")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS),
                        help="screening strategy")
    parser.add_argument("--mock-llm", dest="mock_llm_dir",
                        help="directory of scripted LLM rule files")
    parser.add_argument("--mock-ocr", dest="mock_ocr_dir",
                        help="directory of scripted OCR fixtures")
    parser.add_argument("--output", dest="output_root")
    parser.add_argument("--truth-dir", dest="ground_truth_dir")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "pathogen": args.pathogen,
        "seed": args.seed,
        "mock_llm_dir": args.mock_llm_dir,
        "mock_ocr_dir": args.mock_ocr_dir,
        "output_root": args.output_root,
        "ground_truth_dir": args.ground_truth_dir,
    }
    if args.stages:
        overrides["stages"] = args.stages.split(",")
    if args.strategy:
        overrides["strategy"] = STRATEGY_FLAGS[args.strategy]
    if args.config:
        return load_config(args.config, **overrides)
    missing = [k for k in ("pathogen", "output_root")
               if not overrides.get(k)]
    if missing:
        raise SystemExit(f"--config or explicit {'/'.join(missing)} required")
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="evisynth",
        description="Automated systematic literature review pipeline")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    run_parser = sub.add_parser("run", help="execute pipeline stages")
    _add_run_flags(run_parser)

    resume_parser = sub.add_parser("resume",
                                   help="re-run, skipping completed stages")
    _add_run_flags(resume_parser)

    report_parser = sub.add_parser("report", help="print a run report")
    report_parser.add_argument("--run-dir", required=True,
                               help="output root of a finished run")
    report_parser.add_argument("--pathogen", required=True)
    report_parser.add_argument("--json", action="store_true")

    eval_parser = sub.add_parser("eval",
                                 help="evaluate extractions against ground "
                                      "truth")
    _add_run_flags(eval_parser)

    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    if args.verb in ("run", "resume"):
        config = _config_from_args(args)
        summary = run(config, resume=args.verb == "resume")
        print(report_run(summary))
        return 0

    if args.verb == "eval":
        config = _config_from_args(args)
        config.stages = ["evaluate"]
        summary = run(config)
        print(report_run(summary))
        evaluation = (config.pathogen_dir() / "evaluation"
                      / "evaluation.txt")
        if evaluation.exists():
            print()
            print(evaluation.read_text())
        return 0

    summary_path = Path(args.run_dir) / args.pathogen / "run_summary.json"
    if not summary_path.exists():
        print(f"no run summary at {summary_path}", file=sys.stderr)
        return 1
    with open(summary_path, encoding="utf-8") as f:
        doc = json.load(f)
    summary = RunSummary(doc["pathogen"], doc["config_hash"],
                         [StageResult(**s) for s in doc["stages"]],
                         doc.get("usage", {}))
    print(report_run(summary, as_json=args.json))
    return 0


if __name__ == "__main__":
    sys.exit(main())
