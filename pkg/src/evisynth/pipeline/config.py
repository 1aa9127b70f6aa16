"""Run configuration.

One JSON document per run with env-var overrides for secrets; the CLI
flags override both. Stage order must respect the pipeline
dependencies (retrieval before screening before conversion before
extraction, and so on).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path

STAGES = ("retrieve", "screen-abstract", "convert", "screen-fulltext",
          "extract", "evaluate", "report")

STRATEGY_FLAGS = {
    "two-stage": "TwoStageAI",
    "human-abstract": "HumanAbstractThenAI",
    "direct-fulltext": "DirectFullText",
}


@dataclass
class RunConfig:
    pathogen: str
    output_root: str
    stages: list[str] = field(default_factory=lambda: list(STAGES[:5]))
    pathogen_name: str = ""
    model_name: str = "gpt-oss-120b"
    endpoint_url: str = ""
    api_key: str = ""
    ocr_endpoint: str = ""
    ocr_api_key: str = ""
    mock_llm_dir: str = ""
    mock_ocr_dir: str = ""
    strategy: str = "TwoStageAI"
    seed: int = 0
    workers: int = 8
    download_workers: int = 16
    ocr_concurrency: int = 14
    refine_rounds: int = 5
    reasoning_effort: str = "high"
    unpaywall_email: str = ""
    renderer_cmd: str = ""
    prices_per_million: tuple[float, float] | None = None
    databases: list[str] = field(default_factory=lambda: ["PubMed",
                                                          "EuropePMC",
                                                          "OpenAlex"])
    query_config_file: str = ""
    fixture_articles: str = ""
    fixture_pdf_dir: str = ""
    human_abstract_csv: str = ""
    ground_truth_dir: str = ""
    fixed_timestamp: str = ""

    def __post_init__(self):
        unknown = [s for s in self.stages if s not in STAGES]
        if unknown:
            raise ValueError(f"unknown stages {unknown}")
        order = [STAGES.index(s) for s in self.stages]
        if order != sorted(order):
            raise ValueError("stage order must respect pipeline dependencies: "
                             + " -> ".join(STAGES))
        if not self.pathogen_name:
            self.pathogen_name = self.pathogen.capitalize()

    def config_hash(self) -> str:
        doc = asdict(self)
        # stage selection and artefact location don't change what a
        # stage produces, so they stay out of the identity hash
        doc.pop("stages")
        doc.pop("output_root")
        return hashlib.sha256(
            json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]

    def pathogen_dir(self) -> Path:
        return Path(self.output_root) / self.pathogen

    def writeup_dir(self) -> Path:
        return Path(self.output_root) / "writeup" / self.pathogen


_ENV_OVERRIDES = {
    "EVISYNTH_API_KEY": "api_key",
    "EVISYNTH_ENDPOINT_URL": "endpoint_url",
    "EVISYNTH_OCR_ENDPOINT": "ocr_endpoint",
    "EVISYNTH_OCR_API_KEY": "ocr_api_key",
    "UNPAYWALL_EMAIL": "unpaywall_email",
}


def load_config(path: str | Path, **overrides) -> RunConfig:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    for env, field_name in _ENV_OVERRIDES.items():
        if os.environ.get(env):
            doc[field_name] = os.environ[env]
    for key, value in overrides.items():
        if value is not None:
            doc[key] = value
    if isinstance(doc.get("prices_per_million"), list):
        doc["prices_per_million"] = tuple(doc["prices_per_million"])
    return RunConfig(**doc)
