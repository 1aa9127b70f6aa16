from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "scripts"))

import pytest

from evisynth.biblio.records import ArticleRecord


@pytest.fixture
def make_record():
    counter = {"n": 0}

    def factory(**overrides) -> ArticleRecord:
        counter["n"] += 1
        fields = dict(
            article_id=f"A{counter['n']:04d}",
            source="PubMed",
            title=f"Study {counter['n']}",
            pathogen="lassa",
            query="q",
            harvested_at="2026-01-01T00:00:00+00:00",
            year=2020,
            abstract="An abstract.",
        )
        fields.update(overrides)
        return ArticleRecord(**fields)

    return factory
