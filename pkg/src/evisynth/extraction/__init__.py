"""Structured data extraction: the schema engine, the three extraction
pipelines (parameters, transmission models, outbreaks), rule-of-three
aggregation, and provenance tracing."""

from .schema import FieldSchema, Kind, validate_payload
from .records import (
    AggregatedRange,
    ModelExtraction,
    OutbreakExtraction,
    ParameterExtraction,
    PopulationContext,
    ProvenanceTrace,
)

__all__ = [
    "FieldSchema",
    "Kind",
    "validate_payload",
    "AggregatedRange",
    "ModelExtraction",
    "OutbreakExtraction",
    "ParameterExtraction",
    "PopulationContext",
    "ProvenanceTrace",
]
