"""Report generation: descriptive statistics, figures and tables, the
content manifest, evidence packets, the critique-revise refinement
loop, grounding checks, and PDF rendering."""

from .descriptives import ReportFigure, ReportTable, compute_descriptives
from .manifest import ContentManifest, build_manifest, load_manifest
from .packet import EvidencePacket, build_evidence_packet, build_initial_draft
from .checks import enforce_checks, missing_figures, missing_table_values
from .refine import CritiqueParseError, CritiqueResult, RefineRound, critique, refine, revise
from .render import render_pdf

__all__ = [
    "ReportFigure",
    "ReportTable",
    "compute_descriptives",
    "ContentManifest",
    "build_manifest",
    "load_manifest",
    "EvidencePacket",
    "build_evidence_packet",
    "build_initial_draft",
    "enforce_checks",
    "missing_figures",
    "missing_table_values",
    "CritiqueParseError",
    "CritiqueResult",
    "RefineRound",
    "critique",
    "refine",
    "revise",
    "render_pdf",
]
