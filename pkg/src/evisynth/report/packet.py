"""Evidence packets and the programmatic first draft.

The packet bundles dataset statistics, the required figure list, every
table block, and the current draft in a fixed serialisation order so
prompt interpolation is deterministic. The model is instructed to rely
only on this packet and never introduce outside facts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .manifest import ContentManifest


@dataclass
class EvidencePacket:
    stats_text: str
    required_figures: list[tuple[str, str]]  # (path, caption)
    tables: list[str]
    initial_draft: str = ""

    def figures_text(self) -> str:
        return "\n".join(f"- {path} :: {caption}"
                         for path, caption in self.required_figures)

    def tables_text(self) -> str:
        return "\n\n".join(self.tables)

    def packet_text(self) -> str:
        return "\n\n".join([
            "### Dataset Statistics\n" + self.stats_text,
            "### Required Figures\n" + (self.figures_text() or "(none)"),
            "### Tables\n" + (self.tables_text() or "(none)"),
            "### Current Draft\n" + self.initial_draft,
        ])


def stats_text_from_manifest(manifest: ContentManifest) -> str:
    lines = [f"Pathogen: {manifest.pathogen}",
             f"Generated: {manifest.timestamp}"]
    for key, value in manifest.summary_statistics.items():
        lines.append(f"{key.replace('_', ' ')}: {value}")
    return "\n".join(lines)


def build_evidence_packet(manifest: ContentManifest,
                          initial_draft: str) -> EvidencePacket:
    """Deterministic packet serialisation: stats, figures, tables, draft."""
    return EvidencePacket(
        stats_text=stats_text_from_manifest(manifest),
        required_figures=[(f.path, f.caption) for f in manifest.figures],
        tables=[t.markdown for t in manifest.tables],
        initial_draft=initial_draft)


def build_initial_draft(manifest: ContentManifest, kind: str = "outbreak") -> str:
    """Assemble the programmatic Markdown draft from the manifest.

    Every figure appears as an image line and every table appears
    verbatim, so the draft satisfies the grounding checks before any
    model touches it.
    """
    noun = "outbreak surveillance" if kind == "outbreak" \
        else "transmission-modelling"
    parts = [f"# Living {noun} review: {manifest.pathogen}", ""]
    parts.append("## Snapshot")
    parts.append("")
    for key, value in manifest.summary_statistics.items():
        parts.append(f"- {key.replace('_', ' ')}: {value} (Dataset Statistics)")
    parts.append("")
    parts.append("> AI-Interpretation: This snapshot reflects only the "
                 "current extraction dataset; coverage gaps are hypotheses "
                 "to verify against primary surveillance sources.")
    parts.append("")
    for figure in manifest.figures:
        parts.append(f"## Figure {figure.number}: {figure.title}")
        parts.append("")
        parts.append(f"![{figure.caption}]({figure.path})")
        parts.append(f"<!-- fig-layout: width_in=5.5 max_height_in=7.5 -->")
        parts.append("")
        parts.append(f"{figure.caption} (Figure {figure.number})")
        parts.append("")
    for table in manifest.tables:
        parts.append(f"## Table {table.number}: {table.title}")
        parts.append("")
        parts.append(table.markdown)
        parts.append("")
    parts.append("## Change log")
    parts.append("")
    parts.append(f"- {manifest.timestamp}: initial dataset snapshot.")
    parts.append("")
    return "\n".join(parts)
