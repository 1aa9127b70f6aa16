"""Markdown-to-PDF rendering.

An external renderer command takes precedence when configured (invoked
as ``cmd <markdown> <pdf>``); otherwise a built-in reportlab renderer
handles headings, paragraphs, blockquotes, tables, embedded PNG images,
and fig-layout sizing comments. With neither available the report
stays markdown-only with a warning, never failing the pipeline.
"""

from __future__ import annotations

import logging
import re
import subprocess
from pathlib import Path

log = logging.getLogger(__name__)

_FIG_LAYOUT = re.compile(r"<!--\s*fig-layout:\s*([^>]*?)-->")
_IMAGE = re.compile(r"!\[([^\]]*)\]\(([^)]+)\)")


def parse_fig_layout(comment: str) -> dict[str, float]:
    options: dict[str, float] = {}
    for key, value in re.findall(r"(\w+)=([\d.]+)", comment):
        options[key] = float(value)
    return options


def _render_with_reportlab(markdown: str, figure_dir: Path,
                           out_path: Path) -> Path:
    from reportlab.lib.pagesizes import letter
    from reportlab.lib.styles import getSampleStyleSheet
    from reportlab.lib.units import inch
    from reportlab.platypus import (
        Image, Paragraph, Preformatted, SimpleDocTemplate, Spacer)

    styles = getSampleStyleSheet()
    story = []
    pending_layout: dict[str, float] = {}
    lines = markdown.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        i += 1
        stripped = line.strip()
        layout_match = _FIG_LAYOUT.search(stripped)
        if layout_match:
            pending_layout = parse_fig_layout(layout_match.group(1))
            continue
        if not stripped:
            continue
        image_match = _IMAGE.search(stripped)
        if image_match:
            path = Path(image_match.group(2))
            if not path.is_absolute():
                path = figure_dir / path
            if path.exists():
                # look ahead for a fig-layout comment attached to this image
                if i < len(lines):
                    ahead = _FIG_LAYOUT.search(lines[i].strip())
                    if ahead:
                        pending_layout = parse_fig_layout(ahead.group(1))
                        i += 1
                width = pending_layout.get("width_in", 5.5) * inch
                max_height = pending_layout.get("max_height_in", 7.5) * inch
                from PIL import Image as PilImage

                with PilImage.open(path) as im:
                    aspect = im.height / im.width
                height = min(width * aspect, max_height)
                story.append(Image(str(path), width=width, height=height))
                story.append(Spacer(1, 10))
            pending_layout = {}
            continue
        if stripped.startswith("|"):
            table_lines = [stripped]
            while i < len(lines) and lines[i].strip().startswith("|"):
                table_lines.append(lines[i].strip())
                i += 1
            story.append(Preformatted("\n".join(table_lines),
                                      styles["Code"]))
            story.append(Spacer(1, 10))
            continue
        if stripped.startswith("#"):
            level = len(stripped) - len(stripped.lstrip("#"))
            text = stripped.lstrip("#").strip()
            style = styles["Title"] if level == 1 else \
                styles[f"Heading{min(level, 4)}"]
            story.append(Paragraph(text, style))
            continue
        if stripped.startswith(">"):
            story.append(Paragraph(stripped.lstrip("> ").strip(),
                                   styles["Italic"]))
            story.append(Spacer(1, 6))
            continue
        safe = (stripped.replace("&", "&amp;").replace("<", "&lt;")
                .replace(">", "&gt;"))
        story.append(Paragraph(safe, styles["BodyText"]))

    doc = SimpleDocTemplate(str(out_path), pagesize=letter)
    doc.build(story)
    return out_path


def render_pdf(markdown_path: str | Path, figure_dir: str | Path,
               out_path: str | Path, renderer_cmd: str | None = None
               ) -> Path | None:
    """Render a markdown report to PDF; returns None on graceful skip."""
    markdown_path = Path(markdown_path)
    figure_dir = Path(figure_dir)
    out_path = Path(out_path)
    if renderer_cmd:
        try:
            subprocess.run([renderer_cmd, str(markdown_path), str(out_path)],
                           check=True, capture_output=True, timeout=300)
            return out_path
        except (OSError, subprocess.SubprocessError) as exc:
            log.warning("external renderer failed (%s); trying built-in", exc)
    try:
        markdown = markdown_path.read_text(encoding="utf-8")
        return _render_with_reportlab(markdown, figure_dir, out_path)
    except ImportError:
        log.warning("no PDF renderer available; report left as markdown only")
        return None
    except Exception as exc:
        log.warning("built-in PDF rendering failed (%s); report left as "
                    "markdown only", exc)
        return None
