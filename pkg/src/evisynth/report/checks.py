"""Non-negotiable grounding checks applied after every refinement pass.

Asset presence: every required figure path from the manifest must
appear at least once as a Markdown image line. Table preservation:
every packet table must be present with values unchanged; reformatting
is allowed, so the check compares the multiset of numeric cell strings
rather than the literal block. Violations are repaired by appending
the missing figures or the original table verbatim at the document end,
so the rendered artefact always carries the full evidence set.
"""

from __future__ import annotations

import re
from collections import Counter

from .manifest import ContentManifest

_IMAGE_LINE = r"!\[[^\]]*\]\(\s*{path}\s*\)"
_NUMBER = re.compile(r"\d+(?:\.\d+)?")


def figure_present(draft: str, path: str) -> bool:
    return re.search(_IMAGE_LINE.format(path=re.escape(path)), draft) is not None


def missing_figures(draft: str, manifest: ContentManifest) -> list:
    return [f for f in manifest.figures if not figure_present(draft, f.path)]


def table_numbers(markdown_table: str) -> Counter:
    """Multiset of numeric cell strings inside a markdown table block."""
    counts: Counter = Counter()
    for line in markdown_table.splitlines():
        if not line.strip().startswith("|"):
            continue
        for cell in line.strip().strip("|").split("|"):
            counts.update(_NUMBER.findall(cell))
    return counts


def _draft_number_counts(draft: str) -> Counter:
    return Counter(_NUMBER.findall(draft))


def missing_table_values(draft: str, tables: list[str]) -> list[str]:
    """Tables whose numeric cells are not all present in the draft."""
    available = _draft_number_counts(draft)
    missing = []
    for table in tables:
        needed = table_numbers(table)
        if any(available.get(token, 0) < count
               for token, count in needed.items()):
            missing.append(table)
    return missing


def enforce_checks(draft: str, manifest: ContentManifest) -> str:
    """Repair a draft so both non-negotiable checks pass."""
    repaired = draft
    appendix: list[str] = []
    for figure in missing_figures(repaired, manifest):
        appendix.append(f"![{figure.caption}]({figure.path})")
    table_blocks = [t.markdown for t in manifest.tables]
    for table in missing_table_values(repaired, table_blocks):
        appendix.append(table)
    if appendix:
        repaired = repaired.rstrip() + "\n\n## Appended evidence\n\n" \
            + "\n\n".join(appendix) + "\n"
    return repaired
