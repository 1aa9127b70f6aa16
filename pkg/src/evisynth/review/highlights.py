"""Locate provenance quotes inside the converted markdown.

Matching happens in a whitespace/dash-normalised view of the document,
then offsets are mapped back to the original text so the UI can
highlight exact character spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..extraction.provenance import _DASHES
from ..extraction.records import ProvenanceTrace


@dataclass
class HighlightSpan:
    field: str
    start: int
    end: int
    quote: str


def _normalised_with_map(text: str) -> tuple[str, list[int]]:
    out: list[str] = []
    index_map: list[int] = []
    previous_space = True
    for i, ch in enumerate(text):
        ch = _DASHES.get(ord(ch), ch) if ord(ch) in _DASHES else ch
        if ch.isspace():
            if previous_space:
                continue
            out.append(" ")
            index_map.append(i)
            previous_space = True
        else:
            out.append(ch.lower())
            index_map.append(i)
            previous_space = False
    return "".join(out).rstrip(), index_map


def locate_spans(trace: ProvenanceTrace | None, document: str
                 ) -> tuple[list[HighlightSpan], list[str]]:
    """Find each verified quote's character span in the document.

    Returns (spans, flagged_fields); quotes that cannot be located are
    reported as flags rather than spans.
    """
    if trace is None:
        return [], []
    norm_doc, index_map = _normalised_with_map(document)
    spans: list[HighlightSpan] = []
    flagged: list[str] = []
    for entry in trace.entries:
        norm_quote, _ = _normalised_with_map(entry.quote)
        position = norm_doc.find(norm_quote) if norm_quote else -1
        if position < 0:
            flagged.append(entry.field)
            continue
        start = index_map[position]
        end_norm = position + len(norm_quote) - 1
        end = index_map[end_norm] + 1
        spans.append(HighlightSpan(entry.field, start, end,
                                   document[start:end]))
    return spans, flagged
