// Source-document pane: the converted markdown with provenance spans
// highlighted. The document is rendered through text nodes only, so
// OCR-produced HTML (tables etc.) is sanitised by construction —
// nothing from the document ever reaches innerHTML.

import type { HighlightSpan } from "./types";

export function spanAnchorId(field: string): string {
  return "evidence-" + field.replace(/[^a-zA-Z0-9_-]/g, "_");
}

export function renderDocument(
  text: string,
  spans: HighlightSpan[],
): HTMLElement {
  const container = document.createElement("pre");
  container.className = "doc-pane-text";

  const ordered = [...spans]
    .filter((s) => s.start >= 0 && s.end <= text.length && s.start < s.end)
    .sort((a, b) => a.start - b.start);

  let cursor = 0;
  for (const span of ordered) {
    if (span.start < cursor) continue; // overlapping span; keep the first
    if (span.start > cursor) {
      container.appendChild(
        document.createTextNode(text.slice(cursor, span.start)),
      );
    }
    const mark = document.createElement("mark");
    mark.id = spanAnchorId(span.field);
    mark.dataset.field = span.field;
    mark.textContent = text.slice(span.start, span.end);
    container.appendChild(mark);
    cursor = span.end;
  }
  if (cursor < text.length) {
    container.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return container;
}

export function scrollToEvidence(root: HTMLElement, field: string): boolean {
  const target = root.querySelector<HTMLElement>(`#${spanAnchorId(field)}`);
  if (!target) return false;
  target.scrollIntoView({ behavior: "smooth", block: "center" });
  target.classList.add("flash");
  setTimeout(() => target.classList.remove("flash"), 900);
  return true;
}
