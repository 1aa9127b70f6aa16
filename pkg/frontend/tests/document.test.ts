import { describe, expect, it } from "vitest";
import { renderDocument, scrollToEvidence, spanAnchorId } from "../src/document";

const DOC = "# Report\n\nThe outbreak produced 120 confirmed cases.\n" +
  "<table><tr><td>from OCR</td></tr></table>\n";

describe("document pane", () => {
  it("marks highlight spans at their character offsets", () => {
    const start = DOC.indexOf("120 confirmed cases");
    const pane = renderDocument(DOC, [
      { field: "cases_confirmed", start, end: start + 19, quote: "" },
    ]);
    const mark = pane.querySelector("mark")!;
    expect(mark.textContent).toBe("120 confirmed cases");
    expect(mark.dataset.field).toBe("cases_confirmed");
    expect(pane.textContent).toBe(DOC);
  });

  it("sanitises OCR HTML: tags render as text, never as elements", () => {
    const pane = renderDocument(DOC, []);
    expect(pane.querySelector("table")).toBeNull();
    expect(pane.textContent).toContain("<table>");
  });

  it("drops malformed and overlapping spans instead of corrupting text", () => {
    const pane = renderDocument(DOC, [
      { field: "a", start: 5, end: 3, quote: "" },
      { field: "b", start: 2, end: 7, quote: "" },
      { field: "c", start: 4, end: 9, quote: "" }, // overlaps b
      { field: "d", start: 0, end: DOC.length + 10, quote: "" },
    ]);
    expect(pane.querySelectorAll("mark").length).toBe(1);
    expect(pane.textContent).toBe(DOC);
  });

  it("scrollToEvidence finds the span anchor", () => {
    const start = DOC.indexOf("120");
    const pane = renderDocument(DOC, [
      { field: "cases_confirmed", start, end: start + 3, quote: "" },
    ]);
    document.body.appendChild(pane);
    const mark = pane.querySelector("mark")! as HTMLElement;
    mark.scrollIntoView = () => {
      mark.dataset.scrolled = "yes";
    };
    expect(scrollToEvidence(pane, "cases_confirmed")).toBe(true);
    expect(mark.dataset.scrolled).toBe("yes");
    expect(scrollToEvidence(pane, "missing_field")).toBe(false);
    pane.remove();
  });

  it("span anchors are DOM-id safe for option-qualified fields", () => {
    expect(spanAnchorId("interventions_type:Vaccination")).not.toContain(":");
  });
});
