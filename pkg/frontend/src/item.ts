// Dual-pane item view: source document with evidence highlights on the
// left, the schema-driven extraction form on the right, and the
// verify/modify/reject actions. Every action round-trips before the
// view advances (optimistic UI disabled).

import { ApiError, ReviewApi } from "./api";
import { renderDocument, scrollToEvidence } from "./document";
import { applyFieldErrors, flattenExtraction, renderForm } from "./form";
import { ViewState } from "./state";
import type { FieldSchemaInfo, ItemDetail, ReviewAction } from "./types";

export interface ItemViewHooks {
  onDone(): void; // advance to the next pending item
}

async function schemaFor(
  api: ReviewApi,
  detail: ItemDetail,
): Promise<FieldSchemaInfo[]> {
  if (detail.item.data_type === "parameter") {
    const parameterClass = String(
      detail.item.extraction["parameter_class"] ?? "",
    );
    const [classSchema, population] = await Promise.all([
      api.getSchema(parameterClass),
      api.getSchema("population"),
    ]);
    return [...classSchema.fields, ...population.fields];
  }
  const schema = await api.getSchema(detail.item.data_type);
  return schema.fields;
}

export async function renderItemView(
  api: ReviewApi,
  itemId: string,
  state: ViewState,
  hooks: ItemViewHooks,
): Promise<HTMLElement> {
  const detail = await api.getItem(itemId);
  const fields = await schemaFor(api, detail);
  state.openItem(itemId);

  const root = document.createElement("div");
  root.className = "item-view";

  const header = document.createElement("div");
  header.className = "item-header";
  const title = document.createElement("h2");
  title.textContent =
    `${detail.item.item_id} — ${detail.item.data_type} from ` +
    detail.item.article_id;
  const status = document.createElement("span");
  status.className = `status-badge status-${detail.item.status.toLowerCase()}`;
  status.id = "item-status";
  status.textContent = detail.item.status;
  header.append(title, status);
  root.appendChild(header);

  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.id = "error-banner";
  root.appendChild(banner);

  const panes = document.createElement("div");
  panes.className = "panes";

  const left = document.createElement("div");
  left.className = "doc-pane";
  left.appendChild(renderDocument(detail.document_markdown, detail.highlights));

  const right = document.createElement("div");
  right.className = "form-pane";

  const values = flattenExtraction(detail.item.extraction);
  const evidenceFields = new Set(
    detail.highlights.map((span) => span.field.split(":")[0] ?? span.field),
  );
  const form = renderForm(fields, values, detail.item.edits, evidenceFields, {
    onEdit: (field, value) => state.setEdit(field, value),
    onClearEdit: (field) => state.clearEdit(field),
    onEvidenceClick: (field) => scrollToEvidence(left, field),
  });
  right.appendChild(form);

  const actions = document.createElement("div");
  actions.className = "actions";
  const reviewer = document.createElement("input");
  reviewer.id = "reviewer-name";
  reviewer.placeholder = "reviewer";
  reviewer.value = localStorage.getItem("reviewer") ?? "";
  reviewer.addEventListener("change", () =>
    localStorage.setItem("reviewer", reviewer.value),
  );

  const buttons: Partial<Record<ReviewAction, HTMLButtonElement>> = {};
  const submit = async (action: ReviewAction) => {
    banner.textContent = "";
    form.querySelectorAll(".field-error").forEach((e) => {
      e.textContent = "";
    });
    if (!state.beginSubmit(action)) {
      if (action === "Modify" && !state.hasEdits()) {
        banner.textContent = "Modify needs at least one edited field.";
      }
      return;
    }
    for (const button of Object.values(buttons)) button!.disabled = true;
    try {
      const edits = action === "Modify" ? state.pendingEdits : null;
      await api.submitReview(detail.item.item_id, action, edits,
        reviewer.value);
      state.endSubmit(true);
      hooks.onDone();
    } catch (error) {
      state.endSubmit(false);
      if (error instanceof ApiError && error.fieldErrors.length > 0) {
        const unmatched = applyFieldErrors(form, error.fieldErrors);
        banner.textContent = unmatched.join("; ");
      } else {
        banner.textContent = error instanceof Error ? error.message : String(error);
      }
    } finally {
      for (const button of Object.values(buttons)) button!.disabled = false;
    }
  };

  for (const action of ["Verify", "Modify", "Reject"] as ReviewAction[]) {
    const button = document.createElement("button");
    button.id = `action-${action.toLowerCase()}`;
    button.textContent =
      action === "Verify" ? "Verify (v)" : action === "Reject"
        ? "Reject (x)" : "Save edits";
    button.addEventListener("click", () => void submit(action));
    buttons[action] = button;
    actions.appendChild(button);
  }
  actions.appendChild(reviewer);
  right.appendChild(actions);

  panes.append(left, right);
  root.appendChild(panes);

  // keyboard shortcuts for high-throughput review; inert while typing
  root.addEventListener("keydown", (event) => {
    const target = event.target as HTMLElement;
    if (["INPUT", "SELECT", "TEXTAREA"].includes(target.tagName)) return;
    if (event.key === "v") void submit("Verify");
    if (event.key === "x") void submit("Reject");
  });
  root.tabIndex = -1;
  return root;
}
