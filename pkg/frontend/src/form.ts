// Schema-driven extraction form. Controls are generated entirely from
// the FieldSchema list served by the API: adding a field to a schema
// needs no UI change. Each field shows its AI-extracted value, an
// "AI Match" / "Revised" badge, and an evidence link when a provenance
// span exists for it.

import type { FieldSchemaInfo } from "./types";

export interface FormCallbacks {
  onEdit(field: string, value: unknown): void;
  onClearEdit(field: string): void;
  onEvidenceClick(field: string): void;
}

const NULL_OPTION = "(not stated)";

// Parameter extractions nest class fields and population context;
// flatten to the payload-field view the schemas describe.
export function flattenExtraction(
  extraction: Record<string, unknown>,
): Record<string, unknown> {
  const flat: Record<string, unknown> = {};
  for (const [key, value] of Object.entries(extraction)) {
    if (key === "fields" && value && typeof value === "object") {
      Object.assign(flat, value as Record<string, unknown>);
    } else if (key === "population" && value && typeof value === "object") {
      Object.assign(flat, value as Record<string, unknown>);
    } else if (key === "paired_uncertainty" && Array.isArray(value)) {
      flat["paired_uncertainty_lower"] = value[0] ?? null;
      flat["paired_uncertainty_upper"] = value[1] ?? null;
    } else {
      flat[key] = value;
    }
  }
  return flat;
}

function coerce(field: FieldSchemaInfo, raw: string): unknown {
  if (raw === NULL_OPTION || raw === "") return null;
  switch (field.kind) {
    case "integer":
      return Number.parseInt(raw, 10);
    case "float":
      return Number.parseFloat(raw);
    case "boolean":
      return raw === "true";
    case "list_of_string":
      return raw
        .split(";")
        .map((part) => part.trim())
        .filter((part) => part.length > 0);
    default:
      return raw;
  }
}

function displayValue(value: unknown): string {
  if (value === null || value === undefined) return "";
  if (Array.isArray(value)) return value.join("; ");
  return String(value);
}

function buildControl(
  field: FieldSchemaInfo,
  value: unknown,
  onChange: (value: unknown) => void,
): HTMLElement {
  if (field.kind === "enum" || field.kind === "boolean") {
    const select = document.createElement("select");
    const options =
      field.kind === "boolean" ? ["true", "false"] : field.allowed_values;
    if (field.nullable && !field.required) {
      const blank = document.createElement("option");
      blank.value = NULL_OPTION;
      blank.textContent = NULL_OPTION;
      select.appendChild(blank);
    }
    for (const allowed of options) {
      const option = document.createElement("option");
      option.value = allowed;
      option.textContent = allowed;
      select.appendChild(option);
    }
    select.value =
      value === null || value === undefined ? NULL_OPTION : String(value);
    select.addEventListener("change", () => onChange(coerce(field, select.value)));
    return select;
  }

  if (field.kind === "list_of_enum") {
    const select = document.createElement("select");
    select.multiple = true;
    select.size = Math.min(field.allowed_values.length, 6);
    const selected = new Set(
      Array.isArray(value) ? value.map((v) => String(v)) : [],
    );
    for (const allowed of field.allowed_values) {
      const option = document.createElement("option");
      option.value = allowed;
      option.textContent = allowed;
      option.selected = selected.has(allowed);
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      const chosen = Array.from(select.selectedOptions).map((o) => o.value);
      onChange(chosen);
    });
    return select;
  }

  const input = document.createElement("input");
  input.type = field.kind === "integer" || field.kind === "float" ? "number" : "text";
  if (field.kind === "float") input.step = "any";
  if (field.minimum !== null) input.min = String(field.minimum);
  if (field.maximum !== null) input.max = String(field.maximum);
  input.value = displayValue(value);
  input.addEventListener("change", () => onChange(coerce(field, input.value)));
  return input;
}

export function renderForm(
  fields: FieldSchemaInfo[],
  values: Record<string, unknown>,
  edits: Record<string, unknown>,
  evidenceFields: Set<string>,
  callbacks: FormCallbacks,
): HTMLElement {
  const form = document.createElement("div");
  form.className = "extraction-form";

  for (const field of fields) {
    const row = document.createElement("div");
    row.className = "field-row";
    row.dataset.field = field.name;

    const label = document.createElement("label");
    label.textContent = field.name;
    label.title = field.description;

    const badge = document.createElement("span");
    const edited = field.name in edits;
    badge.className = edited ? "badge revised" : "badge ai-match";
    badge.textContent = edited ? "Revised" : "AI Match";

    const evidence = document.createElement("button");
    evidence.type = "button";
    if (evidenceFields.has(field.name)) {
      evidence.className = "evidence-link";
      evidence.textContent = "evidence";
      evidence.addEventListener("click", () =>
        callbacks.onEvidenceClick(field.name),
      );
    } else {
      evidence.className = "evidence-link none";
      evidence.textContent = "no evidence";
      evidence.disabled = true;
    }

    const original = values[field.name] ?? null;
    const current = edited ? edits[field.name] : original;
    const control = buildControl(field, current, (value) => {
      const unchanged =
        JSON.stringify(value) === JSON.stringify(original ?? null);
      if (unchanged) {
        callbacks.onClearEdit(field.name);
      } else {
        callbacks.onEdit(field.name, value);
      }
      badge.className = unchanged ? "badge ai-match" : "badge revised";
      badge.textContent = unchanged ? "AI Match" : "Revised";
    });

    const errorBox = document.createElement("div");
    errorBox.className = "field-error";

    row.append(label, badge, evidence, control, errorBox);
    form.appendChild(row);
  }
  return form;
}

// Server-side validation errors name the offending field in quotes;
// surface each next to its control, the rest in the banner slot.
export function applyFieldErrors(
  form: HTMLElement,
  errors: string[],
): string[] {
  const unmatched: string[] = [];
  for (const error of errors) {
    const match = error.match(/field '([^']+)'/);
    const row = match
      ? form.querySelector<HTMLElement>(
          `.field-row[data-field="${match[1]}"] .field-error`,
        )
      : null;
    if (row) {
      row.textContent = error;
    } else {
      unmatched.push(error);
    }
  }
  return unmatched;
}
