// Queue dashboard: papers awaiting validation with per-paper
// model/outbreak/parameter counts, filterable by status and data type.

import type { ItemSummary } from "./types";

export interface QueueFilters {
  status: string;
  data_type: string;
}

export function renderQueue(
  summaries: ItemSummary[],
  filters: QueueFilters,
  onFilterChange: (filters: QueueFilters) => void,
  onOpen: (itemId: string) => void,
): HTMLElement {
  const root = document.createElement("div");
  root.className = "queue-view";

  const bar = document.createElement("div");
  bar.className = "filter-bar";
  const statusSelect = document.createElement("select");
  statusSelect.id = "filter-status";
  for (const status of ["", "Pending", "Verified", "Revised", "Rejected"]) {
    const option = document.createElement("option");
    option.value = status;
    option.textContent = status || "all statuses";
    statusSelect.appendChild(option);
  }
  statusSelect.value = filters.status;
  const typeSelect = document.createElement("select");
  typeSelect.id = "filter-type";
  for (const dataType of ["", "parameter", "model", "outbreak"]) {
    const option = document.createElement("option");
    option.value = dataType;
    option.textContent = dataType || "all types";
    typeSelect.appendChild(option);
  }
  typeSelect.value = filters.data_type;
  const refresh = () =>
    onFilterChange({ status: statusSelect.value, data_type: typeSelect.value });
  statusSelect.addEventListener("change", refresh);
  typeSelect.addEventListener("change", refresh);
  bar.append("Status: ", statusSelect, " Type: ", typeSelect);
  root.appendChild(bar);

  const table = document.createElement("table");
  table.className = "queue-table";
  const head = document.createElement("tr");
  for (const column of ["item", "article", "type", "status",
                        "params/models/outbreaks", "pending"]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const summary of summaries) {
    const row = document.createElement("tr");
    row.className = "queue-row";
    row.dataset.itemId = summary.item_id;
    const counts = summary.article_counts;
    const cells = [
      summary.item_id,
      summary.article_id,
      summary.data_type,
      summary.status,
      `${counts.parameter}/${counts.model}/${counts.outbreak}`,
      String(counts.pending),
    ];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      row.appendChild(td);
    }
    row.addEventListener("click", () => onOpen(summary.item_id));
    table.appendChild(row);
  }
  if (summaries.length === 0) {
    const empty = document.createElement("p");
    empty.textContent = "No items match the current filter.";
    root.appendChild(empty);
  }
  root.appendChild(table);
  return root;
}
