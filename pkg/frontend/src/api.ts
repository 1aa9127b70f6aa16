// Typed client for the review service. Every mutation round-trips to
// the server; no client-side state is authoritative.

import type {
  ItemDetail,
  ItemListPage,
  ReviewAction,
  ReviewItem,
  SchemaResponse,
} from "./types";

export class ApiError extends Error {
  status: number;
  fieldErrors: string[];

  constructor(status: number, message: string, fieldErrors: string[] = []) {
    super(message);
    this.status = status;
    this.fieldErrors = fieldErrors;
  }
}

export interface ListFilters {
  pathogen?: string;
  status?: string;
  data_type?: string;
  after?: string;
  limit?: number;
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  let fieldErrors: string[] = [];
  try {
    const body = await response.json();
    if (Array.isArray(body.errors)) {
      fieldErrors = body.errors;
      detail = "validation failed";
    } else if (body.detail) {
      detail = String(body.detail);
    }
  } catch {
    // non-JSON error body; keep statusText
  }
  return new ApiError(response.status, detail, fieldErrors);
}

export class ReviewApi {
  base: string;

  constructor(base = "/v1") {
    this.base = base;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) throw await parseError(response);
    return response.json() as Promise<T>;
  }

  listItems(filters: ListFilters = {}): Promise<ItemListPage> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(filters)) {
      if (value !== undefined && value !== "") params.set(key, String(value));
    }
    const query = params.toString();
    return this.get<ItemListPage>(`/items${query ? "?" + query : ""}`);
  }

  getItem(itemId: string): Promise<ItemDetail> {
    return this.get<ItemDetail>(`/items/${encodeURIComponent(itemId)}`);
  }

  getSchema(dataType: string): Promise<SchemaResponse> {
    return this.get<SchemaResponse>(`/schemas/${encodeURIComponent(dataType)}`);
  }

  async submitReview(
    itemId: string,
    action: ReviewAction,
    edits: Record<string, unknown> | null,
    reviewer: string,
  ): Promise<ReviewItem> {
    const response = await fetch(
      `${this.base}/items/${encodeURIComponent(itemId)}/review`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ action, edits, reviewer }),
      },
    );
    if (!response.ok) throw await parseError(response);
    const body = (await response.json()) as { item: ReviewItem };
    return body.item;
  }
}
