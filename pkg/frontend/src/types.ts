// Wire types for the review service /v1 API.

export type DataType = "parameter" | "model" | "outbreak";
export type ItemStatus = "Pending" | "Verified" | "Revised" | "Rejected";
export type ReviewAction = "Verify" | "Modify" | "Reject";

export interface ArticleCounts {
  parameter: number;
  model: number;
  outbreak: number;
  pending: number;
}

export interface ItemSummary {
  item_id: string;
  article_id: string;
  pathogen: string;
  data_type: DataType;
  status: ItemStatus;
  reviewer: string;
  reviewed_at: string | null;
  article_counts: ArticleCounts;
}

export interface ItemListPage {
  items: ItemSummary[];
  next_after: string | null;
}

export interface ReviewItem {
  item_id: string;
  article_id: string;
  pathogen: string;
  data_type: DataType;
  extraction: Record<string, unknown>;
  provenance: unknown;
  status: ItemStatus;
  edits: Record<string, unknown>;
  reviewer: string;
  reviewed_at: string | null;
  provenance_stale: boolean;
}

export interface HighlightSpan {
  field: string;
  start: number;
  end: number;
  quote: string;
}

export interface ItemDetail {
  item: ReviewItem;
  document_markdown: string;
  highlights: HighlightSpan[];
  unlocated_fields: string[];
}

export type FieldKind =
  | "float"
  | "integer"
  | "string"
  | "boolean"
  | "enum"
  | "list_of_enum"
  | "list_of_string";

export interface FieldSchemaInfo {
  name: string;
  kind: FieldKind;
  description: string;
  allowed_values: string[];
  required: boolean;
  nullable: boolean;
  minimum: number | null;
  maximum: number | null;
}

export interface SchemaResponse {
  data_type: string;
  fields: FieldSchemaInfo[];
}
