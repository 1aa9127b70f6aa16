// View state for the item console. Pending edits live here until a
// Modify round-trips; Verify and Reject always clear them, and nothing
// here is authoritative — the server's item is re-fetched after every
// action.

export class ViewState {
  currentItemId: string | null = null;
  pendingEdits: Record<string, unknown> = {};
  inFlight = false;

  openItem(itemId: string): void {
    this.currentItemId = itemId;
    this.pendingEdits = {};
    this.inFlight = false;
  }

  setEdit(field: string, value: unknown): void {
    this.pendingEdits[field] = value;
  }

  clearEdit(field: string): void {
    delete this.pendingEdits[field];
  }

  hasEdits(): boolean {
    return Object.keys(this.pendingEdits).length > 0;
  }

  beginSubmit(action: "Verify" | "Modify" | "Reject"): boolean {
    if (this.inFlight) return false;
    if (action === "Modify" && !this.hasEdits()) return false;
    if (action !== "Modify") this.pendingEdits = {};
    this.inFlight = true;
    return true;
  }

  endSubmit(success: boolean): void {
    this.inFlight = false;
    if (success) this.pendingEdits = {};
  }
}
