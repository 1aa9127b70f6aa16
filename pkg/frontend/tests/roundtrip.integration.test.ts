// Live round-trip: the UI's API client and state machine (the exact
// code paths the console buttons call) against a real review service
// spawned as a child process. Covers Verify, Modify with valid and
// invalid edits, Reject, export composition, and audit-log replay.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiError, ReviewApi } from "../src/api";
import { ViewState } from "../src/state";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 60; attempt++) {
    try {
      const response = await fetch(`${BASE}/v1/items`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("review service did not come up");
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["scripts/serve_review.py", "--demo", "--db", ":memory:",
     "--port", String(PORT)],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForService();
}, 30000);

afterAll(() => {
  service?.kill();
});

describe("review round-trip against a live service", () => {
  const api = new ReviewApi(`${BASE}/v1`);

  it("lists the fixture items with per-paper counts", async () => {
    const page = await api.listItems({});
    const ids = page.items.map((item) => item.item_id);
    expect(ids).toContain("DEMO-OB1");
    expect(ids).toContain("DEMO-MD1");
    const ob1 = page.items.find((item) => item.item_id === "DEMO-OB1")!;
    expect(ob1.article_counts.outbreak).toBe(2);
    expect(ob1.article_counts.model).toBe(1);
  });

  it("serves the document with locatable highlight spans", async () => {
    const detail = await api.getItem("DEMO-OB1");
    expect(detail.document_markdown).toContain("120 confirmed cases");
    const span = detail.highlights.find(
      (highlight) => highlight.field === "cases_confirmed",
    )!;
    expect(
      detail.document_markdown.slice(span.start, span.end),
    ).toBe("120 confirmed cases");
  });

  it("serves the field schemas that drive the form", async () => {
    const schema = await api.getSchema("outbreak");
    const country = schema.fields.find(
      (field) => field.name === "outbreak_country",
    )!;
    expect(country.allowed_values).toContain("Nigeria");
    expect(country.allowed_values).not.toContain("USA");
  });

  it("rejects an invalid Modify with field errors, accepts a valid one",
    async () => {
      const state = new ViewState();
      state.openItem("DEMO-OB1");
      state.setEdit("outbreak_country", "USA");
      expect(state.beginSubmit("Modify")).toBe(true);
      const failure = await api
        .submitReview("DEMO-OB1", "Modify", state.pendingEdits, "ui-tester")
        .catch((error: unknown) => error);
      state.endSubmit(false);
      expect(failure).toBeInstanceOf(ApiError);
      expect((failure as ApiError).status).toBe(422);
      expect((failure as ApiError).fieldErrors.join(" ")).toContain(
        "United States of America",
      );
      // edits survive a failed Modify so the reviewer can correct them
      expect(state.pendingEdits).toHaveProperty("outbreak_country");

      state.setEdit("outbreak_country", "Nigeria");
      state.setEdit("deaths", 21);
      state.beginSubmit("Modify");
      const item = await api.submitReview(
        "DEMO-OB1", "Modify", state.pendingEdits, "ui-tester");
      state.endSubmit(true);
      expect(item.status).toBe("Revised");
      expect(item.edits["deaths"]).toBe(21);
      expect(state.hasEdits()).toBe(false);
    });

  it("verifies and rejects the other items", async () => {
    const state = new ViewState();
    state.openItem("DEMO-MD1");
    state.setEdit("stray", "edit");
    state.beginSubmit("Verify"); // Verify clears edits client-side
    expect(state.hasEdits()).toBe(false);
    const verified = await api.submitReview("DEMO-MD1", "Verify", null,
      "ui-tester");
    state.endSubmit(true);
    expect(verified.status).toBe("Verified");

    const rejected = await api.submitReview("DEMO-OB2", "Reject", null,
      "ui-tester");
    expect(rejected.status).toBe("Rejected");
  });

  it("reload reflects exactly the server's item status", async () => {
    const detail = await api.getItem("DEMO-OB1");
    expect(detail.item.status).toBe("Revised");
    expect(detail.item.reviewer).toBe("ui-tester");
  });

  it("export contains exactly Verified+Revised rows with edits applied",
    async () => {
      const response = await fetch(`${BASE}/v1/export/lassa`);
      const body = (await response.json()) as {
        records: Record<string, unknown>[];
      };
      const byId = new Map(body.records.map((record) => [record.id, record]));
      expect(byId.size).toBe(2);
      expect(byId.has("DEMO-OB1")).toBe(true); // Revised
      expect(byId.has("DEMO-MD1")).toBe(true); // Verified
      expect(byId.has("DEMO-OB2")).toBe(false); // Rejected stays out
      expect(byId.get("DEMO-OB1")!["deaths"]).toBe(21);
    });

  it("audit-log replay reconstructs the live statuses", async () => {
    const auditResponse = await fetch(`${BASE}/v1/audit`);
    const audit = (await auditResponse.json()) as {
      entries: { item_id: string; action: string }[];
    };
    const transition: Record<string, string> = {
      Verify: "Verified",
      Modify: "Revised",
      Reject: "Rejected",
    };
    const replayed = new Map<string, string>();
    for (const entry of audit.entries) {
      replayed.set(entry.item_id, transition[entry.action]!);
    }
    const page = await api.listItems({});
    for (const item of page.items) {
      expect(replayed.get(item.item_id) ?? "Pending").toBe(item.status);
    }
    expect(audit.entries.length).toBeGreaterThanOrEqual(3);
  });
});
