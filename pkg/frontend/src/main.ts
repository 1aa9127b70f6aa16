import { ReviewApi } from "./api";
import { renderItemView } from "./item";
import { renderQueue, type QueueFilters } from "./queue";
import { itemHash, parseRoute } from "./router";
import { ViewState } from "./state";
import "./style.css";

const api = new ReviewApi();
const state = new ViewState();
let filters: QueueFilters = { status: "", data_type: "" };

async function nextPendingId(afterItemId: string): Promise<string | null> {
  const page = await api.listItems({ status: "Pending", limit: 50 });
  const pending = page.items.filter((item) => item.item_id !== afterItemId);
  return pending.length > 0 ? pending[0]!.item_id : null;
}

async function render(): Promise<void> {
  const app = document.getElementById("app");
  if (!app) return;
  const route = parseRoute(window.location.hash);
  app.replaceChildren();

  try {
    if (route.view === "queue") {
      const page = await api.listItems({
        status: filters.status || undefined,
        data_type: filters.data_type || undefined,
        limit: 200,
      });
      app.appendChild(
        renderQueue(page.items, filters, (updated) => {
          filters = updated;
          void render();
        }, (itemId) => {
          window.location.hash = itemHash(itemId);
        }),
      );
    } else {
      const view = await renderItemView(api, route.itemId, state, {
        onDone: async () => {
          const next = await nextPendingId(route.itemId);
          window.location.hash = next ? itemHash(next) : "#/";
          if (!next) void render();
        },
      });
      app.appendChild(view);
      view.focus();
    }
  } catch (error) {
    const message = document.createElement("p");
    message.className = "error-banner";
    message.textContent = error instanceof Error ? error.message : String(error);
    app.appendChild(message);
  }
}

window.addEventListener("hashchange", () => void render());
void render();
