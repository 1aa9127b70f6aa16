// Hash routes: "#/" is the queue, "#/items/<id>" is one item. Deep
// links restore the item view on load.

export type Route =
  | { view: "queue" }
  | { view: "item"; itemId: string };

export function parseRoute(hash: string): Route {
  const match = hash.match(/^#\/items\/(.+)$/);
  if (match && match[1]) {
    return { view: "item", itemId: decodeURIComponent(match[1]) };
  }
  return { view: "queue" };
}

export function itemHash(itemId: string): string {
  return `#/items/${encodeURIComponent(itemId)}`;
}
