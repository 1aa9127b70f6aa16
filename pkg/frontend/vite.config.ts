import { defineConfig } from "vite";

// Dev server proxies /v1 to a locally running review service; the
// production build is static assets served by the service itself.
export default defineConfig({
  server: {
    proxy: {
      "/v1": "http://127.0.0.1:8010",
    },
  },
  test: {
    environment: "jsdom",
  },
});
