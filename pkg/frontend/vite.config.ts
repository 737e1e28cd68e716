import { defineConfig } from "vitest/config";

// base is /ui/ because the API process mounts the built bundle there
export default defineConfig({
  base: "/ui/",
  build: {
    outDir: "dist",
  },
  server: {
    // during development proxy API calls to a locally running service
    proxy: {
      "/assess": "http://127.0.0.1:8000",
      "/voi": "http://127.0.0.1:8000",
      "/heatmap": "http://127.0.0.1:8000",
      "/outbreaks": "http://127.0.0.1:8000",
      "/report": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "jsdom",
  },
});
