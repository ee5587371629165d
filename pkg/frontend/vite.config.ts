import { defineConfig } from "vitest/config";

export default defineConfig({
  base: "./",
  build: {
    outDir: "dist",
  },
  server: {
    proxy: {
      // During development the analysis service runs separately
      // (`cybok serve`); production builds are mounted by the service itself
      // via `cybok serve --static frontend/dist`.
      "/api": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "jsdom",
  },
});
