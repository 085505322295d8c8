// The golden dashboard payload produced by the seeded 20-player simulation
// (tests/golden in the repo root; regenerate with tests/generate_golden.py).

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ClassDashboard } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));
const goldenPath = join(here, "..", "..", "tests", "golden", "dashboard_seed2026.json");

export function loadGoldenDashboard(): ClassDashboard {
  return JSON.parse(readFileSync(goldenPath, "utf-8")) as ClassDashboard;
}

export function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
