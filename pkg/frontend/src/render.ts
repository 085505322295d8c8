// DOM builders for the roster and the per-player model panel. Values are
// rendered verbatim from the snapshot payload; no model math happens here.

import type { MapSummary, ModelSnapshot } from "./api.js";
import type { PlayerView } from "./viewmodel.js";

export const TUTORIAL_TOTAL = 6;

// palette indices 0..5: land, water, bloom, house, corn, dairy
export const PALETTE = ["#d9c79a", "#3d7fd9", "#46a546", "#a0522d", "#e8c832", "#e6e6e6"];

const IDLE_LIGHTS: Array<{ key: keyof ModelSnapshot; label: string; tone: string }> = [
  { key: "idle_active", label: "inactive", tone: "red" },
  { key: "idle_building", label: "no building", tone: "amber" },
  { key: "idle_sale", label: "no sales", tone: "amber" },
  { key: "idle_explore", label: "no exploring", tone: "amber" },
];

const RANKS: Array<{ key: keyof ModelSnapshot; label: string }> = [
  { key: "rank_tutorial", label: "Tutorial" },
  { key: "rank_money", label: "Money" },
  { key: "rank_bloom", label: "Bloom" },
  { key: "rank_farm", label: "Farm" },
  { key: "rank_population", label: "Population" },
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function indicatorLight(label: string, on: boolean, tone: string): HTMLElement {
  const light = el("span", `light light-${tone} ${on ? "on" : "off"}`);
  light.title = label;
  light.dataset.on = String(on);
  return light;
}

export function tutorialsText(s: ModelSnapshot): string {
  return `${s.tutorials_completed} / ${TUTORIAL_TOTAL}`;
}

function lightCluster(s: ModelSnapshot): HTMLElement {
  const cluster = el("span", "lights");
  cluster.appendChild(indicatorLight("diagonal strategy", s.diagonal_strategy, "green"));
  for (const { key, label, tone } of IDLE_LIGHTS) {
    cluster.appendChild(indicatorLight(label, Boolean(s[key]), tone));
  }
  return cluster;
}

/** Roster rows stay minimal: name, lights, tutorial count. Detail on click. */
export function renderRosterRow(player: PlayerView, selected: boolean): HTMLElement {
  const row = el("li", `roster-row${selected ? " selected" : ""}${player.priority ? " priority" : ""}`);
  row.dataset.sessionId = player.sessionId;
  row.appendChild(el("span", "roster-name", player.name));
  row.appendChild(lightCluster(player.snapshot));
  row.appendChild(el("span", "roster-tutorials", tutorialsText(player.snapshot)));
  if (player.alerts > 0) {
    row.appendChild(el("span", "alert-badge", String(player.alerts)));
  }
  return row;
}

export function renderBitmap(map: MapSummary): HTMLElement {
  const board = el("div", "map-bitmap");
  board.style.gridTemplateColumns = `repeat(${map.width}, 1fr)`;
  for (const row of map.rows) {
    for (const cell of row) {
      const tile = el("span", `tile tile-${cell}`);
      tile.style.backgroundColor = PALETTE[cell] ?? "#000";
      board.appendChild(tile);
    }
  }
  return board;
}

/** The five achievement ranks, grouped into one bar cluster. */
export function renderPercentileCluster(s: ModelSnapshot): HTMLElement {
  const cluster = el("div", "rank-cluster");
  for (const { key, label } of RANKS) {
    const value = s[key] as number;
    const row = el("div", "rank-row");
    row.appendChild(el("span", "rank-label", label));
    const bar = el("div", "rank-bar");
    const fill = el("div", "rank-fill");
    fill.style.width = `${value}%`;
    bar.appendChild(fill);
    row.appendChild(bar);
    row.appendChild(el("span", "rank-value", String(value)));
    cluster.appendChild(row);
  }
  return cluster;
}

function statBlock(label: string, value: string, className = "", icon = ""): HTMLElement {
  const block = el("div", `stat ${className}`.trim());
  block.appendChild(el("span", "stat-label", label));
  const line = el("span", "stat-line");
  if (icon) line.appendChild(el("span", "stat-icon", icon));
  line.appendChild(el("span", "stat-value", value));
  block.appendChild(line);
  return block;
}

export function renderPlayerPanel(player: PlayerView): HTMLElement {
  const s = player.snapshot;
  const panel = el("section", "player-panel");
  panel.dataset.sessionId = player.sessionId;

  const head = el("header", "panel-head");
  head.appendChild(el("h2", "panel-name", player.name));
  head.appendChild(lightCluster(s));
  panel.appendChild(head);

  const stats = el("div", "panel-stats");
  stats.appendChild(statBlock("Tutorials", tutorialsText(s), "stat-tutorials"));
  stats.appendChild(statBlock("Playing time", s.playing_time, "stat-time"));
  stats.appendChild(statBlock("Population", String(s.population), "stat-population", "\u{1F464}"));
  stats.appendChild(statBlock("Farmer deaths", String(s.farmer_deaths), "stat-deaths", "\u{1F480}"));
  panel.appendChild(stats);

  panel.appendChild(renderPercentileCluster(s));

  const town = el("div", "town-composition");
  town.appendChild(statBlock("Houses", String(s.town_composition.houses), "town-houses", "\u{1F3E0}"));
  town.appendChild(
    statBlock("Corn fields", String(s.town_composition.corn_fields), "town-corn", "\u{1F33D}"),
  );
  town.appendChild(
    statBlock("Dairy farms", String(s.town_composition.dairy_farms), "town-dairy", "\u{1F404}"),
  );
  panel.appendChild(town);

  panel.appendChild(renderBitmap(s.map_summary));
  return panel;
}
