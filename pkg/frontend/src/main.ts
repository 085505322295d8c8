// Teacher dashboard page: class setup, live roster, per-player detail.

import { createClass } from "./api.js";
import { startPollLoop, type PollHandle } from "./poll.js";
import { renderPlayerPanel, renderRosterRow } from "./render.js";
import {
  orderedPlayers,
  selectPlayer,
  setSortMode,
  type SortMode,
  type ViewModel,
} from "./viewmodel.js";

const POLL_INTERVAL_S = 5;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

let vm: ViewModel | null = null;
let poll: PollHandle | null = null;

function render(): void {
  if (!vm) return;
  const staleBadge = byId<HTMLElement>("stale-badge");
  staleBadge.hidden = !vm.stale;
  byId<HTMLElement>("error-banner").textContent = vm.error ?? "";

  const roster = byId<HTMLUListElement>("roster");
  roster.replaceChildren();
  for (const player of orderedPlayers(vm)) {
    const row = renderRosterRow(player, player.sessionId === vm.selected);
    row.addEventListener("click", () => {
      vm = selectPlayer(vm!, player.sessionId);
      render();
    });
    roster.appendChild(row);
  }
  byId<HTMLElement>("roster-count").textContent = `${vm.players.length} players`;

  const detail = byId<HTMLElement>("detail");
  detail.replaceChildren();
  const selected = vm.players.find((p) => p.sessionId === vm!.selected);
  if (selected) {
    detail.appendChild(renderPlayerPanel(selected));
  } else {
    detail.appendChild(Object.assign(document.createElement("p"), {
      className: "hint",
      textContent: "Select a player to see all models.",
    }));
  }
}

function connect(code: string): void {
  poll?.stop();
  byId<HTMLElement>("setup").hidden = true;
  byId<HTMLElement>("board").hidden = false;
  byId<HTMLElement>("class-code").textContent = code;
  const portalUrl = `${window.location.origin}/portal.html?code=${encodeURIComponent(code)}`;
  const link = byId<HTMLAnchorElement>("portal-link");
  link.href = portalUrl;
  link.textContent = portalUrl;
  poll = startPollLoop(code, POLL_INTERVAL_S, (next) => {
    vm = { ...next, sortMode: vm?.sortMode ?? next.sortMode, selected: vm?.selected ?? null };
    render();
  });
}

function init(): void {
  byId<HTMLButtonElement>("create-class").addEventListener("click", async () => {
    const button = byId<HTMLButtonElement>("create-class");
    button.disabled = true;
    try {
      connect(await createClass());
    } catch (err) {
      byId<HTMLElement>("setup-error").textContent =
        `Could not reach the service (${err instanceof Error ? err.message : err}); try again.`;
    } finally {
      button.disabled = false;
    }
  });

  byId<HTMLFormElement>("join-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    const code = byId<HTMLInputElement>("join-code").value.trim().toUpperCase();
    if (code) connect(code);
  });

  byId<HTMLSelectElement>("sort-mode").addEventListener("change", (ev) => {
    if (!vm) return;
    vm = setSortMode(vm, (ev.target as HTMLSelectElement).value as SortMode);
    render();
  });

  const params = new URLSearchParams(window.location.search);
  const code = params.get("code");
  if (code) connect(code);
}

document.addEventListener("DOMContentLoaded", init);
