// View state for the teacher dashboard. A poll either replaces the whole
// player list from one complete response or leaves it untouched (stale);
// rendered data never mixes two polls.

import type { ClassDashboard, ModelSnapshot, PlayerPanel } from "./api.js";

export type SortMode = "ALERTS_FIRST" | "ROSTER_ORDER";

export interface PlayerView {
  rosterIndex: number;
  name: string;
  sessionId: string;
  snapshot: ModelSnapshot;
  alerts: number;
  priority: boolean;
}

export interface ViewModel {
  code: string | null;
  players: PlayerView[];
  sortMode: SortMode;
  selected: string | null;
  lastPollAt: number | null;
  pollIntervalS: number;
  stale: boolean;
  error: string | null;
}

export function initialViewModel(pollIntervalS = 5): ViewModel {
  return {
    code: null,
    players: [],
    sortMode: "ROSTER_ORDER",
    selected: null,
    lastPollAt: null,
    pollIntervalS,
    stale: false,
    error: null,
  };
}

/** Lit binary indicators, 0-5: the four idle alerts plus the diagonal light. */
export function alertCount(s: ModelSnapshot): number {
  return [s.idle_active, s.idle_building, s.idle_sale, s.idle_explore, s.diagonal_strategy].filter(
    Boolean,
  ).length;
}

/** The classic intervention case: inactive with zero of six tutorials done. */
export function isPriority(s: ModelSnapshot): boolean {
  return s.idle_active && s.tutorials_completed === 0;
}

function toPlayerView(panel: PlayerPanel, rosterIndex: number): PlayerView {
  return {
    rosterIndex,
    name: panel.display_name,
    sessionId: panel.session_id,
    snapshot: panel.snapshot,
    alerts: alertCount(panel.snapshot),
    priority: isPriority(panel.snapshot),
  };
}

export function applyPoll(vm: ViewModel, dashboard: ClassDashboard, at: number): ViewModel {
  return {
    ...vm,
    code: dashboard.code,
    players: dashboard.players.map(toPlayerView),
    lastPollAt: at,
    stale: false,
    error: null,
  };
}

export function applyPollFailure(vm: ViewModel, message: string): ViewModel {
  return { ...vm, stale: true, error: message };
}

export function setSortMode(vm: ViewModel, mode: SortMode): ViewModel {
  return { ...vm, sortMode: mode };
}

export function selectPlayer(vm: ViewModel, sessionId: string | null): ViewModel {
  return { ...vm, selected: sessionId };
}

/** ALERTS_FIRST is a stable sort: alert count descending, then roster order. */
export function orderedPlayers(vm: ViewModel): PlayerView[] {
  const players = [...vm.players];
  if (vm.sortMode === "ALERTS_FIRST") {
    players.sort((a, b) => b.alerts - a.alerts || a.rosterIndex - b.rosterIndex);
  }
  return players;
}
