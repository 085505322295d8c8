// Polling loop. Requests never overlap and never block the page; a failed
// poll keeps the previous data on screen behind a staleness badge.

import { fetchDashboard, type ClassDashboard } from "./api.js";
import { applyPoll, applyPollFailure, initialViewModel, type ViewModel } from "./viewmodel.js";

export interface PollDeps {
  fetcher: (code: string) => Promise<ClassDashboard>;
  now: () => number;
  schedule: (fn: () => void, ms: number) => unknown;
  cancel: (id: unknown) => void;
}

export interface PollHandle {
  stop(): void;
  tick(): Promise<void>;
}

const defaultDeps: PollDeps = {
  fetcher: (code) => fetchDashboard(code),
  now: () => Date.now(),
  schedule: (fn, ms) => setInterval(fn, ms),
  cancel: (id) => clearInterval(id as ReturnType<typeof setInterval>),
};

export function startPollLoop(
  code: string,
  intervalS: number,
  onUpdate: (vm: ViewModel) => void,
  deps: Partial<PollDeps> = {},
): PollHandle {
  const { fetcher, now, schedule, cancel } = { ...defaultDeps, ...deps };
  let vm = initialViewModel(intervalS);
  let inFlight = false;

  async function tick(): Promise<void> {
    if (inFlight) return; // a slow poll is never doubled up
    inFlight = true;
    try {
      const dashboard = await fetcher(code);
      vm = applyPoll(vm, dashboard, now());
    } catch (err) {
      vm = applyPollFailure(vm, err instanceof Error ? err.message : String(err));
    } finally {
      inFlight = false;
    }
    onUpdate(vm);
  }

  const timer = schedule(() => void tick(), intervalS * 1000);
  void tick(); // first paint without waiting a full interval
  return {
    stop: () => cancel(timer),
    tick,
  };
}
