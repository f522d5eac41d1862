// View switching with one guard: the explanation view only makes sense
// once a verification has finished (or a stored verdict is shown).

import type { VerificationJob } from "./types.js";

export type ViewName = "Verify" | "Explanation" | "Discussion" | "StayInformed";

export interface ViewState {
  activeView: ViewName;
  pendingJob: string | null;
  pollIntervalMs: number;
  lastJob: VerificationJob | null;
}

export function initialState(pollIntervalMs = 1000): ViewState {
  return { activeView: "Verify", pendingJob: null, pollIntervalMs, lastJob: null };
}

export function canActivate(state: ViewState, view: ViewName): boolean {
  if (view !== "Explanation") return true;
  return state.lastJob !== null && state.lastJob.state === "done";
}

export function activate(state: ViewState, view: ViewName): ViewState {
  if (!canActivate(state, view)) {
    return state;
  }
  return { ...state, activeView: view };
}

export function jobSettled(state: ViewState, job: VerificationJob): ViewState {
  return {
    ...state,
    pendingJob: null,
    lastJob: job,
    activeView: job.state === "done" ? "Explanation" : state.activeView,
  };
}
