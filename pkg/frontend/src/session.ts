import { ResponseRecord, Side, TrialSchedule, TrialSpec } from "./types.js";

export type Phase = "instructions" | "trial" | "inter-trial" | "done";

/**
 * Single-subject session state machine.
 *
 * Trials run in schedule order, never reshuffled.  Exactly one response is
 * stored per trial: a response is only accepted in the "trial" phase, and
 * accepting it moves to "inter-trial" until `beginNextTrial()`.
 */
export class Session {
  phase: Phase = "instructions";
  readonly responses: ResponseRecord[] = [];
  private cursor = 0;

  constructor(readonly schedule: TrialSchedule) {}

  get trialsDone(): number {
    return this.cursor;
  }

  get trialsTotal(): number {
    return this.schedule.trials.length;
  }

  currentTrial(): TrialSpec | null {
    if (this.phase !== "trial") return null;
    return this.schedule.trials[this.cursor] ?? null;
  }

  start(): void {
    if (this.phase !== "instructions") return;
    this.phase = this.schedule.trials.length > 0 ? "trial" : "done";
  }

  /**
   * Record a choice for the current trial.  Returns false (and stores
   * nothing) outside the trial phase, so repeated keypresses are ignored.
   */
  respond(side: Side, timestampMs: number): boolean {
    const trial = this.currentTrial();
    if (trial === null) return false;
    this.responses.push({
      trial_id: trial.trial_id,
      chosen_side: side,
      timestamp_ms: timestampMs,
    });
    this.cursor += 1;
    this.phase = this.cursor >= this.schedule.trials.length ? "done" : "inter-trial";
    return true;
  }

  /** Leave the inter-trial blank; the app calls this from its timer. */
  beginNextTrial(): void {
    if (this.phase !== "inter-trial") return;
    this.phase = "trial";
  }
}
