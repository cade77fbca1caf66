export type Side = "left" | "right";

export interface TrialSpec {
  trial_id: number;
  comparison_distance: number;
  comparison_side: Side;
}

export interface ScheduleMeta {
  standard: number;
  trials_per_condition: number;
  seed: number;
}

export interface TrialSchedule {
  meta: ScheduleMeta;
  trials: TrialSpec[];
}

export interface ResponseRecord {
  trial_id: number;
  chosen_side: Side;
  timestamp_ms: number;
}

export const STANDARD_DISTANCE = 10;

/** Comparison distances the design allows: 5..15 without the standard. */
export const COMPARISON_DISTANCES = [5, 6, 7, 8, 9, 11, 12, 13, 14, 15];

export function oppositeSide(side: Side): Side {
  return side === "left" ? "right" : "left";
}
