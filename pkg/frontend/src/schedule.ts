import {
  COMPARISON_DISTANCES,
  STANDARD_DISTANCE,
  Side,
  TrialSchedule,
  TrialSpec,
} from "./types.js";

/** Parse and validate a schedule JSON document (the analyzer's format). */
export function parseSchedule(text: string): TrialSchedule {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (e) {
    throw new Error(`schedule is not valid JSON: ${(e as Error).message}`);
  }
  const obj = doc as Record<string, unknown>;
  const meta = obj["meta"] as Record<string, unknown> | undefined;
  const rawTrials = obj["trials"];
  if (!meta || !Array.isArray(rawTrials)) {
    throw new Error("schedule must have 'meta' and 'trials'");
  }
  if (meta["standard"] !== STANDARD_DISTANCE) {
    throw new Error(`schedule standard must be ${STANDARD_DISTANCE}`);
  }
  const seen = new Set<number>();
  const trials: TrialSpec[] = rawTrials.map((raw, i) => {
    const t = raw as Record<string, unknown>;
    const id = t["trial_id"];
    const distance = t["comparison_distance"];
    const side = t["comparison_side"];
    if (typeof id !== "number" || !Number.isInteger(id)) {
      throw new Error(`trial ${i}: bad trial_id`);
    }
    if (seen.has(id)) {
      throw new Error(`trial ${i}: duplicate trial_id ${id}`);
    }
    seen.add(id);
    if (
      typeof distance !== "number" ||
      !COMPARISON_DISTANCES.includes(distance)
    ) {
      throw new Error(`trial ${i}: bad comparison_distance ${String(distance)}`);
    }
    if (side !== "left" && side !== "right") {
      throw new Error(`trial ${i}: bad comparison_side ${String(side)}`);
    }
    return {
      trial_id: id,
      comparison_distance: distance,
      comparison_side: side as Side,
    };
  });
  return {
    meta: {
      standard: STANDARD_DISTANCE,
      trials_per_condition: Number(meta["trials_per_condition"] ?? 0),
      seed: Number(meta["seed"] ?? 0),
    },
    trials,
  };
}
