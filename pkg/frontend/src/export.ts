import { ResponseRecord, TrialSchedule } from "./types.js";

export interface DisplayMeta {
  device_pixel_ratio: number;
  line_length_px: number;
}

/**
 * Serialize a session as JSONL: a metadata line first (the analyzer skips
 * it), then one response object per line in presentation order.  A session
 * with no responses exports as an empty file.
 */
export function exportJsonl(
  schedule: TrialSchedule,
  responses: ResponseRecord[],
  display: DisplayMeta,
): string {
  if (responses.length === 0) return "";
  const lines = [
    JSON.stringify({
      meta: { schedule_seed: schedule.meta.seed, display },
    }),
  ];
  for (const r of responses) {
    lines.push(
      JSON.stringify({
        trial_id: r.trial_id,
        chosen_side: r.chosen_side,
        timestamp_ms: r.timestamp_ms,
      }),
    );
  }
  return lines.join("\n") + "\n";
}
