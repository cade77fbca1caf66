import { STANDARD_DISTANCE, TrialSpec, oppositeSide } from "./types.js";

/**
 * Stimulus geometry in *device pixels*.  The threshold under measurement is
 * defined in pixels, so every offset must land exactly on the device pixel
 * grid: no fractional positions, no anti-aliasing, no CSS scaling.
 */
export interface StimulusLayout {
  referenceX: number;
  constantX: number;
  comparisonX: number;
  lineTopY: number;
  lineLength: number;
}

/** Raised when the display cannot present the stimulus faithfully. */
export class DisplayError extends Error {}

export const DEFAULT_LINE_LENGTH = 200;
export const HORIZONTAL_MARGIN = 40;

const MAX_OFFSET = 15;

/**
 * Page zoom and OS scaling make the device-pixel ratio fractional, which
 * would put our 1-px lines between physical pixels.  Refuse to run then.
 */
export function assertIntegerDevicePixelRatio(dpr: number): void {
  if (!Number.isInteger(dpr) || dpr < 1) {
    throw new DisplayError(
      `device pixel ratio is ${dpr}; reset page zoom so it is a whole number`,
    );
  }
}

export function computeLayout(
  spec: TrialSpec,
  surfaceWidth: number,
  surfaceHeight: number,
  lineLength: number = DEFAULT_LINE_LENGTH,
): StimulusLayout {
  const needWidth = 2 * (MAX_OFFSET + HORIZONTAL_MARGIN);
  if (surfaceWidth < needWidth || surfaceHeight < lineLength + 16) {
    throw new DisplayError(
      `viewport too small: need at least ${needWidth}x${lineLength + 16} device px, ` +
        `got ${surfaceWidth}x${surfaceHeight}`,
    );
  }
  const referenceX = Math.floor(surfaceWidth / 2);
  const sign = (side: "left" | "right") => (side === "left" ? -1 : +1);
  const comparisonX =
    referenceX + sign(spec.comparison_side) * spec.comparison_distance;
  const constantX =
    referenceX + sign(oppositeSide(spec.comparison_side)) * STANDARD_DISTANCE;
  return {
    referenceX,
    constantX,
    comparisonX,
    lineTopY: Math.floor((surfaceHeight - lineLength) / 2),
    lineLength,
  };
}
