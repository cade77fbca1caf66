import { describe, expect, it } from "vitest";

import {
  DisplayError,
  assertIntegerDevicePixelRatio,
  computeLayout,
} from "../src/layout.js";
import { TrialSpec } from "../src/types.js";

const trial = (distance: number, side: "left" | "right"): TrialSpec => ({
  trial_id: 0,
  comparison_distance: distance,
  comparison_side: side,
});

describe("computeLayout", () => {
  it("puts the comparison at +9 and the constant at -10 for (9, right)", () => {
    const l = computeLayout(trial(9, "right"), 480, 280);
    expect(l.referenceX).toBe(240);
    expect(l.comparisonX).toBe(249);
    expect(l.constantX).toBe(230);
  });

  it("puts the comparison at -5 and the constant at +10 for (5, left)", () => {
    const l = computeLayout(trial(5, "left"), 480, 280);
    expect(l.comparisonX).toBe(235);
    expect(l.constantX).toBe(250);
  });

  it("separates the flankers by 25 px at distance 15", () => {
    for (const side of ["left", "right"] as const) {
      const l = computeLayout(trial(15, side), 480, 280);
      expect(Math.abs(l.comparisonX - l.constantX)).toBe(25);
      expect(l.comparisonX).not.toBe(l.constantX);
    }
  });

  it("positions are integers on any surface size", () => {
    const l = computeLayout(trial(7, "left"), 481, 301);
    for (const v of [l.referenceX, l.constantX, l.comparisonX, l.lineTopY]) {
      expect(Number.isInteger(v)).toBe(true);
    }
  });

  it("rejects viewports too small for the stimulus", () => {
    expect(() => computeLayout(trial(9, "right"), 80, 280)).toThrow(DisplayError);
    expect(() => computeLayout(trial(9, "right"), 480, 100)).toThrow(DisplayError);
  });
});

describe("assertIntegerDevicePixelRatio", () => {
  it("accepts whole ratios", () => {
    assertIntegerDevicePixelRatio(1);
    assertIntegerDevicePixelRatio(2);
  });

  it("rejects fractional ratios from page zoom", () => {
    expect(() => assertIntegerDevicePixelRatio(1.25)).toThrow(DisplayError);
    expect(() => assertIntegerDevicePixelRatio(0.8)).toThrow(DisplayError);
  });
});
