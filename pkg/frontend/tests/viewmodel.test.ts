import { describe, expect, it } from "vitest";

import { adjustmentTints } from "../src/state.js";
import { ratingBands } from "../src/comparison.js";
import { contributionBar } from "../src/table.js";
import type { PreviewDoc } from "../src/types.js";
import { fixture } from "./helpers.js";

function previewWith(entityId: string, fromRank: number, toRank: number, ids: string[]): PreviewDoc {
  return {
    drag: { entityId, fromRank, toRank, baseRanking: ids },
    baseScheme: "default",
    candidates: {},
    errors: {},
  };
}

describe("adjustmentTints", () => {
  const ids = ["a", "b", "c", "d", "e"];

  it("dragged row tint magnitude equals |fromRank - toRank|", () => {
    const tints = adjustmentTints(previewWith("a", 1, 4, ids));
    expect(tints["a"]).toBe(-3); // moved down three places
  });

  it("displaced neighbors shift by one", () => {
    const tints = adjustmentTints(previewWith("a", 1, 4, ids));
    expect(tints["b"]).toBe(1);
    expect(tints["c"]).toBe(1);
    expect(tints["d"]).toBe(1);
    expect(tints["e"]).toBe(0);
  });

  it("a no-op drag tints nothing", () => {
    const tints = adjustmentTints(previewWith("c", 3, 3, ids));
    expect(Object.values(tints).every((t) => t === 0)).toBe(true);
  });

  it("matches the recorded preview fixture", () => {
    const preview = fixture<PreviewDoc>("preview_drag");
    const tints = adjustmentTints(preview);
    expect(tints[preview.drag.entityId]).toBe(preview.drag.fromRank - preview.drag.toRank);
  });
});

describe("ratingBands", () => {
  it("groups contiguous ranks sharing a rating", () => {
    const bands = ratingBands({
      a: { rank: 1, rating: 1 },
      b: { rank: 2, rating: 1 },
      c: { rank: 3, rating: 2 },
      d: { rank: 4, rating: 2 },
      e: { rank: 5, rating: 5 },
    });
    expect(bands).toEqual([
      { rating: 1, fromRank: 1, toRank: 2 },
      { rating: 2, fromRank: 3, toRank: 4 },
      { rating: 5, fromRank: 5, toRank: 5 },
    ]);
  });

  it("band ratings are non-decreasing down the axis", () => {
    const comparison = fixture<import("../src/types.js").ComparisonDoc>("comparison");
    for (const axis of comparison.axes) {
      const ratings = ratingBands(axis.entities).map((b) => b.rating);
      expect(ratings).toEqual([...ratings].sort((x, y) => x - y));
    }
  });
});

describe("contributionBar", () => {
  it("draws positive bars right of the midline and negative bars left", () => {
    const svg = contributionBar({ up: 0.5, down: -0.25 }, ["up", "down"], 0.5, 160, 14);
    const rects = [...svg.querySelectorAll("rect")];
    expect(rects).toHaveLength(2);
    const up = rects.find((r) => r.getAttribute("data-indicator") === "up")!;
    const down = rects.find((r) => r.getAttribute("data-indicator") === "down")!;
    expect(Number(up.getAttribute("x"))).toBeGreaterThanOrEqual(80);
    expect(Number(down.getAttribute("x")) + Number(down.getAttribute("width"))).toBeLessThanOrEqual(80);
    expect(Number(up.getAttribute("width"))).toBeCloseTo(80);
    expect(Number(down.getAttribute("width"))).toBeCloseTo(40);
  });

  it("bar widths are proportional to |contribution|", () => {
    const svg = contributionBar({ a: 0.2, b: 0.4 }, ["a", "b"], 0.4, 160, 14);
    const [a, b] = [...svg.querySelectorAll("rect")];
    expect(Number(b.getAttribute("width"))).toBeCloseTo(2 * Number(a.getAttribute("width")));
  });
});
