import { beforeEach, describe, expect, it } from "vitest";

import { createApp, type App } from "../src/main.js";
import {
  idsInPolygon,
  linkCurves,
  pointInPolygon,
  viewTransform,
} from "../src/projection.js";
import type { ProjectionDoc } from "../src/types.js";
import { fixture, flush, recordedClient } from "./helpers.js";

describe("pointInPolygon", () => {
  const square = [
    { x: 0, y: 0 },
    { x: 10, y: 0 },
    { x: 10, y: 10 },
    { x: 0, y: 10 },
  ];

  it("classifies inside and outside points", () => {
    expect(pointInPolygon({ x: 5, y: 5 }, square)).toBe(true);
    expect(pointInPolygon({ x: 15, y: 5 }, square)).toBe(false);
    expect(pointInPolygon({ x: -1, y: -1 }, square)).toBe(false);
  });

  it("works for non-convex polygons", () => {
    const arrow = [
      { x: 0, y: 0 },
      { x: 10, y: 0 },
      { x: 5, y: 4 },
      { x: 10, y: 10 },
      { x: 0, y: 10 },
    ];
    expect(pointInPolygon({ x: 2, y: 5 }, arrow)).toBe(true);
    expect(pointInPolygon({ x: 9, y: 5 }, arrow)).toBe(false);
  });
});

describe("idsInPolygon", () => {
  const doc = fixture<ProjectionDoc>("projection_default");

  it("selects exactly the points inside the polygon", () => {
    const target = doc.points[0];
    const eps = 1e-6;
    const polygon = [
      { x: target.x - eps, y: target.y - eps },
      { x: target.x + eps, y: target.y - eps },
      { x: target.x + eps, y: target.y + eps },
      { x: target.x - eps, y: target.y + eps },
    ];
    const hits = idsInPolygon(doc, polygon);
    expect(hits).toContain(target.id);
  });

  it("an empty or degenerate lasso selects nothing", () => {
    expect(idsInPolygon(doc, [])).toEqual([]);
    expect(idsInPolygon(doc, [{ x: 0, y: 0 }, { x: 1, y: 1 }])).toEqual([]);
  });
});

describe("projection view", () => {
  let app: App;
  let root: HTMLElement;

  beforeEach(async () => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.appendChild(root);
    app = createApp(root, recordedClient().api);
    root.querySelector<HTMLTextAreaElement>("#upload-text")!.value = "stub";
    root.querySelector<HTMLButtonElement>("#open-session")!.click();
    await flush();
    await flush();
    // drag + save so two schemes (and two subviews) exist
    const rows = [...root.querySelectorAll<HTMLTableRowElement>(".entity-row")];
    rows.find((r) => r.dataset.rank === "5")!.dispatchEvent(new Event("dragstart", { bubbles: true }));
    rows.find((r) => r.dataset.rank === "13")!.dispatchEvent(new Event("drop", { bubbles: true }));
    await flush();
    await flush();
    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();
  });

  it("renders one subview per scheme with one dot per entity", () => {
    const subviews = root.querySelectorAll(".projection-subview");
    expect(subviews).toHaveLength(2);
    for (const sub of subviews) {
      expect(sub.querySelectorAll(".proj-dot")).toHaveLength(30);
    }
  });

  it("a lasso containing k points draws k connecting curves", async () => {
    const doc = fixture<ProjectionDoc>("projection_default");
    const xs = doc.points.map((p) => p.x);
    const ys = doc.points.map((p) => p.y);
    const midX = (Math.min(...xs) + Math.max(...xs)) / 2;
    const polygon = [
      { x: Math.min(...xs) - 1, y: Math.min(...ys) - 1 },
      { x: midX, y: Math.min(...ys) - 1 },
      { x: midX, y: Math.max(...ys) + 1 },
      { x: Math.min(...xs) - 1, y: Math.max(...ys) + 1 },
    ];
    const expected = idsInPolygon(doc, polygon);
    expect(expected.length).toBeGreaterThan(0);

    const ids = app.projection.applyLasso("default", polygon);
    await flush();
    expect(ids).toEqual(expected);
    const curves = root.querySelectorAll(".projection-links .link-curve");
    expect(curves).toHaveLength(expected.length);
    expect(root.querySelectorAll(".proj-dot.lassoed")).toHaveLength(2 * expected.length);
  });

  it("an empty lasso is a no-op", async () => {
    const ids = app.projection.applyLasso("default", []);
    await flush();
    expect(ids).toEqual([]);
    expect(root.querySelectorAll(".link-curve")).toHaveLength(0);
  });
});

describe("linkCurves", () => {
  it("threads each selected entity through every subview", () => {
    const placed = [
      {
        schemeId: "a",
        origin: { x: 0, y: 0 },
        positions: new Map([
          ["e1", { x: 10, y: 10 }],
          ["e2", { x: 20, y: 30 }],
        ]),
      },
      {
        schemeId: "b",
        origin: { x: 240, y: 0 },
        positions: new Map([
          ["e1", { x: 15, y: 12 }],
          ["e2", { x: 25, y: 28 }],
        ]),
      },
    ];
    const svg = linkCurves(placed, ["e1", "e2"], 220);
    expect(svg.querySelectorAll(".link-curve")).toHaveLength(2);
  });
});

describe("view transform", () => {
  it("maps the coordinate box into the padded view square", () => {
    const doc = fixture<ProjectionDoc>("projection_default");
    const tf = viewTransform(doc);
    for (const p of doc.points) {
      const q = tf(p);
      expect(q.x).toBeGreaterThanOrEqual(17.9);
      expect(q.x).toBeLessThanOrEqual(202.1);
      expect(q.y).toBeGreaterThanOrEqual(17.9);
      expect(q.y).toBeLessThanOrEqual(202.1);
    }
  });
});
