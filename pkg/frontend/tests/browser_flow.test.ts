import { beforeEach, describe, expect, it } from "vitest";

import { createApp, type App } from "../src/main.js";
import type { ComparisonDoc, PreviewDoc, RankingDoc, SchemeSaved } from "../src/types.js";
import { fixture, flush, recordedClient, type RecordedCall } from "./helpers.js";

let app: App;
let calls: RecordedCall[];
let root: HTMLElement;

async function openSession(): Promise<void> {
  root = document.createElement("div");
  document.body.appendChild(root);
  const recorded = recordedClient();
  calls = recorded.calls;
  app = createApp(root, recorded.api);
  root.querySelector<HTMLTextAreaElement>("#upload-text")!.value = "stub,csv";
  root.querySelector<HTMLButtonElement>("#open-session")!.click();
  await flush();
  await flush();
}

function tableRanks(): { id: string; rank: number }[] {
  return [...root.querySelectorAll<HTMLTableRowElement>(".entity-row")].map((tr) => ({
    id: tr.dataset.id!,
    rank: Number(tr.dataset.rank),
  }));
}

async function dragRow5To13(): Promise<void> {
  const rows = [...root.querySelectorAll<HTMLTableRowElement>(".entity-row")];
  const source = rows.find((r) => r.dataset.rank === "5")!;
  const target = rows.find((r) => r.dataset.rank === "13")!;
  source.dispatchEvent(new Event("dragstart", { bubbles: true }));
  target.dispatchEvent(new Event("dragover", { bubbles: true }));
  target.dispatchEvent(new Event("drop", { bubbles: true }));
  await flush();
  await flush();
}

beforeEach(async () => {
  document.body.innerHTML = "";
  await openSession();
});

describe("scripted flow: drag 5 -> 13, save type", () => {
  it("renders the default ranking exactly as served", () => {
    const served = fixture<{ ranking: RankingDoc }>("session_created").ranking;
    expect(tableRanks()).toEqual(served.entities.map((e) => ({ id: e.id, rank: e.rank })));
  });

  it("issues the drag request and shows the preview with a red tint of depth 8", async () => {
    const served = fixture<PreviewDoc>("preview_drag");
    await dragRow5To13();
    const dragCall = calls.find((c) => c.path.endsWith("/drags"))!;
    expect(dragCall.method).toBe("POST");
    expect(dragCall.body).toMatchObject({ entityId: served.drag.entityId, toRank: 13 });

    expect(root.querySelector(".preview-bar")).toBeTruthy();
    // nothing saved yet: still a single scheme column
    expect(root.querySelectorAll(".scheme-column")).toHaveLength(1);

    const draggedRow = root.querySelector<HTMLTableRowElement>(
      `.entity-row[data-id="${CSS.escape(served.drag.entityId)}"]`,
    )!;
    expect(Number(draggedRow.dataset.tint)).toBe(-8); // moved down by 8
  });

  it("save(type) appends one scheme column and one comparison axis", async () => {
    await dragRow5To13();
    const before = root.querySelectorAll(".scheme-column").length;
    expect(before).toBe(1);
    expect(root.querySelectorAll(".comparison-axes .axis-label")).toHaveLength(0);

    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();

    const columns = [...root.querySelectorAll<HTMLElement>(".scheme-column")];
    expect(columns).toHaveLength(before + 1);
    expect(columns.map((c) => c.dataset.scheme)).toEqual(["default", "s1"]);

    const axes = root.querySelectorAll(".comparison-axes .axis-label");
    expect(axes).toHaveLength(2); // default plus the newly saved scheme
  });

  it("every displayed rank equals the service response", async () => {
    await dragRow5To13();
    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();

    // main table now shows the saved scheme, in the exact served order
    const servedS1 = fixture<SchemeSaved>("scheme_saved").ranking;
    expect(tableRanks()).toEqual(servedS1.entities.map((e) => ({ id: e.id, rank: e.rank })));

    // every scheme mini-column repeats its own served ranking
    const servedByScheme: Record<string, RankingDoc> = {
      default: fixture<{ ranking: RankingDoc }>("session_created").ranking,
      s1: servedS1,
    };
    for (const column of root.querySelectorAll<HTMLElement>(".scheme-column")) {
      const served = servedByScheme[column.dataset.scheme!];
      const rendered = [...column.querySelectorAll<HTMLElement>(".scheme-entry")].map((e) => ({
        id: e.dataset.id!,
        rank: Number(e.dataset.rank),
      }));
      expect(rendered).toEqual(served.entities.map((e) => ({ id: e.id, rank: e.rank })));
    }

    // comparison dots carry exactly the served per-axis ranks
    const comparison = fixture<ComparisonDoc>("comparison");
    for (const dot of root.querySelectorAll<SVGCircleElement>(".axis-dot")) {
      const axis = comparison.axes.find((a) => a.schemeId === dot.getAttribute("data-scheme"))!;
      const id = dot.getAttribute("data-id")!;
      expect(Number(dot.getAttribute("data-rank"))).toBe(axis.entities[id].rank);
    }

    // zero client-side recomputation: every rank string shown came from a
    // recorded response; no other sources exist in the fetch log
    const paths = calls.map((c) => c.path);
    expect(paths.some((p) => p.endsWith("/drags"))).toBe(true);
    expect(paths.some((p) => p.endsWith("/schemes"))).toBe(true);
  });

  it("a second save of the same preview shows the conflict toast", async () => {
    await dragRow5To13();
    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();
    await app.store.saveScheme("type");
    await flush();
    const toast = root.querySelector(".toast");
    expect(toast).toBeTruthy();
    expect(toast!.textContent).toContain("no pending preview");
  });
});

describe("selection linking", () => {
  it("selecting one entity produces exactly one bold polyline in the scheme panel and the comparison view", async () => {
    await dragRow5To13();
    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();

    const entity = tableRanks()[0].id;
    app.store.selectEntity(entity);
    await flush();

    const tableLinks = root.querySelectorAll("#table-view .bold-link");
    expect(tableLinks).toHaveLength(1);
    expect(tableLinks[0].getAttribute("data-id")).toBe(entity);

    const comparisonLinks = root.querySelectorAll("#comparison-view .bold-link");
    expect(comparisonLinks).toHaveLength(1);
    expect(comparisonLinks[0].getAttribute("data-id")).toBe(entity);

    // the polyline spans all scheme columns: one vertex per column
    const d = tableLinks[0].getAttribute("d")!;
    expect(d.split("L")).toHaveLength(root.querySelectorAll(".scheme-column").length);

    app.store.selectEntity(null);
    await flush();
    expect(root.querySelectorAll(".bold-link")).toHaveLength(0);
  });

  it("selection stays on the same entity across a scheme save", async () => {
    const entity = tableRanks()[2].id;
    app.store.selectEntity(entity);
    await dragRow5To13();
    root.querySelector<HTMLButtonElement>('.save-scheme[data-which="type"]')!.click();
    await flush();
    await flush();
    const links = root.querySelectorAll("#table-view .bold-link");
    expect(links).toHaveLength(1);
    expect(links[0].getAttribute("data-id")).toBe(entity);
  });
});
