import { Store, adjustmentTints } from "./state.js";
import type { RankingRow } from "./types.js";

/** Stacked signed bar strip: positive contributions grow rightward from the
 *  midline, negative leftward. Pure presentation scaling. */
export function contributionBar(
  contributions: Record<string, number>,
  names: string[],
  scale: number,
  width = 160,
  height = 14,
): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "contrib-bar");
  const mid = width / 2;
  let posX = mid;
  let negX = mid;
  names.forEach((name, j) => {
    const value = contributions[name] ?? 0;
    const w = scale > 0 ? (Math.abs(value) / scale) * (width / 2) : 0;
    const rect = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    if (value >= 0) {
      rect.setAttribute("x", String(posX));
      posX += w;
    } else {
      negX -= w;
      rect.setAttribute("x", String(negX));
    }
    rect.setAttribute("y", "1");
    rect.setAttribute("width", String(w));
    rect.setAttribute("height", String(height - 2));
    rect.setAttribute("class", `indicator-${j} ${value >= 0 ? "positive" : "negative"}`);
    rect.setAttribute("data-indicator", name);
    svg.appendChild(rect);
  });
  const axis = document.createElementNS("http://www.w3.org/2000/svg", "line");
  axis.setAttribute("x1", String(mid));
  axis.setAttribute("x2", String(mid));
  axis.setAttribute("y1", "0");
  axis.setAttribute("y2", String(height));
  axis.setAttribute("class", "midline");
  svg.appendChild(axis);
  return svg;
}

function maxAbsContribution(rows: RankingRow[], names: string[]): number {
  let peak = 0;
  for (const row of rows) {
    for (const name of names) {
      peak = Math.max(peak, Math.abs(row.contributions[name] ?? 0));
    }
  }
  return peak;
}

const ENTRY_HEIGHT = 16;
const COLUMN_WIDTH = 120;

/** Ranking table (selected scheme order) plus one mini-column per saved
 *  scheme, each stacked in its own rank order, with a bold polyline linking
 *  the selected entity across columns. */
export class TableView {
  private dragFrom: number | null = null;

  constructor(private root: HTMLElement, private store: Store) {
    store.subscribe(() => this.render());
  }

  render(): void {
    const { store } = this;
    this.root.innerHTML = "";
    const doc = store.ranking();
    if (!doc || !store.summary) return;
    const names = store.summary.indicators.map((i) => i.name);
    const tints = store.preview ? adjustmentTints(store.preview) : {};
    const maxTint = Math.max(1, ...Object.values(tints).map(Math.abs));
    const scale = maxAbsContribution(doc.entities, names);

    const wrap = document.createElement("div");
    wrap.className = "table-wrap";

    const table = document.createElement("table");
    table.className = "ranking-table";
    table.setAttribute("data-scheme", doc.schemeId);
    const head = table.createTHead().insertRow();
    for (const title of ["rank", "bank", "type", ...names, "contributions", "rating"]) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }

    const body = table.createTBody();
    doc.entities.forEach((row, index) => {
      const tr = body.insertRow();
      tr.className = "entity-row";
      tr.draggable = true;
      tr.dataset.id = row.id;
      tr.dataset.rank = String(row.rank);
      if (row.id === store.selectedEntity) tr.classList.add("selected");
      const tint = tints[row.id] ?? 0;
      if (tint !== 0) {
        tr.dataset.tint = String(tint);
        const depth = (0.15 + 0.85 * (Math.abs(tint) / maxTint)) * 0.45;
        tr.style.backgroundColor =
          tint > 0 ? `rgba(46, 140, 70, ${depth})` : `rgba(200, 60, 50, ${depth})`;
      }

      tr.insertCell().textContent = String(row.rank);
      const nameCell = tr.insertCell();
      nameCell.textContent = row.name;
      nameCell.className = "entity-name";
      tr.insertCell().textContent = row.type;
      for (const n of names) {
        const td = tr.insertCell();
        td.textContent = formatValue(row.raw[n]);
        td.className = "raw-cell";
      }
      tr.insertCell().appendChild(contributionBar(row.contributions, names, scale));
      const ratingCell = tr.insertCell();
      ratingCell.textContent = String(row.rating);
      ratingCell.className = `rating rating-${row.rating}`;

      tr.addEventListener("click", () => store.selectEntity(row.id));
      tr.addEventListener("dragstart", () => (this.dragFrom = index));
      tr.addEventListener("dragover", (ev) => ev.preventDefault());
      tr.addEventListener("drop", () => {
        if (this.dragFrom !== null && this.dragFrom !== index) {
          const dragged = doc.entities[this.dragFrom].id;
          void store.dragRow(dragged, index + 1);
        }
        this.dragFrom = null;
      });
    });
    wrap.appendChild(table);
    wrap.appendChild(this.schemePanel(names));
    this.root.appendChild(wrap);
  }

  /** One mini-column per scheme, entities stacked in that scheme's order. */
  private schemePanel(names: string[]): HTMLElement {
    const { store } = this;
    const panel = document.createElement("div");
    panel.className = "scheme-panel";
    const schemes = store.summary!.schemes;
    const columns: { schemeId: string; order: string[] }[] = [];

    schemes.forEach((scheme, c) => {
      const doc = store.rankings.get(scheme.id);
      if (!doc) return;
      const col = document.createElement("div");
      col.className = "scheme-column";
      col.dataset.scheme = scheme.id;
      col.style.left = `${c * COLUMN_WIDTH}px`;
      const title = document.createElement("div");
      title.className = "scheme-title";
      title.textContent = doc.label;
      title.addEventListener("click", () => store.selectScheme(scheme.id));
      col.appendChild(title);
      const scale = maxAbsContribution(doc.entities, names);
      for (const row of doc.entities) {
        const entry = document.createElement("div");
        entry.className = "scheme-entry";
        entry.dataset.id = row.id;
        entry.dataset.rank = String(row.rank);
        if (row.id === store.selectedEntity) entry.classList.add("selected");
        entry.appendChild(contributionBar(row.contributions, names, scale, 100, ENTRY_HEIGHT - 4));
        entry.addEventListener("click", () => store.selectEntity(row.id));
        col.appendChild(entry);
      }
      panel.appendChild(col);
      columns.push({ schemeId: scheme.id, order: doc.entities.map((e) => e.id) });
    });

    if (store.selectedEntity) {
      panel.appendChild(selectionPolyline(columns, store.selectedEntity));
    }
    return panel;
  }
}

/** The bold polyline through the selected entity's slot in every column. */
export function selectionPolyline(
  columns: { schemeId: string; order: string[] }[],
  entityId: string,
): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "scheme-links");
  svg.setAttribute("width", String(columns.length * COLUMN_WIDTH));
  svg.setAttribute(
    "height",
    String(Math.max(...columns.map((c) => c.order.length), 1) * ENTRY_HEIGHT + 24),
  );
  const points = columns
    .map((col, c) => {
      const i = col.order.indexOf(entityId);
      if (i < 0) return null;
      return `${c * COLUMN_WIDTH + COLUMN_WIDTH / 2},${24 + i * ENTRY_HEIGHT + ENTRY_HEIGHT / 2}`;
    })
    .filter((p): p is string => p !== null);
  const path = document.createElementNS("http://www.w3.org/2000/svg", "path");
  path.setAttribute("d", "M" + points.join(" L"));
  path.setAttribute("class", "bold-link");
  path.setAttribute("data-id", entityId);
  svg.appendChild(path);
  return svg;
}

function formatValue(v: number): string {
  if (!isFinite(v)) return "";
  return Math.abs(v) >= 1000 ? v.toFixed(0) : v.toFixed(2);
}
