import { Store } from "./state.js";
import type { ComparisonDoc, SchemeDoc } from "./types.js";

const AXIS_GAP = 150;
const ROW_STEP = 16;
const MARGIN = { top: 36, left: 60 };

export const RATING_COLORS = ["#2e7d32", "#8bc34a", "#fbc02d", "#f57c00", "#c62828"];

const NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(NS, tag);
}

function axisX(i: number): number {
  return MARGIN.left + i * AXIS_GAP;
}

function rankY(rank: number): number {
  return MARGIN.top + (rank - 1) * ROW_STEP;
}

/** Contiguous rank runs sharing a rating, for the background bands. */
export function ratingBands(
  entities: Record<string, { rank: number; rating: number }>,
): { rating: number; fromRank: number; toRank: number }[] {
  const byRank = Object.values(entities).sort((a, b) => a.rank - b.rank);
  const bands: { rating: number; fromRank: number; toRank: number }[] = [];
  for (const e of byRank) {
    const last = bands[bands.length - 1];
    if (last && last.rating === e.rating) {
      last.toRank = e.rank;
    } else {
      bands.push({ rating: e.rating, fromRank: e.rank, toRank: e.rank });
    }
  }
  return bands;
}

/** Parallel-axes view: one axis per scheme, one polyline group per entity,
 *  rating bands behind each axis, sample-role dot coloring, and paired box
 *  plots per indicator with the weight curves overlaid. */
export class ComparisonView {
  constructor(private root: HTMLElement, private store: Store) {
    store.subscribe(() => this.render());
  }

  render(): void {
    this.root.innerHTML = "";
    const doc = this.store.comparison;
    if (!doc) {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = "Save a weight scheme to compare rankings.";
      this.root.appendChild(hint);
      return;
    }
    this.root.appendChild(this.axesSvg(doc));
    this.root.appendChild(this.boxesSvg(doc));
  }

  private axesSvg(doc: ComparisonDoc): SVGSVGElement {
    const ids = Object.keys(doc.axes[0].entities);
    const n = ids.length;
    const svg = svgEl("svg");
    svg.setAttribute("class", "comparison-axes");
    svg.setAttribute("width", String(MARGIN.left + AXIS_GAP * doc.axes.length));
    svg.setAttribute("height", String(MARGIN.top + ROW_STEP * n + 20));

    doc.axes.forEach((axis, i) => {
      for (const band of ratingBands(axis.entities)) {
        const rect = svgEl("rect");
        rect.setAttribute("x", String(axisX(i) - 28));
        rect.setAttribute("y", String(rankY(band.fromRank) - ROW_STEP / 2));
        rect.setAttribute("width", "56");
        rect.setAttribute("height", String((band.toRank - band.fromRank + 1) * ROW_STEP));
        rect.setAttribute("class", `rating-band rating-${band.rating}`);
        rect.setAttribute("fill", RATING_COLORS[band.rating - 1] ?? "#999");
        rect.setAttribute("opacity", "0.18");
        svg.appendChild(rect);
      }
      const label = svgEl("text");
      label.setAttribute("x", String(axisX(i)));
      label.setAttribute("y", "16");
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("class", "axis-label");
      label.textContent = axis.label;
      svg.appendChild(label);
    });

    for (const id of ids) {
      const group = svgEl("g");
      group.setAttribute("class", "entity-line");
      group.setAttribute("data-id", id);
      doc.rankDeltas.forEach((segment, i) => {
        const from = doc.axes[i].entities[id].rank;
        const to = doc.axes[i + 1].entities[id].rank;
        const line = svgEl("line");
        line.setAttribute("x1", String(axisX(i)));
        line.setAttribute("y1", String(rankY(from)));
        line.setAttribute("x2", String(axisX(i + 1)));
        line.setAttribute("y2", String(rankY(to)));
        const delta = segment.deltas[id];
        line.setAttribute(
          "stroke",
          delta > 0 ? "#3b6fd4" : delta < 0 ? "#c0392b" : "#b5b5b5",
        );
        line.setAttribute("class", delta > 0 ? "up" : delta < 0 ? "down" : "flat");
        group.appendChild(line);
      });
      group.addEventListener("click", () => this.store.selectEntity(id));
      svg.appendChild(group);
    }

    doc.axes.forEach((axis, i) => {
      for (const id of ids) {
        const dot = svgEl("circle");
        dot.setAttribute("cx", String(axisX(i)));
        dot.setAttribute("cy", String(rankY(axis.entities[id].rank)));
        dot.setAttribute("r", "4");
        dot.setAttribute("data-id", id);
        dot.setAttribute("data-rank", String(axis.entities[id].rank));
        dot.setAttribute("data-scheme", axis.schemeId);
        const role = doc.sampleRoles[id];
        const fill =
          id === doc.draggedEntity
            ? "#111"
            : role === "positive-sample"
              ? "#3b6fd4"
              : role === "negative-sample"
                ? "#c0392b"
                : "#9a9a9a";
        dot.setAttribute("fill", fill);
        dot.setAttribute(
          "class",
          `axis-dot ${id === doc.draggedEntity ? "dragged" : (role ?? "none")}`,
        );
        dot.addEventListener("click", () => this.store.selectEntity(id));
        svg.appendChild(dot);
      }
    });

    if (this.store.selectedEntity && ids.includes(this.store.selectedEntity)) {
      const id = this.store.selectedEntity;
      const path = svgEl("path");
      const d = doc.axes
        .map((axis, i) => `${i === 0 ? "M" : "L"}${axisX(i)},${rankY(axis.entities[id].rank)}`)
        .join(" ");
      path.setAttribute("d", d);
      path.setAttribute("class", "bold-link");
      path.setAttribute("data-id", id);
      svg.appendChild(path);
    }
    return svg;
  }

  /** Negative/positive sample box plots per indicator, weight curve overlay. */
  private boxesSvg(doc: ComparisonDoc): SVGSVGElement {
    const names = Object.keys(doc.boxStats);
    const slot = 64;
    const height = 180;
    const top = 30;
    const plotH = height - top - 20;
    const svg = svgEl("svg");
    svg.setAttribute("class", "comparison-boxes");
    svg.setAttribute("width", String(names.length * slot + 40));
    svg.setAttribute("height", String(height));
    const y = (v: number) => top + (1 - v) * plotH; // normalized values, [0, 1]

    names.forEach((name, i) => {
      const cx = 30 + i * slot + slot / 2;
      const pair: [number, "negative" | "positive"][] = [[-14, "negative"], [14, "positive"]];
      for (const [offset, side] of pair) {
        const stats = doc.boxStats[name][side];
        if (!stats) continue;
        const bx = cx + offset - 10;
        const box = svgEl("rect");
        box.setAttribute("x", String(bx));
        box.setAttribute("y", String(y(stats.q3)));
        box.setAttribute("width", "20");
        box.setAttribute("height", String(Math.max(1, y(stats.q1) - y(stats.q3))));
        box.setAttribute("class", `box ${side} indicator-${i}`);
        box.setAttribute("data-indicator", name);
        svg.appendChild(box);
        for (const [v, cls] of [
          [stats.median, "median"],
          [stats.min, "whisker"],
          [stats.max, "whisker"],
        ] as [number, string][]) {
          const line = svgEl("line");
          line.setAttribute("x1", String(bx));
          line.setAttribute("x2", String(bx + 20));
          line.setAttribute("y1", String(y(v)));
          line.setAttribute("y2", String(y(v)));
          line.setAttribute("class", cls);
          svg.appendChild(line);
        }
      }
      const label = svgEl("text");
      label.setAttribute("x", String(cx));
      label.setAttribute("y", String(height - 4));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("class", "indicator-label");
      label.textContent = name.slice(0, 10);
      svg.appendChild(label);
    });

    const curves = doc.weightsCurve.filter((s: SchemeDoc) => s.weights);
    const peak = Math.max(
      1e-12,
      ...curves.flatMap((s) => names.map((n) => Math.abs(s.weights![n] ?? 0))),
    );
    curves.forEach((scheme) => {
      const path = svgEl("path");
      const d = names
        .map((n, i) => {
          const cx = 30 + i * slot + slot / 2;
          const v = (scheme.weights![n] ?? 0) / peak; // [-1, 1] display scale
          return `${i === 0 ? "M" : "L"}${cx},${top + plotH / 2 - (v * plotH) / 2}`;
        })
        .join(" ");
      path.setAttribute("d", d);
      path.setAttribute("class", "weight-curve");
      path.setAttribute("data-scheme", scheme.id);
      svg.appendChild(path);
    });
    return svg;
  }
}
