import { Store } from "./state.js";
import { RATING_COLORS } from "./comparison.js";
import type { ProjectionDoc } from "./types.js";

const VIEW = 220;
const PAD = 18;

const NS = "http://www.w3.org/2000/svg";

export interface Pt {
  x: number;
  y: number;
}

/** Ray-casting point-in-polygon; polygon is a list of points in order. */
export function pointInPolygon(p: Pt, polygon: Pt[]): boolean {
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const a = polygon[i];
    const b = polygon[j];
    const crosses =
      a.y > p.y !== b.y > p.y &&
      p.x < ((b.x - a.x) * (p.y - a.y)) / (b.y - a.y) + a.x;
    if (crosses) inside = !inside;
  }
  return inside;
}

export function idsInPolygon(doc: ProjectionDoc, polygon: Pt[]): string[] {
  if (polygon.length < 3) return [];
  return doc.points.filter((pt) => pointInPolygon(pt, polygon)).map((pt) => pt.id);
}

/** Map the embedding's coordinate box onto the subview pixel square. */
export function viewTransform(doc: ProjectionDoc): (p: Pt) => Pt {
  const xs = doc.points.map((p) => p.x);
  const ys = doc.points.map((p) => p.y);
  const lo = { x: Math.min(...xs), y: Math.min(...ys) };
  const hi = { x: Math.max(...xs), y: Math.max(...ys) };
  const span = Math.max(hi.x - lo.x, hi.y - lo.y) || 1;
  const s = (VIEW - 2 * PAD) / span;
  return (p) => ({ x: PAD + (p.x - lo.x) * s, y: PAD + (p.y - lo.y) * s });
}

/** One scatter subview per scheme over the same entities; a lasso on any
 *  subview selects points and links the identical entities across all
 *  subviews with curves. Dot color = rating, dot size = one raw indicator. */
export class ProjectionView {
  sizeIndicator: string | null = null; // defaults to the first indicator
  private lassoPoly: Pt[] = [];
  private lassoScheme: string | null = null;

  constructor(private root: HTMLElement, private store: Store) {
    store.subscribe(() => this.render());
  }

  render(): void {
    const { store } = this;
    this.root.innerHTML = "";
    if (!store.summary || store.projections.size === 0) {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = "Projections appear once schemes are saved.";
      this.root.appendChild(hint);
      return;
    }
    const indicator = this.sizeIndicator ?? store.summary.indicators[0].name;
    const grid = document.createElement("div");
    grid.className = "projection-grid";
    const placed: { schemeId: string; origin: Pt; positions: Map<string, Pt> }[] = [];

    let column = 0;
    for (const scheme of store.summary.schemes) {
      const doc = store.projections.get(scheme.id);
      if (!doc) continue;
      const ranking = store.rankings.get(scheme.id) ?? null;
      const sub = this.subview(doc, scheme.id, indicator, ranking);
      grid.appendChild(sub.element);
      placed.push({
        schemeId: scheme.id,
        origin: { x: column * (VIEW + 16), y: 0 },
        positions: sub.positions,
      });
      column += 1;
    }
    this.root.appendChild(grid);
    if (store.lassoSelection.length > 0 && placed.length > 1) {
      this.root.appendChild(linkCurves(placed, store.lassoSelection, VIEW));
    }
  }

  private subview(
    doc: ProjectionDoc,
    schemeId: string,
    indicator: string,
    ranking: ReturnType<Store["ranking"]>,
  ) {
    const wrap = document.createElement("div");
    wrap.className = "projection-subview";
    wrap.dataset.scheme = schemeId;
    const title = document.createElement("div");
    title.className = "subview-title";
    title.textContent = ranking?.label ?? schemeId;
    wrap.appendChild(title);

    const svg = document.createElementNS(NS, "svg");
    svg.setAttribute("width", String(VIEW));
    svg.setAttribute("height", String(VIEW));
    svg.setAttribute("class", "projection-canvas");
    const tf = viewTransform(doc);
    const positions = new Map<string, Pt>();
    const rowById = new Map(ranking?.entities.map((e) => [e.id, e]) ?? []);
    const sizes = doc.points.map((p) => rowById.get(p.id)?.raw[indicator] ?? 0);
    const sizeLo = Math.min(...sizes);
    const sizeSpan = Math.max(...sizes) - sizeLo || 1;

    doc.points.forEach((p, i) => {
      const q = tf(p);
      positions.set(p.id, q);
      const dot = document.createElementNS(NS, "circle");
      dot.setAttribute("cx", String(q.x));
      dot.setAttribute("cy", String(q.y));
      dot.setAttribute("r", String(3 + 5 * ((sizes[i] - sizeLo) / sizeSpan)));
      const rating = rowById.get(p.id)?.rating ?? 0;
      dot.setAttribute("fill", RATING_COLORS[rating - 1] ?? "#888");
      dot.setAttribute("class", "proj-dot");
      dot.setAttribute("data-id", p.id);
      if (this.store.lassoSelection.includes(p.id)) dot.classList.add("lassoed");
      if (p.id === this.store.selectedEntity) dot.classList.add("selected");
      dot.addEventListener("click", () => this.store.selectEntity(p.id));
      svg.appendChild(dot);
    });

    svg.addEventListener("pointerdown", (ev) => {
      this.lassoScheme = schemeId;
      this.lassoPoly = [eventPoint(ev)];
    });
    svg.addEventListener("pointermove", (ev) => {
      if (this.lassoScheme === schemeId && this.lassoPoly.length > 0) {
        this.lassoPoly.push(eventPoint(ev));
      }
    });
    svg.addEventListener("pointerup", () => {
      if (this.lassoScheme === schemeId) {
        this.applyLasso(schemeId, this.lassoPoly.map((p) => fromView(p, tf, doc)));
        this.lassoPoly = [];
        this.lassoScheme = null;
      }
    });
    wrap.appendChild(svg);
    return { element: wrap, positions };
  }

  /** Select every entity whose embedded point falls inside the polygon
   *  (polygon given in the embedding's own coordinate space). */
  applyLasso(schemeId: string, polygon: Pt[]): string[] {
    const doc = this.store.projections.get(schemeId);
    const ids = doc ? idsInPolygon(doc, polygon) : [];
    this.store.setLasso(ids);
    return ids;
  }
}

function eventPoint(ev: PointerEvent): Pt {
  return { x: ev.offsetX, y: ev.offsetY };
}

// invert the view transform approximately by solving on the two reference
// points; adequate because the transform is a uniform scale plus offset
function fromView(p: Pt, tf: (q: Pt) => Pt, doc: ProjectionDoc): Pt {
  const a = doc.points[0];
  const ta = tf(a);
  const b = doc.points.find((q) => tf(q).x !== ta.x) ?? a;
  const tb = tf(b);
  const scale = tb.x === ta.x ? 1 : (tb.x - ta.x) / (b.x - a.x);
  return { x: a.x + (p.x - ta.x) / scale, y: a.y + (p.y - ta.y) / scale };
}

/** One curve per selected entity threading its dot in every subview. */
export function linkCurves(
  placed: { schemeId: string; origin: Pt; positions: Map<string, Pt> }[],
  ids: string[],
  view: number,
): SVGSVGElement {
  const svg = document.createElementNS(NS, "svg");
  svg.setAttribute("class", "projection-links");
  svg.setAttribute("width", String(placed.length * (view + 16)));
  svg.setAttribute("height", String(view + 20));
  for (const id of ids) {
    const anchors = placed
      .map((sub) => {
        const p = sub.positions.get(id);
        return p ? { x: sub.origin.x + p.x, y: sub.origin.y + p.y + 20 } : null;
      })
      .filter((p): p is Pt => p !== null);
    if (anchors.length < 2) continue;
    let d = `M${anchors[0].x},${anchors[0].y}`;
    for (let i = 1; i < anchors.length; i++) {
      const mx = (anchors[i - 1].x + anchors[i].x) / 2;
      d += ` Q${mx},${Math.min(anchors[i - 1].y, anchors[i].y) - 24} ${anchors[i].x},${anchors[i].y}`;
    }
    const path = document.createElementNS(NS, "path");
    path.setAttribute("d", d);
    path.setAttribute("class", "link-curve");
    path.setAttribute("data-id", id);
    svg.appendChild(path);
  }
  return svg;
}
