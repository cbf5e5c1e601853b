import { ApiClient, ApiError } from "./api.js";
import type {
  ComparisonDoc,
  PreviewDoc,
  ProjectionDoc,
  RankingDoc,
  SessionCreated,
  SessionSummary,
} from "./types.js";

export type Listener = () => void;

/**
 * Single source of truth for the views. Holds the service documents as
 * served; the only state the client owns is which scheme/entity/points are
 * currently selected. No score, weight, rating, or coordinate is ever
 * derived locally.
 */
export class Store {
  summary: SessionSummary | null = null;
  rankings = new Map<string, RankingDoc>();
  preview: PreviewDoc | null = null;
  previewFocus: string | null = null; // candidate kind whose re-ranking tints the table
  comparison: ComparisonDoc | null = null;
  projections = new Map<string, ProjectionDoc>();
  selectedScheme = "default";
  selectedEntity: string | null = null;
  lassoSelection: string[] = [];
  toast: string | null = null;

  private listeners: Listener[] = [];

  constructor(public api: ApiClient) {}

  get sessionId(): string {
    if (!this.summary) throw new Error("no session loaded");
    return this.summary.sessionId;
  }

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  async openSession(text: string): Promise<void> {
    const created: SessionCreated = await this.api.createSession(text);
    this.summary = created.session;
    this.rankings.clear();
    this.rankings.set(created.ranking.schemeId, created.ranking);
    this.preview = null;
    this.previewFocus = null;
    this.comparison = null;
    this.projections.clear();
    this.selectedScheme = created.ranking.schemeId;
    this.selectedEntity = null;
    this.lassoSelection = [];
    this.emit();
  }

  /** Current table order: the selected scheme's ranking as served. */
  ranking(): RankingDoc | null {
    return this.rankings.get(this.selectedScheme) ?? null;
  }

  async dragRow(entityId: string, toRank: number): Promise<void> {
    this.preview = await this.api.submitDrag(
      this.sessionId, entityId, toRank, this.selectedScheme,
    );
    const kinds = ["local", "global", "type"];
    this.previewFocus = kinds.find((k) => this.preview!.candidates[k]) ?? null;
    this.emit();
  }

  focusCandidate(kind: string): void {
    if (this.preview && this.preview.candidates[kind]) {
      this.previewFocus = kind;
      this.emit();
    }
  }

  async saveScheme(which: string, label?: string): Promise<void> {
    let saved;
    try {
      saved = await this.api.saveScheme(this.sessionId, which, label);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.toast = err.message;
        this.emit();
        return;
      }
      throw err;
    }
    this.summary = saved.session;
    this.rankings.set(saved.ranking.schemeId, saved.ranking);
    this.preview = null;
    this.previewFocus = null;
    this.selectedScheme = saved.ranking.schemeId;
    this.comparison = await this.api.getComparison(this.sessionId);
    await this.loadProjections();
    this.emit();
  }

  async loadProjections(): Promise<void> {
    if (!this.summary) return;
    for (const scheme of this.summary.schemes) {
      if (!this.projections.has(scheme.id)) {
        this.projections.set(scheme.id, await this.api.getProjection(this.sessionId, scheme.id));
      }
      if (!this.rankings.has(scheme.id)) {
        this.rankings.set(scheme.id, await this.api.getRankings(this.sessionId, scheme.id));
      }
    }
  }

  selectScheme(schemeId: string): void {
    if (this.rankings.has(schemeId)) {
      this.selectedScheme = schemeId;
      this.emit();
    }
  }

  selectEntity(entityId: string | null): void {
    this.selectedEntity = entityId === this.selectedEntity ? null : entityId;
    this.emit();
  }

  setLasso(ids: string[]): void {
    this.lassoSelection = ids;
    this.emit();
  }

  dismissToast(): void {
    this.toast = null;
    this.emit();
  }
}

/** Signed manual adjustment per entity implied by the drag alone: positive =
 *  moved up (green tint), negative = moved down (red). The dragged row's
 *  magnitude is exactly |fromRank - toRank|; displaced neighbors shift by 1. */
export function adjustmentTints(preview: PreviewDoc): Record<string, number> {
  const { entityId, toRank, baseRanking } = preview.drag;
  const post = baseRanking.filter((id) => id !== entityId);
  post.splice(toRank - 1, 0, entityId);
  const tints: Record<string, number> = {};
  baseRanking.forEach((id, i) => {
    tints[id] = i - post.indexOf(id); // base position minus post position
  });
  return tints;
}
