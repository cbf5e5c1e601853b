import type {
  ComparisonDoc,
  PreviewDoc,
  ProjectionDoc,
  RankingDoc,
  SchemeSaved,
  SessionCreated,
  SessionSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin client over the session service. Every number the UI shows comes out
 * of these responses; the client never post-processes them.
 */
export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async req<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    let body: any = {};
    try {
      body = await resp.json();
    } catch {
      /* non-JSON error body */
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, body.detail ?? `HTTP ${resp.status}`);
    }
    return body as T;
  }

  createSession(text: string): Promise<SessionCreated> {
    return this.req("/sessions", {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: text,
    });
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.req(`/sessions/${sessionId}`);
  }

  getRankings(sessionId: string, scheme?: string): Promise<RankingDoc> {
    const q = scheme ? `?scheme=${encodeURIComponent(scheme)}` : "";
    return this.req(`/sessions/${sessionId}/rankings${q}`);
  }

  submitDrag(sessionId: string, entityId: string, toRank: number, baseScheme?: string): Promise<PreviewDoc> {
    return this.req(`/sessions/${sessionId}/drags`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ entityId, toRank, baseScheme: baseScheme ?? null }),
    });
  }

  saveScheme(sessionId: string, which: string, label?: string): Promise<SchemeSaved> {
    return this.req(`/sessions/${sessionId}/schemes`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ which, label: label || null }),
    });
  }

  getComparison(sessionId: string): Promise<ComparisonDoc> {
    return this.req(`/sessions/${sessionId}/comparison`);
  }

  getProjection(sessionId: string, scheme: string): Promise<ProjectionDoc> {
    return this.req(`/sessions/${sessionId}/projection?scheme=${encodeURIComponent(scheme)}`);
  }
}
