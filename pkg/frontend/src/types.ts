/** Wire types mirroring the service's JSON documents. */

export interface IndicatorInfo {
  name: string;
  unit: string;
}

export interface SchemeDoc {
  id: string;
  kind: "default" | "local" | "global" | "type";
  label: string;
  weights?: Record<string, number>;
  weightsByType?: Record<string, Record<string, number>>;
  createdFrom: { entityId: string; fromRank: number; toRank: number } | null;
}

export interface SessionSummary {
  sessionId: string;
  createdAt: string;
  entityCount: number;
  typeField: string;
  typeLabels: string[];
  indicators: IndicatorInfo[];
  schemes: SchemeDoc[];
}

export interface RankingRow {
  id: string;
  name: string;
  type: string;
  rank: number;
  score: number;
  rounded: number;
  rating: number;
  contributions: Record<string, number>;
  raw: Record<string, number>;
}

export interface RankingDoc {
  sessionId: string;
  schemeId: string;
  label: string;
  kind: string;
  breakpoints: number[];
  entities: RankingRow[];
  warnings: string[];
}

export interface SessionCreated {
  sessionId: string;
  session: SessionSummary;
  ranking: RankingDoc;
}

export interface PreviewCandidate {
  scheme: SchemeDoc;
  ranking: RankingDoc;
  notes: string[];
}

export interface PreviewDoc {
  drag: { entityId: string; fromRank: number; toRank: number; baseRanking: string[] };
  baseScheme: string;
  candidates: Record<string, PreviewCandidate | null>;
  errors: Record<string, string>;
}

export interface SchemeSaved {
  scheme: SchemeDoc;
  ranking: RankingDoc;
  session: SessionSummary;
}

export interface ComparisonAxis {
  schemeId: string;
  label: string;
  kind: string;
  entities: Record<string, { rank: number; rating: number }>;
}

export interface BoxSummary {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

export interface ComparisonDoc {
  sessionId: string;
  draggedEntity: string;
  axes: ComparisonAxis[];
  rankDeltas: { fromScheme: string; toScheme: string; deltas: Record<string, number> }[];
  sampleRoles: Record<string, "positive-sample" | "negative-sample" | "none">;
  boxStats: Record<string, { negative: BoxSummary | null; positive: BoxSummary | null }>;
  weightsCurve: SchemeDoc[];
}

export interface ProjectionDoc {
  schemeId: string;
  params: { perplexity: number; iterations: number; seed: number };
  points: { id: string; x: number; y: number }[];
}
