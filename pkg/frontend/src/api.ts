// Typed fetch client for the assessment and surveillance endpoints.
//
// Every call goes through a per-endpoint Channel that stamps requests with
// a sequence number. A response whose stamp is no longer the newest is
// reported as stale and must be discarded by the caller, so rapid form
// edits can never paint an older answer over a newer one.

export interface QuestionRank {
  feature: string;
  expected_entropy_reduction: number;
}

export interface AssessResponse {
  posterior: Record<string, number>;
  p_covid: number;
  covid_alert: boolean;
  hospitalization_alert: boolean;
  next_questions: QuestionRank[];
  contradiction: string | null;
}

export interface VoiResponse {
  target: string;
  ranking: QuestionRank[];
}

export interface HeatmapCellProperties {
  cell: [number, number];
  count: number;
  mean_p: number;
  high_risk_fraction: number;
  [key: string]: unknown;
}

export interface HeatmapFeature {
  type: "Feature";
  geometry: { type: "Polygon"; coordinates: number[][][] };
  properties: HeatmapCellProperties;
}

export interface HeatmapCollection {
  type: "FeatureCollection";
  features: HeatmapFeature[];
}

export interface AssessPayload {
  evidence: Record<string, string>;
  symptom_duration_days: number;
  improving: string;
}

export interface VoiPayload {
  evidence: Record<string, string>;
}

export interface HeatmapQuery {
  start: number;
  end: number;
  age?: string;
}

export type ApiResult<T> =
  | { kind: "ok"; data: T }
  | { kind: "error"; status: number; detail: string }
  | { kind: "network"; message: string }
  | { kind: "stale" };

function detailText(body: unknown): string {
  if (body && typeof body === "object" && "detail" in body) {
    const d = (body as { detail: unknown }).detail;
    if (typeof d === "string") return d;
    return JSON.stringify(d);
  }
  return JSON.stringify(body);
}

class Channel {
  private latest = 0;

  async run<T>(issue: () => Promise<Response>): Promise<ApiResult<T>> {
    const seq = ++this.latest;
    let resp: Response;
    try {
      resp = await issue();
    } catch (err) {
      if (seq !== this.latest) return { kind: "stale" };
      return { kind: "network", message: err instanceof Error ? err.message : String(err) };
    }
    let body: unknown;
    try {
      body = await resp.json();
    } catch {
      body = null;
    }
    // the newest request wins, even if this one already has an answer
    if (seq !== this.latest) return { kind: "stale" };
    if (!resp.ok) {
      return { kind: "error", status: resp.status, detail: detailText(body) };
    }
    return { kind: "ok", data: body as T };
  }
}

export class ConsoleApi {
  private assessChannel = new Channel();
  private voiChannel = new Channel();
  private heatmapChannel = new Channel();

  constructor(private base = "") {}

  assess(payload: AssessPayload): Promise<ApiResult<AssessResponse>> {
    return this.assessChannel.run(() =>
      fetch(`${this.base}/assess`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
  }

  voi(payload: VoiPayload): Promise<ApiResult<VoiResponse>> {
    return this.voiChannel.run(() =>
      fetch(`${this.base}/voi`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
  }

  heatmap(query: HeatmapQuery): Promise<ApiResult<HeatmapCollection>> {
    const params = new URLSearchParams({
      start: String(query.start),
      end: String(query.end),
    });
    if (query.age) params.set("age", query.age);
    return this.heatmapChannel.run(() =>
      fetch(`${this.base}/heatmap?${params.toString()}`),
    );
  }
}
