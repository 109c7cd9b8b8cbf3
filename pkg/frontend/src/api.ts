/** Typed client for the labelling server; the only source of displayed numbers. */

import type {
  LabelValue,
  QueryPayload,
  ReportResponse,
  RoundResponse,
  SessionSummary,
  StrategyKind,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

async function toError(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    return new ApiError(
      body.code ?? "error",
      body.message ?? response.statusText,
      response.status,
    );
  } catch {
    return new ApiError("error", response.statusText, response.status);
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = fetch) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.base + path, init);
    } catch (err) {
      throw new ApiError("network", err instanceof Error ? err.message : String(err), 0);
    }
    if (!response.ok) {
      throw await toError(response);
    }
    return (await response.json()) as T;
  }

  getSession(): Promise<SessionSummary> {
    return this.request<SessionSummary>("/session");
  }

  startRound(strategy: StrategyKind, budget: number): Promise<RoundResponse> {
    return this.request<RoundResponse>("/session/rounds", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ strategy, budget }),
    });
  }

  getQuery(sequenceId: string): Promise<QueryPayload> {
    return this.request<QueryPayload>(`/queries/${encodeURIComponent(sequenceId)}`);
  }

  submitLabel(id: string, value: LabelValue): Promise<SessionSummary> {
    return this.request<SessionSummary>("/labels", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ id, value }),
    });
  }

  getReport(): Promise<ReportResponse> {
    return this.request<ReportResponse>("/report");
  }
}
