/** Wire types mirroring the labelling server's JSON bodies. */

export type LabelValue = "nominal" | "anomalous";

export type StrategyKind = "rqs" | "tqs" | "uqs" | "dqs";

export interface ThresholdInfo {
  unsupervised: number;
  fitted: number | null;
  fitted_on: number;
}

export interface SessionSummary {
  session_id: string;
  round: number;
  pending: string[];
  labels_accepted: number;
  candidates_remaining: number;
  thresholds: ThresholdInfo;
  query_set_f1: number | null;
}

export interface RoundResponse {
  round: number;
  pending: string[];
}

export interface QueryPayload {
  sequence_id: string;
  duration_s: number;
  channels: number[][];
  score: number[];
  statistic: number;
  thresholds: ThresholdInfo;
}

export interface QuerySetMetrics {
  precision: number;
  recall: number;
  f1: number;
  anomalous: number;
  nominal: number;
}

export interface ReportResponse {
  session_id: string;
  rounds: number;
  labels: number;
  thresholds: ThresholdInfo;
  query_set: QuerySetMetrics | null;
}

export interface ErrorBody {
  code: string;
  message: string;
}
