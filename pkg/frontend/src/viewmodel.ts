/** Session view model: mirrors server state, drives the labelling queue.
 *
 * Every displayed number comes from a server response; the only local
 * mutation is advancing to the next pending query after an accepted label.
 */

import { ApiClient, ApiError } from "./api.js";
import { PayloadError, validatePayload } from "./chart.js";
import type { LabelValue, QueryPayload, SessionSummary, StrategyKind } from "./types.js";

export interface Banner {
  kind: "error" | "retry";
  message: string;
}

export class ViewModel {
  summary: SessionSummary | null = null;
  pending: string[] = [];
  active: QueryPayload | null = null;
  banner: Banner | null = null;
  roundCompleted = false;

  private inFlight = false;
  private lastValue: LabelValue | null = null;
  private readonly onChange: () => void;

  constructor(
    private readonly api: ApiClient,
    onChange: () => void = () => {},
  ) {
    this.onChange = onChange;
  }

  private emit(): void {
    this.onChange();
  }

  async refresh(): Promise<void> {
    try {
      const summary = await this.api.getSession();
      this.summary = summary;
      this.pending = [...summary.pending];
      this.banner = null;
      if (this.active && !this.pending.includes(this.active.sequence_id)) {
        this.active = null;
      }
      if (!this.active && this.pending.length > 0) {
        await this.loadActive(this.pending[0]);
      }
    } catch (err) {
      this.handleFailure(err);
    }
    this.emit();
  }

  async startRound(strategy: StrategyKind, budget: number): Promise<void> {
    try {
      const round = await this.api.startRound(strategy, budget);
      this.pending = [...round.pending];
      this.roundCompleted = false;
      this.banner = null;
      this.active = null;
      if (this.pending.length > 0) {
        await this.loadActive(this.pending[0]);
      }
    } catch (err) {
      if (err instanceof ApiError && err.code === "conflict") {
        await this.refresh();
        return;
      }
      this.handleFailure(err);
    }
    this.emit();
  }

  private async loadActive(sequenceId: string): Promise<void> {
    try {
      this.active = validatePayload(await this.api.getQuery(sequenceId));
    } catch (err) {
      this.active = null;
      this.handleFailure(err);
    }
  }

  /** Submit a decision for the active query; repeat calls while a request
   * is in flight are dropped, so a double-click sends one request. */
  async submit(value: LabelValue): Promise<void> {
    if (!this.active || this.inFlight) {
      return;
    }
    this.inFlight = true;
    this.lastValue = value;
    const id = this.active.sequence_id;
    try {
      const summary = await this.api.submitLabel(id, value);
      this.summary = summary;
      this.pending = [...summary.pending];
      this.active = null;
      this.banner = null;
      this.roundCompleted = this.pending.length === 0;
      if (this.pending.length > 0) {
        await this.loadActive(this.pending[0]);
      }
    } catch (err) {
      if (err instanceof ApiError && err.code === "conflict") {
        // someone else answered or the state moved on: resync, never resend
        this.inFlight = false;
        await this.refresh();
        return;
      }
      this.handleFailure(err);
    } finally {
      this.inFlight = false;
    }
    this.emit();
  }

  /** Retry the last failed submission (offline-server path). */
  async retry(): Promise<void> {
    this.banner = null;
    if (this.active && this.lastValue) {
      await this.submit(this.lastValue);
    } else {
      await this.refresh();
    }
  }

  /** Keyboard shortcuts: n = nominal, a = anomalous. */
  async handleKey(key: string): Promise<void> {
    if (key === "n") {
      await this.submit("nominal");
    } else if (key === "a") {
      await this.submit("anomalous");
    }
  }

  private handleFailure(err: unknown): void {
    if (err instanceof PayloadError) {
      this.banner = { kind: "error", message: err.message };
    } else if (err instanceof ApiError && err.code === "network") {
      this.banner = { kind: "retry", message: `server unreachable: ${err.message}` };
    } else if (err instanceof ApiError) {
      this.banner = { kind: "error", message: `${err.code}: ${err.message}` };
    } else {
      this.banner = { kind: "error", message: String(err) };
    }
    this.emit();
  }
}

/** Summary panel text; numbers are rendered verbatim from server values. */
export function formatSummary(summary: SessionSummary | null): string {
  if (!summary) {
    return "no session";
  }
  const tau = summary.thresholds;
  const parts = [
    `session ${summary.session_id}`,
    `round ${summary.round}`,
    `labels ${summary.labels_accepted}`,
    `tau_us ${tau.unsupervised}`,
    tau.fitted === null ? "tau_fit none" : `tau_fit ${tau.fitted} (n=${tau.fitted_on})`,
    summary.query_set_f1 === null ? "F1 n/a" : `F1 ${summary.query_set_f1}`,
  ];
  return parts.join(" | ");
}
