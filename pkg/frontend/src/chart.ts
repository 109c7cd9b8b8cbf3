/** SVG chart builder: stacked channel traces, score subplot, threshold markers.
 *
 * Pure string output so rendering stays testable without a DOM; the page
 * mounts the markup and wires wheel/drag events to the viewport helpers.
 */

import type { QueryPayload } from "./types.js";

export class PayloadError extends Error {}

const WIDTH = 820;
const MARGIN_LEFT = 46;
const MARGIN_RIGHT = 12;
const CHANNEL_HEIGHT = 78;
const SCORE_HEIGHT = 130;
const BAND_GAP = 10;
const MIN_SPAN = 0.01;

export interface Viewport {
  start: number; // fraction of the time axis, 0 <= start < end <= 1
  end: number;
}

export const FULL_VIEW: Viewport = { start: 0, end: 1 };

export function zoomAt(view: Viewport, focus: number, factor: number): Viewport {
  const span = Math.max(MIN_SPAN, Math.min(1, (view.end - view.start) * factor));
  const pivot = view.start + (view.end - view.start) * Math.min(1, Math.max(0, focus));
  let start = pivot - span * Math.min(1, Math.max(0, focus));
  let end = start + span;
  if (start < 0) {
    end -= start;
    start = 0;
  }
  if (end > 1) {
    start -= end - 1;
    end = 1;
  }
  return { start: Math.max(0, start), end: Math.min(1, end) };
}

export function panBy(view: Viewport, delta: number): Viewport {
  const span = view.end - view.start;
  let start = view.start + delta;
  start = Math.min(1 - span, Math.max(0, start));
  return { start, end: start + span };
}

export function validatePayload(raw: unknown): QueryPayload {
  const p = raw as Partial<QueryPayload> | null;
  if (!p || typeof p !== "object") {
    throw new PayloadError("query payload is not an object");
  }
  if (typeof p.sequence_id !== "string") {
    throw new PayloadError("query payload lacks a sequence id");
  }
  if (!Array.isArray(p.score) || p.score.length === 0) {
    throw new PayloadError(`query ${p.sequence_id}: payload lacks a score trace`);
  }
  if (!Array.isArray(p.channels) || p.channels.length === 0) {
    throw new PayloadError(`query ${p.sequence_id}: payload lacks channel data`);
  }
  const steps = p.channels.length;
  if (p.channels.some((row) => !Array.isArray(row) || row.length !== p.channels![0].length)) {
    throw new PayloadError(`query ${p.sequence_id}: ragged channel rows`);
  }
  if (p.score.length !== steps) {
    throw new PayloadError(
      `query ${p.sequence_id}: score length ${p.score.length} != ${steps} steps`,
    );
  }
  if (!p.thresholds || typeof p.thresholds.unsupervised !== "number") {
    throw new PayloadError(`query ${p.sequence_id}: payload lacks thresholds`);
  }
  return p as QueryPayload;
}

interface Band {
  top: number;
  height: number;
}

function xScale(view: Viewport, steps: number): (index: number) => number {
  const i0 = view.start * (steps - 1);
  const i1 = view.end * (steps - 1);
  const innerWidth = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
  return (index) => MARGIN_LEFT + ((index - i0) / Math.max(i1 - i0, 1e-9)) * innerWidth;
}

function yScale(values: number[], band: Band): (value: number) => number {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (hi === lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = (hi - lo) * 0.08;
  lo -= pad;
  hi += pad;
  return (value) => band.top + band.height - ((value - lo) / (hi - lo)) * band.height;
}

function visibleIndices(view: Viewport, steps: number): number[] {
  const first = Math.max(0, Math.floor(view.start * (steps - 1)));
  const last = Math.min(steps - 1, Math.ceil(view.end * (steps - 1)));
  const indices: number[] = [];
  for (let i = first; i <= last; i++) {
    indices.push(i);
  }
  return indices;
}

function polyline(
  indices: number[],
  values: number[],
  x: (i: number) => number,
  y: (v: number) => number,
  role: string,
  color: string,
): string {
  const points = indices.map((i) => `${x(i).toFixed(2)},${y(values[i]).toFixed(2)}`).join(" ");
  return `<polyline data-role="${role}" fill="none" stroke="${color}" stroke-width="1.4" points="${points}"/>`;
}

function marker(value: number, y: (v: number) => number, role: string, label: string, color: string): string {
  const py = y(value).toFixed(2);
  return (
    `<line data-role="${role}" data-value="${value}" x1="${MARGIN_LEFT}" y1="${py}" ` +
    `x2="${WIDTH - MARGIN_RIGHT}" y2="${py}" stroke="${color}" stroke-dasharray="6 3"/>` +
    `<text x="${WIDTH - MARGIN_RIGHT}" y="${py}" dy="-3" text-anchor="end" fill="${color}" font-size="11">${label}</text>`
  );
}

const CHANNEL_COLORS = ["#2563eb", "#059669", "#9333ea", "#ca8a04", "#0891b2"];

/** Render one queried sequence: one band per channel, then the score band
 * with the unsupervised and (when present) fitted threshold overlays. */
export function renderQuery(raw: unknown, view: Viewport = FULL_VIEW): string {
  const payload = validatePayload(raw);
  const steps = payload.channels.length;
  const nChannels = payload.channels[0].length;
  const x = xScale(view, steps);
  const indices = visibleIndices(view, steps);
  const bands: string[] = [];
  let top = BAND_GAP;
  for (let c = 0; c < nChannels; c++) {
    const band: Band = { top, height: CHANNEL_HEIGHT };
    const values = payload.channels.map((row) => row[c]);
    const y = yScale(
      indices.map((i) => values[i]),
      band,
    );
    bands.push(
      `<g data-band="channel-${c}">` +
        `<text x="4" y="${top + 12}" font-size="11" fill="#555">ch ${c}</text>` +
        polyline(indices, values, x, y, "channel-trace", CHANNEL_COLORS[c % CHANNEL_COLORS.length]) +
        `</g>`,
    );
    top += CHANNEL_HEIGHT + BAND_GAP;
  }
  const scoreBand: Band = { top, height: SCORE_HEIGHT };
  const overlayValues = [payload.thresholds.unsupervised];
  if (payload.thresholds.fitted !== null) {
    overlayValues.push(payload.thresholds.fitted);
  }
  const y = yScale(
    indices.map((i) => payload.score[i]).concat(overlayValues),
    scoreBand,
  );
  let score =
    `<g data-band="score">` +
    `<text x="4" y="${top + 12}" font-size="11" fill="#555">score</text>` +
    polyline(indices, payload.score, x, y, "score-trace", "#dc2626") +
    marker(payload.thresholds.unsupervised, y, "tau-unsupervised", "tau_us", "#6b7280");
  if (payload.thresholds.fitted !== null) {
    score += marker(payload.thresholds.fitted, y, "tau-fitted", "tau_fit", "#16a34a");
  }
  score += `</g>`;
  const height = top + SCORE_HEIGHT + BAND_GAP;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${height}" ` +
    `width="${WIDTH}" height="${height}" data-sequence="${payload.sequence_id}">` +
    bands.join("") +
    score +
    `</svg>`
  );
}
