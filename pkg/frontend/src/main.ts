/** Page wiring: config, key bindings, chart mounting, zoom and pan. */

import { ApiClient } from "./api.js";
import { FULL_VIEW, PayloadError, panBy, renderQuery, zoomAt } from "./chart.js";
import type { Viewport } from "./chart.js";
import { ViewModel, formatSummary } from "./viewmodel.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function mount(): void {
  const serverInput = el<HTMLInputElement>("server");
  const strategySelect = el<HTMLSelectElement>("strategy");
  const budgetInput = el<HTMLInputElement>("budget");
  const roundButton = el<HTMLButtonElement>("start-round");
  const nominalButton = el<HTMLButtonElement>("mark-nominal");
  const anomalousButton = el<HTMLButtonElement>("mark-anomalous");
  const chartHost = el<HTMLDivElement>("chart");
  const summaryHost = el<HTMLDivElement>("summary");
  const bannerHost = el<HTMLDivElement>("banner");
  const queueHost = el<HTMLDivElement>("queue");

  let view: Viewport = FULL_VIEW;
  let api = new ApiClient(serverInput.value);
  let vm = new ViewModel(api, render);

  function render(): void {
    summaryHost.textContent = formatSummary(vm.summary);
    queueHost.textContent = vm.pending.length
      ? `queue: ${vm.pending.join(", ")}`
      : vm.roundCompleted
        ? "round complete"
        : "queue empty";
    if (vm.banner) {
      bannerHost.textContent = vm.banner.message;
      bannerHost.className = `banner ${vm.banner.kind}`;
      bannerHost.onclick = vm.banner.kind === "retry" ? () => void vm.retry() : null;
    } else {
      bannerHost.textContent = "";
      bannerHost.className = "banner hidden";
    }
    if (vm.active) {
      try {
        chartHost.innerHTML = renderQuery(vm.active, view);
      } catch (err) {
        if (err instanceof PayloadError) {
          bannerHost.textContent = err.message;
          bannerHost.className = "banner error";
        } else {
          throw err;
        }
      }
    } else {
      chartHost.innerHTML = "";
    }
    const canLabel = vm.active !== null;
    nominalButton.disabled = !canLabel;
    anomalousButton.disabled = !canLabel;
  }

  serverInput.onchange = () => {
    api = new ApiClient(serverInput.value);
    vm = new ViewModel(api, render);
    view = FULL_VIEW;
    void vm.refresh();
  };
  roundButton.onclick = () => {
    view = FULL_VIEW;
    void vm.startRound(
      strategySelect.value as "rqs" | "tqs" | "uqs" | "dqs",
      Math.max(1, Number(budgetInput.value) || 1),
    );
  };
  nominalButton.onclick = () => void vm.submit("nominal");
  anomalousButton.onclick = () => void vm.submit("anomalous");

  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement || event.target instanceof HTMLSelectElement) {
      return;
    }
    void vm.handleKey(event.key);
  });

  chartHost.addEventListener(
    "wheel",
    (event) => {
      if (!vm.active) {
        return;
      }
      event.preventDefault();
      const rect = chartHost.getBoundingClientRect();
      const focus = (event.clientX - rect.left) / rect.width;
      view = zoomAt(view, focus, event.deltaY > 0 ? 1.25 : 0.8);
      render();
    },
    { passive: false },
  );

  let dragFrom: number | null = null;
  chartHost.addEventListener("pointerdown", (event) => {
    dragFrom = event.clientX;
  });
  chartHost.addEventListener("pointermove", (event) => {
    if (dragFrom === null || !vm.active) {
      return;
    }
    const rect = chartHost.getBoundingClientRect();
    const span = view.end - view.start;
    view = panBy(view, (-(event.clientX - dragFrom) / rect.width) * span);
    dragFrom = event.clientX;
    render();
  });
  document.addEventListener("pointerup", () => {
    dragFrom = null;
  });

  void vm.refresh();
}

document.addEventListener("DOMContentLoaded", mount);
