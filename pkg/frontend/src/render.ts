/**
 * Result-pane rendering.
 *
 * The service is the only formatter: table cells and banner figures
 * are substrings of the report's own log text, and summary statistics
 * are raw lexemes sliced from the response body. The console performs
 * no utility math; the single computed quantity is histogram bar
 * geometry, which displays no numbers.
 */

import { rawAt } from "./rawjson";
import type { DatasetSummary, DecisionReport, MonteCarloPayload } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function table(headers: string[], rows: string[][]): HTMLTableElement {
  const root = el("table");
  const head = root.createTHead().insertRow();
  for (const header of headers) head.appendChild(el("th", undefined, header));
  const body = root.createTBody();
  for (const cells of rows) {
    const row = body.insertRow();
    for (const cell of cells) row.insertCell().textContent = cell;
  }
  return root;
}

export function renderSummary(container: HTMLElement, raw: string, summary: DatasetSummary): void {
  container.replaceChildren();
  const rows: string[][] = summary.attributes.map((attribute, index) => [
    attribute.plan_id,
    attribute.attribute_id,
    rawAt(raw, ["attributes", index, "count"]),
    rawAt(raw, ["attributes", index, "mean_max_cost"]),
    rawAt(raw, ["attributes", index, "stdev_max_cost"]),
    rawAt(raw, ["attributes", index, "mean_utilization"]),
    rawAt(raw, ["attributes", index, "stdev_utilization"]),
  ]);
  container.appendChild(
    table(["Plan", "Attribute", "n", "Mean max cost", "Stdev max cost", "Mean utilization", "Stdev utilization"], rows),
  );
  const note = el("p", "meta", `dataset ${summary.dataset_id.slice(0, 12)}… (${summary.record_count} responses)`);
  container.appendChild(note);
}

const RANK_LINE = /^(\d+)\. (\S+)  expected utility (\S+)  probabilities \[(.+)\]$/;

export function renderRank(container: HTMLElement, report: DecisionReport): void {
  container.replaceChildren();
  const rows: string[][] = [];
  for (const line of report.human_log.split("\n")) {
    const match = RANK_LINE.exec(line);
    if (match) rows.push([match[1], match[2], match[3], match[4]]);
  }
  container.appendChild(table(["#", "Plan", "Expected utility", "Scenario probabilities"], rows));
  const recommendation = report.human_log
    .split("\n")
    .find((line) => line.startsWith("Recommendation: "));
  if (recommendation) container.appendChild(el("p", "recommendation", recommendation));
}

export function renderGoNoGo(container: HTMLElement, report: DecisionReport): void {
  container.replaceChildren();
  const decision = String(report.payload["decision"]);
  const banner = el("div", `banner banner-${decision.toLowerCase()}`, decision);
  banner.setAttribute("data-decision", decision);
  container.appendChild(banner);
  for (const line of report.human_log.split("\n")) {
    if (line.includes("expected utility")) container.appendChild(el("p", "detail", line));
  }
}

export function renderSweep(container: HTMLElement, report: DecisionReport): void {
  container.replaceChildren();
  const pre = el("pre", "sweep-log");
  pre.textContent = report.human_log;
  container.appendChild(pre);
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderMonteCarlo(container: HTMLElement, report: DecisionReport): void {
  container.replaceChildren();
  const statsLine = report.human_log.split("\n").find((line) => line.startsWith("Count = "));
  if (statsLine) container.appendChild(el("p", "mc-stats", statsLine));

  const payload = report.payload as unknown as MonteCarloPayload;
  const bins = payload.result.histogram;
  const svg = document.createElementNS(SVG_NS, "svg");
  const width = 600;
  const height = 160;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "histogram");
  const peak = Math.max(1, ...bins.map(([, count]) => count));
  const barWidth = width / bins.length;
  bins.forEach(([, count], index) => {
    const bar = document.createElementNS(SVG_NS, "rect");
    const barHeight = (count / peak) * (height - 10);
    bar.setAttribute("x", String(index * barWidth));
    bar.setAttribute("y", String(height - barHeight));
    bar.setAttribute("width", String(Math.max(1, barWidth - 1)));
    bar.setAttribute("height", String(barHeight));
    bar.setAttribute("data-count", String(count));
    svg.appendChild(bar);
  });
  container.appendChild(svg);
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren(el("div", "error", message));
}

export function setStale(container: HTMLElement, stale: boolean): void {
  container.classList.toggle("stale", stale);
}
