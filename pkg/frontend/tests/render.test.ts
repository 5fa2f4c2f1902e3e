// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { renderGoNoGo, renderMonteCarlo, renderRank, renderSummary, renderSweep, setStale } from "../src/render";
import type { DatasetSummary, DecisionReport } from "../src/types";

const RANK_REPORT: DecisionReport = {
  kind: "Rank",
  digest: "abc",
  payload: {},
  human_log:
    "Plan Ranking\n\n1. Plan_1  expected utility 1.407  probabilities [50% 32% 18%]\n" +
    "2. Plan_2  expected utility 1.286  probabilities [64% 22% 14%]\n\nRecommendation: Plan_1\n",
};

const GONOGO_REPORT: DecisionReport = {
  kind: "GoNoGo",
  digest: "def",
  payload: { decision: "NoGo" },
  human_log:
    "Go/No-Go Analysis\n\nPlan Plan_1: expected utility 1.407\n" +
    "Status quo: expected utility 2.000\n\nDecision: NoGo\n",
};

function pane(): HTMLElement {
  const node = document.createElement("div");
  document.body.appendChild(node);
  return node;
}

describe("renderRank", () => {
  it("tabulates the log lines verbatim", () => {
    const container = pane();
    renderRank(container, RANK_REPORT);
    const cells = [...container.querySelectorAll("td")].map((cell) => cell.textContent);
    expect(cells).toContain("Plan_1");
    expect(cells).toContain("1.407");
    expect(cells).toContain("50% 32% 18%");
    expect(container.textContent).toContain("Recommendation: Plan_1");
  });
});

describe("renderGoNoGo", () => {
  it("shows the decision banner and the two utility lines", () => {
    const container = pane();
    renderGoNoGo(container, GONOGO_REPORT);
    const banner = container.querySelector(".banner");
    expect(banner?.textContent).toBe("NoGo");
    expect(banner?.getAttribute("data-decision")).toBe("NoGo");
    expect(container.textContent).toContain("expected utility 1.407");
    expect(container.textContent).toContain("expected utility 2.000");
  });
});

describe("renderSweep", () => {
  it("shows the log block verbatim", () => {
    const container = pane();
    const report: DecisionReport = {
      kind: "Sweep",
      digest: "xyz",
      payload: {},
      human_log: "Probability Sweep Results\n\nResult: 1 Probabilities: [100% 0% 0%]\n",
    };
    renderSweep(container, report);
    expect(container.querySelector("pre")?.textContent).toBe(report.human_log);
  });
});

describe("renderMonteCarlo", () => {
  it("draws one bar per bin and keeps the stats line", () => {
    const container = pane();
    const report: DecisionReport = {
      kind: "MonteCarlo",
      digest: "mno",
      payload: {
        label: "A vs B",
        result: {
          draw_count: 10,
          mean_delta: -0.1,
          stdev_delta: 0.2,
          share_below_zero: 0.6,
          histogram: [
            [-0.5, 4],
            [0.0, 6],
          ],
          seed: 7,
        },
      },
      human_log:
        "Monte Carlo Simulation: A vs B\n\nCount = 10, Mean = -0.100, Standard Deviation = 0.200, " +
        "Population Below Zero = 60.0%\nSeed = 7\n",
    };
    renderMonteCarlo(container, report);
    const bars = container.querySelectorAll("rect");
    expect(bars.length).toBe(2);
    expect(bars[1].getAttribute("data-count")).toBe("6");
    expect(container.textContent).toContain("Population Below Zero = 60.0%");
  });
});

describe("renderSummary", () => {
  it("slices statistics straight from the response bytes", () => {
    const raw =
      '{"attributes":[{"attribute_id":"amenity","count":3,"mean_max_cost":5.33,' +
      '"mean_utilization":2.5,"plan_id":"Plan_1","stdev_max_cost":4.5600000000000005,' +
      '"stdev_utilization":1.24}],"dataset_id":"ff001122334455","has_lifespan":false,"record_count":3}';
    const summary = JSON.parse(raw) as DatasetSummary;
    const container = pane();
    renderSummary(container, raw, summary);
    const cells = [...container.querySelectorAll("td")].map((cell) => cell.textContent);
    expect(cells).toContain("5.33");
    expect(cells).toContain("4.5600000000000005");
    expect(cells).toContain("2.5");
    expect(cells).toContain("1.24");
  });
});

describe("setStale", () => {
  it("toggles the stale class", () => {
    const container = pane();
    setStale(container, true);
    expect(container.classList.contains("stale")).toBe(true);
    setStale(container, false);
    expect(container.classList.contains("stale")).toBe(false);
  });
});
