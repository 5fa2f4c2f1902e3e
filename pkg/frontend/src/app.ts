/**
 * Console wiring: controls on the left, one result pane per analysis.
 *
 * Parameter edits mark every displayed pane stale before anything else
 * renders; a pane leaves the stale state only when its analysis
 * re-runs. Exports hand back the exact bytes the service returned.
 */

import { ApiClient, ApiError } from "./api";
import { renderError, renderGoNoGo, renderMonteCarlo, renderRank, renderSummary, renderSweep, setStale } from "./render";
import { WhatIfSession } from "./session";
import type { AnalysisKind, DatasetSummary } from "./types";

export const ANALYSIS_KINDS: AnalysisKind[] = ["rank", "gonogo", "sweep", "montecarlo"];

const SAMPLE_PLANS = [
  {
    plan_id: "Plan_1",
    probabilities: [0.5, 0.32, 0.18],
    attributes: [
      {
        attribute_id: "amenity",
        targets: {
          low: { cost: 2, quality: 2 },
          nominal: { cost: 3, quality: 3 },
          high: { cost: 4, quality: 4 },
        },
      },
    ],
  },
];

export interface App {
  session: WhatIfSession;
  root: HTMLElement;
  loadDatasetText(csv: string): Promise<DatasetSummary>;
  run(kind: AnalysisKind): Promise<void>;
  exportCurrent(kind: AnalysisKind): string;
  controls: Record<string, HTMLInputElement>;
  plansInput: HTMLTextAreaElement;
  panes: Record<AnalysisKind, HTMLElement>;
  statusLine: HTMLElement;
}

function labelled(root: HTMLElement, label: string, input: HTMLElement): void {
  const wrap = document.createElement("label");
  wrap.className = "control";
  const span = document.createElement("span");
  span.textContent = label;
  wrap.append(span, input);
  root.appendChild(wrap);
}

function numberInput(id: string, value: number, step = "any"): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "number";
  input.id = id;
  input.step = step;
  input.value = String(value);
  return input;
}

export async function createApp(root: HTMLElement, client: ApiClient): Promise<App> {
  const defaults = (await client.getDefaults()).body;
  const session = new WhatIfSession(defaults);
  session.setPlansJson(JSON.stringify(SAMPLE_PLANS, null, 2));

  root.replaceChildren();
  const sidebar = document.createElement("aside");
  sidebar.className = "sidebar";
  const main = document.createElement("main");
  main.className = "results";
  root.append(sidebar, main);

  const statusLine = document.createElement("p");
  statusLine.className = "status";
  statusLine.id = "status";

  // Dataset loading
  const fileInput = document.createElement("input");
  fileInput.type = "file";
  fileInput.accept = ".csv,text/csv";
  fileInput.id = "dataset-file";
  labelled(sidebar, "Survey CSV", fileInput);
  const summaryPane = document.createElement("section");
  summaryPane.id = "summary";
  sidebar.appendChild(summaryPane);

  // Parameter controls
  const wcSlider = document.createElement("input");
  wcSlider.type = "range";
  wcSlider.id = "w_c";
  wcSlider.min = "1";
  wcSlider.max = "4";
  wcSlider.step = "0.25";
  wcSlider.value = String(defaults.w_c);
  labelled(sidebar, "Cost scaling W_c", wcSlider);
  const wcReadout = document.createElement("output");
  wcReadout.id = "w_c-readout";
  wcReadout.textContent = wcSlider.value;
  sidebar.appendChild(wcReadout);

  const controls: Record<string, HTMLInputElement> = { w_c: wcSlider };
  const numericControls: [keyof WhatIfSession["params"], string, number][] = [
    ["w_q", "Quality scaling W_q", defaults.w_q],
    ["c_ref", "Reference cost", defaults.c_ref],
    ["hurwicz_alpha", "Hurwicz alpha", defaults.hurwicz_alpha],
    ["sweep_increment", "Sweep increment", defaults.sweep_increment],
    ["seed", "Seed", defaults.seed],
  ];
  for (const [name, label, value] of numericControls) {
    const input = numberInput(name, value);
    controls[name] = input;
    labelled(sidebar, label, input);
  }
  const drawsInput = numberInput("draws", defaults.households, "1");
  controls.draws = drawsInput;
  labelled(sidebar, "Monte Carlo draws", drawsInput);

  const plansInput = document.createElement("textarea");
  plansInput.id = "plans";
  plansInput.rows = 14;
  plansInput.value = session.plansJson;
  labelled(sidebar, "Plans (JSON)", plansInput);

  sidebar.appendChild(statusLine);

  // Result panes with run/export buttons
  const panes = {} as Record<AnalysisKind, HTMLElement>;
  const runButtons = {} as Record<AnalysisKind, HTMLButtonElement>;
  const exportButtons = {} as Record<AnalysisKind, HTMLButtonElement>;
  const renderers = {
    rank: renderRank,
    gonogo: renderGoNoGo,
    sweep: renderSweep,
    montecarlo: renderMonteCarlo,
  } as const;

  for (const kind of ANALYSIS_KINDS) {
    const section = document.createElement("section");
    section.className = "pane";
    section.id = `pane-${kind}`;
    const header = document.createElement("header");
    const title = document.createElement("h2");
    title.textContent = kind;
    const runButton = document.createElement("button");
    runButton.id = `run-${kind}`;
    runButton.textContent = `Run ${kind}`;
    const exportButton = document.createElement("button");
    exportButton.id = `export-${kind}`;
    exportButton.textContent = "Export";
    exportButton.disabled = true;
    header.append(title, runButton, exportButton);
    const body = document.createElement("div");
    body.className = "pane-body";
    section.append(header, body);
    main.appendChild(section);
    panes[kind] = body;
    runButtons[kind] = runButton;
    exportButtons[kind] = exportButton;
  }

  function refreshStaleMarks(): void {
    for (const kind of ANALYSIS_KINDS) {
      const stale = session.isStale(kind);
      setStale(panes[kind], stale);
      exportButtons[kind].disabled = stale;
      runButtons[kind].disabled = session.datasetId === null;
    }
  }

  function markEdited(): void {
    // Stale marking precedes any other rendering of old results.
    refreshStaleMarks();
    statusLine.textContent = session.dirty ? "parameters changed; re-run to refresh" : "";
  }

  wcSlider.addEventListener("input", () => {
    session.setParam("w_c", Number(wcSlider.value));
    wcReadout.textContent = wcSlider.value;
    markEdited();
  });
  const bindNumber = (name: "w_q" | "c_ref" | "hurwicz_alpha" | "sweep_increment" | "seed") => {
    controls[name].addEventListener("input", () => {
      session.setParam(name, Number(controls[name].value));
      markEdited();
    });
  };
  bindNumber("w_q");
  bindNumber("c_ref");
  bindNumber("hurwicz_alpha");
  bindNumber("sweep_increment");
  bindNumber("seed");
  drawsInput.addEventListener("input", () => {
    session.setParam("draws", drawsInput.value === "" ? null : Number(drawsInput.value));
    markEdited();
  });
  plansInput.addEventListener("input", () => {
    session.setPlansJson(plansInput.value);
    markEdited();
  });

  async function loadDatasetText(csv: string): Promise<DatasetSummary> {
    try {
      const response = await client.uploadDataset(csv);
      session.setDataset(response.body.dataset_id, response.raw);
      renderSummary(summaryPane, response.raw, response.body);
      refreshStaleMarks();
      statusLine.textContent = "";
      return response.body;
    } catch (error) {
      if (error instanceof ApiError) {
        const where = error.detail.row !== undefined ? ` (row ${error.detail.row})` : "";
        renderError(summaryPane, `${error.detail.message}${where}`);
      }
      throw error;
    }
  }

  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (file) await loadDatasetText(await file.text());
  });

  async function run(kind: AnalysisKind): Promise<void> {
    const problems = session.validate();
    if (problems.length > 0) {
      renderError(panes[kind], problems.join("; "));
      return;
    }
    const token = session.beginRun(kind);
    if (token === null) return;
    const revision = session.revision;
    runButtons[kind].disabled = true;
    try {
      const response = await client.runAnalysis(kind, session.buildRequest(kind));
      if (session.finishRun(kind, token, response.body, response.raw, revision)) {
        renderers[kind](panes[kind], response.body);
        refreshStaleMarks();
        statusLine.textContent = session.dirty ? "other panes are stale" : "";
      }
    } catch (error) {
      session.abortRun(kind, token);
      renderError(panes[kind], error instanceof ApiError ? error.message : String(error));
    } finally {
      runButtons[kind].disabled = session.datasetId === null;
    }
  }

  for (const kind of ANALYSIS_KINDS) {
    runButtons[kind].addEventListener("click", () => void run(kind));
  }

  function exportCurrent(kind: AnalysisKind): string {
    return session.exportReport(kind);
  }

  refreshStaleMarks();

  for (const kind of ANALYSIS_KINDS) {
    exportButtons[kind].addEventListener("click", () => {
      const bytes = exportCurrent(kind);
      const blob = new Blob([bytes], { type: "application/json" });
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = `${kind}-report.json`;
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    });
  }

  return {
    session,
    root,
    loadDatasetText,
    run,
    exportCurrent,
    controls,
    plansInput,
    panes,
    statusLine,
  };
}
