import type { AnalysisDefaults, AnalysisKind, AnalysisRequest, DecisionReport } from "./types";

export interface StoredReport {
  report: DecisionReport;
  /** Exact response body, kept for byte-identical export. */
  raw: string;
  revision: number;
}

export interface WorkingParams {
  w_c: number;
  w_q: number;
  c_ref: number;
  seed: number;
  hurwicz_alpha: number;
  sweep_increment: number;
  draws: number | null;
}

/**
 * Parameter state for one what-if sitting.
 *
 * Every edit bumps `revision`; a stored report is stale (dirty) until
 * its analysis re-runs at the current revision, and export is refused
 * for stale reports.
 */
export class WhatIfSession {
  datasetId: string | null = null;
  datasetRaw: string | null = null;
  plansJson = "";
  params: WorkingParams;
  revision = 0;
  private reports = new Map<AnalysisKind, StoredReport>();
  private tokens = new Map<AnalysisKind, number>();
  private inFlight = new Set<AnalysisKind>();

  constructor(public defaults: AnalysisDefaults) {
    this.params = {
      w_c: defaults.w_c,
      w_q: defaults.w_q,
      c_ref: defaults.c_ref,
      seed: defaults.seed,
      hurwicz_alpha: defaults.hurwicz_alpha,
      sweep_increment: defaults.sweep_increment,
      draws: null,
    };
  }

  setParam<K extends keyof WorkingParams>(name: K, value: WorkingParams[K]): void {
    if (this.params[name] !== value) {
      this.params[name] = value;
      this.revision += 1;
    }
  }

  setPlansJson(text: string): void {
    if (this.plansJson !== text) {
      this.plansJson = text;
      this.revision += 1;
    }
  }

  setDataset(datasetId: string, raw: string): void {
    this.datasetId = datasetId;
    this.datasetRaw = raw;
    this.revision += 1;
  }

  /** Range problems that would earn a 400; checked before any request. */
  validate(): string[] {
    const problems: string[] = [];
    const { lower, upper } = this.defaults;
    const p = this.params;
    if (!this.datasetId) problems.push("no dataset loaded");
    if (p.w_c < 1) problems.push(`w_c must be at least 1, got ${p.w_c}`);
    if (p.w_q < 1) problems.push(`w_q must be at least 1, got ${p.w_q}`);
    if (!(p.c_ref >= lower && p.c_ref < upper)) {
      problems.push(`c_ref must lie in [${lower}, ${upper}), got ${p.c_ref}`);
    }
    if (!(p.hurwicz_alpha >= 0 && p.hurwicz_alpha <= 1)) {
      problems.push(`alpha must lie in [0, 1], got ${p.hurwicz_alpha}`);
    }
    if (!(p.sweep_increment > 0 && p.sweep_increment <= 0.5)) {
      problems.push(`increment must lie in (0, 0.5], got ${p.sweep_increment}`);
    }
    if (p.draws !== null && (!Number.isInteger(p.draws) || p.draws < 1)) {
      problems.push(`draws must be a positive integer, got ${p.draws}`);
    }
    if (!Number.isInteger(p.seed)) problems.push(`seed must be an integer, got ${p.seed}`);
    try {
      const plans = JSON.parse(this.plansJson || "[]");
      if (!Array.isArray(plans) || plans.length === 0) problems.push("plans must be a nonempty list");
    } catch (error) {
      problems.push(`plans are not valid JSON: ${(error as Error).message}`);
    }
    return problems;
  }

  buildRequest(kind: AnalysisKind): AnalysisRequest {
    if (!this.datasetId) throw new Error("no dataset loaded");
    const request: AnalysisRequest = {
      dataset_id: this.datasetId,
      plans: JSON.parse(this.plansJson) as unknown[],
      config: {
        w_c: this.params.w_c,
        w_q: this.params.w_q,
        c_ref: this.params.c_ref,
        hurwicz_alpha: this.params.hurwicz_alpha,
        sweep_increment: this.params.sweep_increment,
        // The seed travels into the request exactly as typed.
        seed: this.params.seed,
      },
    };
    if (kind === "montecarlo") {
      request.params = { seed: this.params.seed };
      if (this.params.draws !== null) request.params.draws = this.params.draws;
    } else if (kind === "sweep") {
      request.params = { increment: this.params.sweep_increment };
    }
    return request;
  }

  /** One in-flight analysis per kind; stale replies are discarded. */
  beginRun(kind: AnalysisKind): number | null {
    if (this.inFlight.has(kind)) return null;
    this.inFlight.add(kind);
    const token = (this.tokens.get(kind) ?? 0) + 1;
    this.tokens.set(kind, token);
    return token;
  }

  finishRun(kind: AnalysisKind, token: number, report: DecisionReport, raw: string, revision: number): boolean {
    this.inFlight.delete(kind);
    if (this.tokens.get(kind) !== token) return false;
    this.reports.set(kind, { report, raw, revision });
    return true;
  }

  abortRun(kind: AnalysisKind, token: number): void {
    if (this.tokens.get(kind) === token) this.inFlight.delete(kind);
  }

  reportFor(kind: AnalysisKind): StoredReport | undefined {
    return this.reports.get(kind);
  }

  isStale(kind: AnalysisKind): boolean {
    const stored = this.reports.get(kind);
    return stored === undefined || stored.revision !== this.revision;
  }

  get dirty(): boolean {
    for (const kind of this.reports.keys()) {
      if (this.isStale(kind)) return true;
    }
    return false;
  }

  /** The exact bytes to download; refused while the report is stale. */
  exportReport(kind: AnalysisKind): string {
    const stored = this.reports.get(kind);
    if (!stored) throw new Error(`no ${kind} report to export`);
    if (stored.revision !== this.revision) {
      throw new Error(`${kind} report is stale; re-run the analysis first`);
    }
    return stored.raw;
  }
}
