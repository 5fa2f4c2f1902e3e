export type AnalysisKind = "rank" | "gonogo" | "sweep" | "montecarlo";

export interface DecisionReport {
  kind: string;
  digest: string;
  payload: Record<string, unknown>;
  human_log: string;
}

export interface AnalysisDefaults {
  lower: number;
  upper: number;
  w_q: number;
  w_c: number;
  c_ref: number;
  k_q_nominal: number;
  max_possible_cost: number;
  max_possible_lifespan: number | null;
  households: number;
  hurwicz_alpha: number;
  sweep_increment: number;
  fit_tolerance: number;
  seed: number;
  pilot_n: number;
}

export interface AttributeSummary {
  plan_id: string;
  attribute_id: string;
  count: number;
  mean_max_cost: number;
  stdev_max_cost: number;
  mean_utilization: number;
  stdev_utilization: number;
}

export interface DatasetSummary {
  dataset_id: string;
  record_count: number;
  attributes: AttributeSummary[];
  has_lifespan: boolean;
}

export interface HistogramBin {
  lowerEdge: number;
  count: number;
}

export interface MonteCarloPayload {
  label: string;
  result: {
    draw_count: number;
    mean_delta: number;
    stdev_delta: number;
    share_below_zero: number;
    histogram: [number, number][];
    seed: number;
  };
}

export interface AnalysisRequest {
  dataset_id: string;
  plans?: unknown[];
  config?: Record<string, unknown>;
  params?: Record<string, unknown>;
}
