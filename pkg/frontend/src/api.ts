import type { AnalysisDefaults, AnalysisKind, AnalysisRequest, DatasetSummary, DecisionReport } from "./types";

export interface ApiResponse<T> {
  status: number;
  /** The exact response body; displayed numbers are sliced from it. */
  raw: string;
  body: T;
}

export interface ApiErrorBody {
  error: { type: string; message: string; [key: string]: unknown };
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: ApiErrorBody["error"],
  ) {
    super(`${detail.type}: ${detail.message}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin transport wrapper; every number the console shows comes from here. */
export class ApiClient {
  constructor(
    private baseUrl = "",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<ApiResponse<T>> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const raw = await response.text();
    let body: unknown;
    try {
      body = JSON.parse(raw);
    } catch {
      throw new ApiError(response.status, { type: "BadResponse", message: raw.slice(0, 200) });
    }
    if (!response.ok) {
      const error = (body as ApiErrorBody).error ?? {
        type: "HttpError",
        message: `status ${response.status}`,
      };
      throw new ApiError(response.status, error);
    }
    return { status: response.status, raw, body: body as T };
  }

  getDefaults(): Promise<ApiResponse<AnalysisDefaults>> {
    return this.request("/api/defaults");
  }

  uploadDataset(csv: string): Promise<ApiResponse<DatasetSummary>> {
    return this.request("/api/datasets", {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
  }

  runAnalysis(kind: AnalysisKind, request: AnalysisRequest): Promise<ApiResponse<DecisionReport>> {
    return this.request(`/api/analyses/${kind}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  getAnalysis(digest: string): Promise<ApiResponse<DecisionReport>> {
    return this.request(`/api/analyses/${digest}`);
  }
}
