import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

function stubFetch(status: number, body: string, capture?: { url?: string; init?: RequestInit }) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    if (capture) {
      capture.url = url;
      capture.init = init;
    }
    return new Response(body, { status, headers: { "content-type": "application/json" } });
  };
}

describe("ApiClient", () => {
  it("keeps the raw body alongside the parsed one", async () => {
    const raw = '{"w_c":2.0,"seed":0}';
    const client = new ApiClient("", stubFetch(200, raw));
    const response = await client.getDefaults();
    expect(response.raw).toBe(raw);
    expect((response.body as { w_c: number }).w_c).toBe(2);
  });

  it("maps structured error bodies onto ApiError", async () => {
    const body = '{"error":{"type":"ParseError","message":"bad row","row":3}}';
    const client = new ApiClient("", stubFetch(400, body));
    try {
      await client.uploadDataset("x");
      expect.unreachable("should have thrown");
    } catch (error) {
      const apiError = error as ApiError;
      expect(apiError).toBeInstanceOf(ApiError);
      expect(apiError.status).toBe(400);
      expect(apiError.detail.type).toBe("ParseError");
      expect(apiError.detail.row).toBe(3);
    }
  });

  it("posts analyses to the kind-specific route", async () => {
    const capture: { url?: string; init?: RequestInit } = {};
    const client = new ApiClient("http://svc", stubFetch(200, '{"kind":"Rank"}', capture));
    await client.runAnalysis("rank", { dataset_id: "d", plans: [] });
    expect(capture.url).toBe("http://svc/api/analyses/rank");
    expect(JSON.parse(capture.init?.body as string).dataset_id).toBe("d");
  });

  it("wraps unparseable bodies", async () => {
    const client = new ApiClient("", stubFetch(502, "<html>bad gateway</html>"));
    await expect(client.getDefaults()).rejects.toBeInstanceOf(ApiError);
  });
});
