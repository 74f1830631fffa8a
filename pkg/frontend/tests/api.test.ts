import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { CaseController, QueueController, canSubmitOverride } from "../src/state.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("hits the documented endpoints with the right methods", async () => {
    const calls: { url: string; method: string; body: string | null }[] = [];
    vi.stubGlobal(
      "fetch",
      vi.fn(async (url: string, init?: RequestInit) => {
        calls.push({
          url: String(url),
          method: init?.method ?? "GET",
          body: (init?.body as string | undefined) ?? null,
        });
        return jsonResponse([]);
      }),
    );
    const api = new ApiClient("http://svc:1");
    await api.fetchQueue();
    await api.fetchApplication("app-1");
    await api.fetchExplanation("app-1");
    await api.submitReview("app-1", { reviewer: "o", action: "approve", note: "" });
    await api.reassess("app-1", ["i1"]);

    expect(calls.map((c) => `${c.method} ${c.url}`)).toEqual([
      "GET http://svc:1/review-queue",
      "GET http://svc:1/applications/app-1",
      "GET http://svc:1/applications/app-1/explanation",
      "POST http://svc:1/applications/app-1/review",
      "POST http://svc:1/applications/app-1/what-if",
    ]);
    expect(JSON.parse(calls[4].body ?? "")).toEqual({ exclude_item_ids: ["i1"] });
  });

  it("maps error bodies onto ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => jsonResponse({ error: "UnknownApplication", detail: "no app" }, 404)),
    );
    const api = new ApiClient("http://svc:1");
    await expect(api.fetchApplication("nope")).rejects.toMatchObject({
      status: 404,
      errorName: "UnknownApplication",
    });
  });

  it("flags 409 responses as conflicts", () => {
    expect(new ApiError(409, "NotInReview", "x").isConflict).toBe(true);
    expect(new ApiError(400, "SchemaViolation", "x").isConflict).toBe(false);
  });
});

describe("QueueController", () => {
  it("surfaces fetch failures as a retryable error state", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => {
        throw new Error("ECONNREFUSED");
      }),
    );
    const controller = new QueueController(new ApiClient("http://svc:1"));
    const state = await controller.load();
    expect(state.error).toContain("ECONNREFUSED");
    expect(state.rows).toEqual([]);
  });
});

describe("CaseController", () => {
  it("clears a stale comparison when toggles change", () => {
    const controller = new CaseController(new ApiClient("http://svc:1"), "app-1");
    controller.state = {
      ...controller.state,
      whatIf: {} as never,
    };
    controller.toggleExclusion("i1");
    expect(controller.state.whatIf).toBeNull();
    expect(controller.state.selectedExclusions.has("i1")).toBe(true);
    controller.toggleExclusion("i1");
    expect(controller.state.selectedExclusions.has("i1")).toBe(false);
  });

  it("shows a conflict notice and reloads on 409", async () => {
    const application = {
      application_id: "app-1",
      profile: { user_id: "u", display_name: "", text_items: [], image_items: [] },
      status: "resolved",
      decision: null,
      created_at: "2025-08-01T00:00:00Z",
      updated_at: "2025-08-01T00:00:00Z",
    };
    vi.stubGlobal(
      "fetch",
      vi.fn(async (url: string, init?: RequestInit) => {
        if (init?.method === "POST") {
          return jsonResponse({ error: "NotInReview", detail: "already resolved" }, 409);
        }
        if (String(url).endsWith("/explanation")) {
          return jsonResponse({
            decision_id: "d",
            narrative: "",
            factor_lines: [],
            citations: [],
            recommendation: null,
          });
        }
        return jsonResponse(application);
      }),
    );
    const controller = new CaseController(new ApiClient("http://svc:1"), "app-1");
    const state = await controller.approve("officer");
    expect(state.conflictNotice).toContain("another reviewer");
    expect(state.application?.status).toBe("resolved");
  });
});

describe("override guard", () => {
  it("requires both a band and a nonempty note", () => {
    expect(canSubmitOverride("", "note")).toBe(false);
    expect(canSubmitOverride("high", "")).toBe(false);
    expect(canSubmitOverride("high", "   ")).toBe(false);
    expect(canSubmitOverride("high", "context clarified")).toBe(true);
  });
});
