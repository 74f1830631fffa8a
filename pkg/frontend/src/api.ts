/** Typed client for the decision service; the console issues only these calls. */

import type {
  ApplicationRecord,
  ExplanationReport,
  QueueRow,
  ReviewActionBody,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly errorName: string,
    detail: string,
  ) {
    super(`${errorName} (${status}): ${detail}`);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let name = "HttpError";
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    name = body.error ?? name;
    detail = body.detail ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, name, detail);
}

export class ApiClient {
  constructor(public readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  fetchQueue(): Promise<QueueRow[]> {
    return this.request<QueueRow[]>("/review-queue");
  }

  fetchApplication(applicationId: string): Promise<ApplicationRecord> {
    return this.request<ApplicationRecord>(`/applications/${applicationId}`);
  }

  fetchExplanation(applicationId: string): Promise<ExplanationReport> {
    return this.request<ExplanationReport>(`/applications/${applicationId}/explanation`);
  }

  submitReview(applicationId: string, body: ReviewActionBody): Promise<ApplicationRecord> {
    return this.request<ApplicationRecord>(`/applications/${applicationId}/review`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  reassess(applicationId: string, excludeItemIds: string[]): Promise<WhatIfResponse> {
    return this.request<WhatIfResponse>(`/applications/${applicationId}/what-if`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ exclude_item_ids: excludeItemIds }),
    });
  }

  submitProfile(document: string): Promise<{ application_id: string }> {
    return this.request<{ application_id: string }>("/applications", {
      method: "POST",
      body: document,
    });
  }
}
