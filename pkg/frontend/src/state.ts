/** Console view-model: all displayed values come from API responses.
 *
 * Nothing in here recomputes scores, bands, or verdicts; controllers only
 * fetch, hold, and hand response fields to the renderers.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  ApplicationRecord,
  Band,
  ExplanationReport,
  QueueRow,
  ReviewActionKind,
  WhatIfResponse,
} from "./types.js";

export interface QueueState {
  rows: QueueRow[];
  loading: boolean;
  error: string | null;
}

export class QueueController {
  state: QueueState = { rows: [], loading: false, error: null };

  constructor(private readonly api: ApiClient) {}

  async load(): Promise<QueueState> {
    this.state = { ...this.state, loading: true };
    try {
      const rows = await this.api.fetchQueue();
      this.state = { rows, loading: false, error: null };
    } catch (err) {
      // Keep stale rows; surface a retryable error banner.
      this.state = {
        rows: this.state.rows,
        loading: false,
        error: err instanceof Error ? err.message : String(err),
      };
    }
    return this.state;
  }
}

export interface CaseState {
  application: ApplicationRecord | null;
  explanation: ExplanationReport | null;
  selectedExclusions: Set<string>;
  whatIf: WhatIfResponse | null;
  conflictNotice: string | null;
  error: string | null;
  busy: boolean;
}

function emptyCaseState(): CaseState {
  return {
    application: null,
    explanation: null,
    selectedExclusions: new Set(),
    whatIf: null,
    conflictNotice: null,
    error: null,
    busy: false,
  };
}

/** Guard mirroring the server invariant: band override needs a nonempty note. */
export function canSubmitOverride(band: Band | "", note: string): boolean {
  return band !== "" && note.trim().length > 0;
}

export class CaseController {
  state: CaseState = emptyCaseState();

  constructor(
    private readonly api: ApiClient,
    public readonly applicationId: string,
  ) {}

  async load(): Promise<CaseState> {
    this.state = { ...emptyCaseState(), busy: true };
    try {
      const application = await this.api.fetchApplication(this.applicationId);
      const explanation = await this.api.fetchExplanation(this.applicationId);
      this.state = { ...this.state, application, explanation, busy: false };
    } catch (err) {
      this.state = {
        ...this.state,
        busy: false,
        error: err instanceof Error ? err.message : String(err),
      };
    }
    return this.state;
  }

  toggleExclusion(itemId: string): CaseState {
    const next = new Set(this.state.selectedExclusions);
    if (next.has(itemId)) {
      next.delete(itemId);
    } else {
      next.add(itemId);
    }
    // A stale comparison would misstate what the toggles would produce.
    this.state = { ...this.state, selectedExclusions: next, whatIf: null };
    return this.state;
  }

  async reassess(): Promise<CaseState> {
    this.state = { ...this.state, busy: true, error: null };
    try {
      const whatIf = await this.api.reassess(this.applicationId, [
        ...this.state.selectedExclusions,
      ]);
      this.state = { ...this.state, whatIf, busy: false };
    } catch (err) {
      this.state = {
        ...this.state,
        busy: false,
        error: err instanceof Error ? err.message : String(err),
      };
    }
    return this.state;
  }

  async approve(reviewer: string): Promise<CaseState> {
    return this.review({ action: "approve", reviewer });
  }

  async overrideBand(reviewer: string, band: Band, note: string): Promise<CaseState> {
    return this.review({ action: "override_band", reviewer, band, note });
  }

  async requestInfo(reviewer: string, note: string): Promise<CaseState> {
    return this.review({ action: "request_info", reviewer, note });
  }

  private async review(input: {
    action: ReviewActionKind;
    reviewer: string;
    band?: Band;
    note?: string;
  }): Promise<CaseState> {
    this.state = { ...this.state, busy: true, error: null, conflictNotice: null };
    try {
      const application = await this.api.submitReview(this.applicationId, {
        reviewer: input.reviewer,
        action: input.action,
        note: input.note ?? "",
        new_band: input.band,
      });
      this.state = { ...this.state, application, busy: false };
    } catch (err) {
      if (err instanceof ApiError && err.isConflict) {
        // Someone else resolved the case; show a notice and reload.
        this.state = {
          ...this.state,
          busy: false,
          conflictNotice: "Case was resolved by another reviewer; reloading.",
        };
        await this.load();
        this.state = {
          ...this.state,
          conflictNotice: "Case was resolved by another reviewer; reloading.",
        };
      } else {
        this.state = {
          ...this.state,
          busy: false,
          error: err instanceof Error ? err.message : String(err),
        };
      }
    }
    return this.state;
  }
}
