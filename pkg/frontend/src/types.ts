/** Wire types mirroring the decision service's HTTP responses. */

export type Band = "high" | "moderate" | "low";
export type VerdictStatus = "pass" | "alert" | "fail";
export type ApplicationStatus = "pending" | "decided" | "in_review" | "resolved";

export interface EvidenceRef {
  item_id: string;
  modality: "text" | "image" | "graph";
  detail: string;
}

export interface ComplianceFlag {
  rule_id: string;
  category: string;
  severity: "alert" | "fail";
  policy_tag: string;
  evidence: EvidenceRef[];
}

export interface Verdict {
  status: VerdictStatus;
  f_value: number;
  flags: ComplianceFlag[];
  review_required: boolean;
}

export interface Decision {
  decision_id: string;
  user_id: string;
  raw_score: number;
  normalized_score: number;
  band: Band;
  components: { text: number; image: number; graph: number; penalty: number };
  verdict: Verdict;
  model_version: string;
  timestamp: string;
}

export interface ProfileTextItem {
  item_id: string;
  source: string;
  kind: string;
  text: string;
  timestamp: string;
}

export interface ProfileImageItem {
  item_id: string;
  source: string;
  labels: { label: string; confidence: number }[];
  timestamp: string;
}

export interface ProfileDocument {
  user_id: string;
  display_name: string;
  text_items: ProfileTextItem[];
  image_items: ProfileImageItem[];
}

export interface ApplicationRecord {
  application_id: string;
  profile: ProfileDocument;
  status: ApplicationStatus;
  decision: Decision | null;
  created_at: string;
  updated_at: string;
}

export interface QueueRow {
  application_id: string;
  user_id: string;
  band: Band;
  flags: string[];
  status: ApplicationStatus;
  created_at: string;
}

export interface ExplanationReport {
  decision_id: string;
  narrative: string;
  factor_lines: string[];
  citations: [string, string, string][];
  recommendation: string | null;
}

export interface WhatIfDelta {
  band_from: Band;
  band_to: Band;
  normalized_delta: number;
  flags_removed: string[];
  flags_added: string[];
}

export interface WhatIfResponse {
  original: Decision;
  hypothetical: Decision;
  delta: WhatIfDelta;
}

export type ReviewActionKind = "approve" | "override_band" | "request_info";

export interface ReviewActionBody {
  reviewer: string;
  action: ReviewActionKind;
  note?: string;
  new_band?: Band;
}
