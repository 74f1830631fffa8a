/** Pure HTML renderers for the two console screens.
 *
 * Every number, band, and status string is taken verbatim from API response
 * fields held in controller state.
 */

import type { CaseState, QueueState } from "./state.js";
import type { ApplicationRecord, QueueRow, WhatIfResponse } from "./types.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function formatAge(createdAt: string, now: Date): string {
  const created = new Date(createdAt).getTime();
  const minutes = Math.max(0, Math.floor((now.getTime() - created) / 60_000));
  if (minutes < 60) return `${minutes}m`;
  const hours = Math.floor(minutes / 60);
  if (hours < 48) return `${hours}h`;
  return `${Math.floor(hours / 24)}d`;
}

function bandChip(band: string): string {
  return `<span class="chip band-${escapeHtml(band)}">${escapeHtml(band)}</span>`;
}

function statusChip(status: string): string {
  return `<span class="chip status-${escapeHtml(status)}" data-role="status-chip">${escapeHtml(status)}</span>`;
}

// --- queue screen -----------------------------------------------------------

export function renderQueueScreen(state: QueueState, now: Date): string {
  if (state.error !== null) {
    return [
      '<section class="queue">',
      `<div class="error" data-role="queue-error">Cannot reach the decision service: ${escapeHtml(state.error)}</div>`,
      '<button data-action="reload-queue">Retry</button>',
      "</section>",
    ].join("\n");
  }
  if (state.rows.length === 0) {
    return [
      '<section class="queue">',
      '<div class="empty" data-role="queue-empty">No cases waiting for review.</div>',
      '<button data-action="reload-queue">Refresh</button>',
      "</section>",
    ].join("\n");
  }
  const rows = state.rows
    .map(
      (row: QueueRow) => `
  <tr data-action="open-case" data-application-id="${escapeHtml(row.application_id)}">
    <td>${escapeHtml(row.application_id)}</td>
    <td>${escapeHtml(row.user_id)}</td>
    <td>${bandChip(row.band)}</td>
    <td>${row.flags.map(escapeHtml).join(", ")}</td>
    <td>${formatAge(row.created_at, now)}</td>
  </tr>`,
    )
    .join("");
  return [
    '<section class="queue">',
    `<h2>Review queue (${state.rows.length})</h2>`,
    "<table><thead><tr><th>Case</th><th>Applicant</th><th>Band</th><th>Flags</th><th>Age</th></tr></thead>",
    `<tbody>${rows}</tbody></table>`,
    '<button data-action="reload-queue">Refresh</button>',
    "</section>",
  ].join("\n");
}

// --- case screen ------------------------------------------------------------

function renderFlags(application: ApplicationRecord): string {
  const flags = application.decision?.verdict.flags ?? [];
  if (flags.length === 0) {
    return '<p data-role="no-flags">No compliance flags.</p>';
  }
  const items = flags
    .map((flag) => {
      const evidence = flag.evidence
        .map((ref) => `<code>${escapeHtml(ref.item_id)}</code> (${escapeHtml(ref.detail)})`)
        .join(", ");
      return `<li data-rule="${escapeHtml(flag.rule_id)}"><strong>${escapeHtml(flag.rule_id)}</strong> [${escapeHtml(flag.severity)}] ${escapeHtml(flag.category)} &mdash; evidence: ${evidence}</li>`;
    })
    .join("");
  return `<ul class="flags">${items}</ul>`;
}

function renderWhatIfPanel(state: CaseState): string {
  const application = state.application;
  if (application === null) return "";
  const items = [
    ...application.profile.text_items.map((t) => ({
      id: t.item_id,
      label: `text ${t.item_id}: ${t.text.slice(0, 60)}`,
    })),
    ...application.profile.image_items.map((i) => ({
      id: i.item_id,
      label: `image ${i.item_id}: ${i.labels.map((l) => l.label).join(", ")}`,
    })),
  ];
  const toggles = items
    .map((item) => {
      const checked = state.selectedExclusions.has(item.id) ? " checked" : "";
      return `<label><input type="checkbox" data-action="toggle-exclusion" data-item-id="${escapeHtml(item.id)}"${checked}> exclude ${escapeHtml(item.label)}</label>`;
    })
    .join("<br>");
  return [
    '<section class="what-if" data-role="what-if-panel">',
    "<h3>What-if reassessment</h3>",
    toggles || "<p>No content items to exclude.</p>",
    '<button data-action="reassess">Reassess without selected items</button>',
    renderWhatIfResult(state.whatIf),
    "</section>",
  ].join("\n");
}

export function renderWhatIfResult(whatIf: WhatIfResponse | null): string {
  if (whatIf === null) return "";
  const removed = whatIf.delta.flags_removed.map(escapeHtml).join(", ") || "none";
  return [
    '<div class="comparison" data-role="what-if-result">',
    "<table><thead><tr><th></th><th>Original</th><th>Hypothetical</th></tr></thead><tbody>",
    `<tr><td>Band</td><td>${bandChip(whatIf.original.band)}</td><td>${bandChip(whatIf.hypothetical.band)}</td></tr>`,
    `<tr><td>Verdict</td><td data-role="original-verdict">${escapeHtml(whatIf.original.verdict.status)}</td><td data-role="hypothetical-verdict">${escapeHtml(whatIf.hypothetical.verdict.status)}</td></tr>`,
    `<tr><td>Normalized</td><td>${whatIf.original.normalized_score.toFixed(4)}</td><td>${whatIf.hypothetical.normalized_score.toFixed(4)}</td></tr>`,
    "</tbody></table>",
    `<p>Flags removed: <span data-role="flags-removed">${removed}</span></p>`,
    "</div>",
  ].join("\n");
}

export function renderCaseScreen(state: CaseState, overrideNote = "", overrideBand = ""): string {
  if (state.error !== null && state.application === null) {
    return `<section class="case"><div class="error">${escapeHtml(state.error)}</div><button data-action="back-to-queue">Back</button></section>`;
  }
  const application = state.application;
  if (application === null || application.decision === null) {
    return '<section class="case"><div class="loading">Loading case&hellip;</div></section>';
  }
  const decision = application.decision;
  const explanation = state.explanation;
  const inReview = application.status === "in_review";
  const overrideReady = overrideBand !== "" && overrideNote.trim().length > 0;

  const parts = [
    '<section class="case">',
    '<button data-action="back-to-queue">&larr; Queue</button>',
    `<h2>${escapeHtml(application.application_id)} ${statusChip(application.status)} ${bandChip(decision.band)}</h2>`,
    state.conflictNotice !== null
      ? `<div class="conflict" data-role="conflict-notice">${escapeHtml(state.conflictNotice)}</div>`
      : "",
    state.error !== null ? `<div class="error">${escapeHtml(state.error)}</div>` : "",
    `<p class="narrative">${escapeHtml(explanation?.narrative ?? "")}</p>`,
    "<h3>Factors</h3>",
    `<ul>${(explanation?.factor_lines ?? []).map((line) => `<li>${escapeHtml(line)}</li>`).join("")}</ul>`,
    "<h3>Flags</h3>",
    renderFlags(application),
    "<h3>Citations</h3>",
    `<ul>${(explanation?.citations ?? [])
      .map(
        ([subject, docId, title]) =>
          `<li>[${escapeHtml(subject)}] ${escapeHtml(docId)}: ${escapeHtml(title)}</li>`,
      )
      .join("")}</ul>`,
    explanation?.recommendation
      ? `<p class="recommendation" data-role="recommendation">${escapeHtml(explanation.recommendation)}</p>`
      : "",
  ];

  if (inReview) {
    parts.push(
      '<section class="actions">',
      '<button data-action="approve">Approve</button>',
      '<fieldset><legend>Override band (note required)</legend>',
      '<select data-role="override-band"><option value="">choose band</option><option value="high">high</option><option value="moderate">moderate</option><option value="low">low</option></select>',
      `<input data-role="override-note" placeholder="mandatory note" value="${escapeHtml(overrideNote)}">`,
      `<button data-action="override"${overrideReady ? "" : " disabled"}>Override</button>`,
      "</fieldset>",
      '<input data-role="info-note" placeholder="what is missing?">',
      '<button data-action="request-info">Request info</button>',
      "</section>",
    );
  }
  parts.push(renderWhatIfPanel(state), "</section>");
  return parts.filter((part) => part !== "").join("\n");
}
