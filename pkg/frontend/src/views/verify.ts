// Claim submission and verdict rendering: label badge, confidence bar,
// explanation, and the evidence links with their per-source stances.

import { escapeHtml } from "../html.js";
import type { VerdictLabel, VerificationJob } from "../types.js";

const BADGE_CLASS: Record<VerdictLabel, string> = {
  Real: "badge badge-real",
  Fake: "badge badge-fake",
  NEI: "badge badge-nei",
};

const STANCE_CLASS: Record<string, string> = {
  Support: "stance stance-support",
  Refute: "stance stance-refute",
  Unrelated: "stance stance-unrelated",
};

export function renderProgress(claimText: string, polls: number): string {
  return `
    <div class="verify-progress" role="status">
      <p class="progress-claim">${escapeHtml(claimText)}</p>
      <p class="progress-note">Checking evidence (poll ${polls})&hellip;</p>
      <div class="spinner"></div>
    </div>
  `;
}

export function renderVerdict(job: VerificationJob): string {
  const verdict = job.verdict;
  if (job.state !== "done" || verdict === null) {
    throw new Error("renderVerdict needs a completed job");
  }
  const evidence = verdict.evidence
    .map(
      (judgment) => `
        <li class="evidence-item">
          <a href="${escapeHtml(judgment.source_url)}" target="_blank" rel="noopener noreferrer">
            ${escapeHtml(judgment.source_url)}
          </a>
          <span class="${STANCE_CLASS[judgment.stance] ?? "stance"}">${escapeHtml(judgment.stance)}</span>
          <span class="evidence-confidence">${judgment.confidence}</span>
        </li>
      `,
    )
    .join("");
  return `
    <article class="verdict-panel">
      <header>
        <span class="${BADGE_CLASS[verdict.label]}">${verdict.label}</span>
        <div class="confidence-bar" aria-label="confidence ${verdict.confidence} of 100">
          <div class="confidence-fill" style="width: ${verdict.confidence}%"></div>
        </div>
        <span class="confidence-number">${verdict.confidence}%</span>
      </header>
      <p class="claim-text">${escapeHtml(job.claim_text)}</p>
      <p class="explanation">${escapeHtml(verdict.explanation)}</p>
      <p class="iterations">Rounds used: ${verdict.iterations_used}</p>
      <ul class="evidence-list">${evidence}</ul>
    </article>
  `;
}

export function renderFailure(message: string): string {
  return `
    <div class="error-panel" role="alert">
      <p class="error-message">${escapeHtml(message)}</p>
      <button type="button" class="retry-button" data-action="retry">Retry</button>
    </div>
  `;
}

export function renderInlineRejection(detail: string): string {
  return `<p class="inline-error">${escapeHtml(detail)}</p>`;
}
