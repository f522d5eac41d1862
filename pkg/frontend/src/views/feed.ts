// Recent fact-checks: one card per review, newest first.

import { escapeHtml, formatDate } from "../html.js";
import type { FactCheckItem } from "../types.js";

export function renderFeedCard(item: FactCheckItem): string {
  const claimant = item.claimant ? ` &mdash; claimed by ${escapeHtml(item.claimant)}` : "";
  return `
    <article class="feed-card">
      <p class="feed-claim">${escapeHtml(item.claim_text)}${claimant}</p>
      <p class="feed-review">
        <span class="feed-rating">${escapeHtml(item.rating_text)}</span>
        by ${escapeHtml(item.review_publisher)}
        on ${formatDate(item.review_date)}
      </p>
      <a href="${escapeHtml(item.review_url)}" target="_blank" rel="noopener noreferrer">
        Read the fact-check
      </a>
    </article>
  `;
}

export function renderFeed(items: FactCheckItem[], stale: boolean): string {
  const banner = stale
    ? `<div class="stale-banner" role="status">Showing cached fact-checks; the feed could not be refreshed.</div>`
    : "";
  if (items.length === 0) {
    return `${banner}<p class="empty-state">No recent fact-checks to show.</p>`;
  }
  const newestFirst = [...items].sort((a, b) => b.review_date.localeCompare(a.review_date));
  return `${banner}<div class="feed-list">${newestFirst.map(renderFeedCard).join("")}</div>`;
}
