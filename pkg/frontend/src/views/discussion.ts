// Discussion hub rendering and the optimistic vote bookkeeping.

import { escapeHtml, formatDate } from "../html.js";
import type { Post, PostDetail } from "../types.js";

export function renderPostCard(post: Post): string {
  const link = post.linked_claim_id
    ? `<span class="post-linked">linked verification</span>`
    : "";
  return `
    <article class="post-card" data-post-id="${post.id}">
      <div class="vote-box">
        <button type="button" data-action="vote-up" data-post-id="${post.id}">&#9650;</button>
        <span class="post-score">${post.score}</span>
        <button type="button" data-action="vote-down" data-post-id="${post.id}">&#9660;</button>
      </div>
      <div class="post-main">
        <h3 class="post-title">${escapeHtml(post.title)}</h3>
        <p class="post-meta">by ${escapeHtml(post.author_id)} on ${formatDate(post.created_at)} ${link}</p>
      </div>
    </article>
  `;
}

export function renderPostList(posts: Post[]): string {
  if (posts.length === 0) {
    return `<p class="empty-state">No posts yet. Start a discussion about a suspicious claim.</p>`;
  }
  return `<div class="post-list">${posts.map(renderPostCard).join("")}</div>`;
}

export function renderPostDetail(detail: PostDetail): string {
  const summary = detail.verdict_summary
    ? `<p class="verdict-summary">Verification: <strong>${detail.verdict_summary.label}</strong>
       (${detail.verdict_summary.confidence}%)</p>`
    : "";
  const comments = detail.comments
    .map(
      (comment) => `
        <li class="comment">
          <span class="comment-author">${escapeHtml(comment.author_id)}</span>
          <span class="comment-body">${escapeHtml(comment.body)}</span>
        </li>
      `,
    )
    .join("");
  return `
    <article class="post-detail" data-post-id="${detail.post.id}">
      ${renderPostCard(detail.post)}
      ${summary}
      <p class="post-body">${escapeHtml(detail.post.body)}</p>
      <ul class="comment-list">${comments}</ul>
    </article>
  `;
}

export type VoteDirection = "up" | "down";

// Score shown immediately on click, before the server answers. The
// server's returned score then replaces it (see reconcileScore).
export function optimisticScore(
  currentScore: number,
  previous: VoteDirection | null,
  next: VoteDirection,
): number {
  if (previous === next) return currentScore;
  const delta = next === "up" ? 1 : -1;
  return previous === null ? currentScore + delta : currentScore + 2 * delta;
}

export function reconcileScore(_optimistic: number, serverScore: number): number {
  return serverScore;
}

export function renderToast(message: string): string {
  return `<div class="toast" role="alert">${escapeHtml(message)}</div>`;
}
