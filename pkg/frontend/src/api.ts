// Thin client over the documented /api/v1 endpoints. Nothing here talks
// to model or search providers; the backend is the only dependency.

import type {
  Comment,
  FactCheckList,
  Health,
  Post,
  PostDetail,
  PostList,
  VerificationJob,
  VerifyAccepted,
  VoteResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function detailOf(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText || "request failed";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await detailOf(response));
    }
    return (await response.json()) as T;
  }

  submitClaim(claimText: string): Promise<VerifyAccepted> {
    return this.request("POST", "/api/v1/verify", { claim_text: claimText });
  }

  getVerification(jobId: string): Promise<VerificationJob> {
    return this.request("GET", `/api/v1/verifications/${encodeURIComponent(jobId)}`);
  }

  listFactchecks(maxAgeDays?: number): Promise<FactCheckList> {
    const query = maxAgeDays === undefined ? "" : `?max_age_days=${maxAgeDays}`;
    return this.request("GET", `/api/v1/factchecks${query}`);
  }

  listPosts(sort: "new" | "top" = "new", page = 1): Promise<PostList> {
    return this.request("GET", `/api/v1/posts?sort=${sort}&page=${page}`);
  }

  createPost(input: {
    author_id: string;
    title: string;
    body?: string;
    linked_claim_id?: string | null;
  }): Promise<Post> {
    return this.request("POST", "/api/v1/posts", input);
  }

  getPost(postId: number): Promise<PostDetail> {
    return this.request("GET", `/api/v1/posts/${postId}`);
  }

  addComment(postId: number, authorId: string, body: string): Promise<Comment> {
    return this.request("POST", `/api/v1/posts/${postId}/comments`, {
      author_id: authorId,
      body,
    });
  }

  castVote(postId: number, voterId: string, direction: "up" | "down"): Promise<VoteResult> {
    return this.request("PUT", `/api/v1/posts/${postId}/vote`, {
      voter_id: voterId,
      direction,
    });
  }

  health(): Promise<Health> {
    return this.request("GET", "/health");
  }
}
