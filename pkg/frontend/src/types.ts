// Payload shapes of the /api/v1 contract (docs/schemas in the backend repo).

export type VerdictLabel = "Real" | "Fake" | "NEI";
export type Stance = "Support" | "Refute" | "Unrelated";
export type JobState = "queued" | "running" | "done" | "failed";

export interface EvidenceJudgment {
  stance: Stance;
  confidence: number;
  rationale: string;
  source_url: string;
}

export interface IterationTrace {
  round: number;
  query: { text: string; origin: "initial" | "reformulated"; round: number };
  results_retrieved: number;
  results_after_filter: number;
  judgments: EvidenceJudgment[];
  interim_label: VerdictLabel;
  interim_confidence: number;
}

export interface Verdict {
  label: VerdictLabel;
  confidence: number;
  explanation: string;
  iterations_used: number;
  wall_time: number;
  evidence: EvidenceJudgment[];
  traces: IterationTrace[];
}

export interface VerificationJob {
  id: string;
  claim_text: string;
  state: JobState;
  created_at: string;
  finished_at: string | null;
  verdict: Verdict | null;
  error: string | null;
}

export interface VerifyAccepted {
  job_id: string;
  poll_url: string;
}

export interface FactCheckItem {
  claim_text: string;
  claimant: string | null;
  review_publisher: string;
  review_url: string;
  rating_text: string;
  review_date: string;
}

export interface FactCheckList {
  items: FactCheckItem[];
  stale: boolean;
}

export interface Post {
  id: number;
  author_id: string;
  title: string;
  body: string;
  linked_claim_id: string | null;
  created_at: string;
  score: number;
}

export interface Comment {
  id: number;
  post_id: number;
  author_id: string;
  body: string;
  created_at: string;
}

export interface VerdictSummary {
  label: VerdictLabel;
  confidence: number;
}

export interface PostDetail {
  post: Post;
  comments: Comment[];
  verdict_summary: VerdictSummary | null;
}

export interface PostList {
  posts: Post[];
  page: number;
}

export interface VoteResult {
  post_id: number;
  score: number;
}

export interface Health {
  status: "ok" | "degraded";
  provider_mode: string;
}
