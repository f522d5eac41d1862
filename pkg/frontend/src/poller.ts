// Poll a verification job until it settles. One request in flight at a
// time; the interval backs off so long jobs do not hammer the backend.

import type { ApiClient } from "./api.js";
import type { VerificationJob } from "./types.js";

export class PollTimeoutError extends Error {
  constructor(public readonly jobId: string) {
    super(`verification ${jobId} did not settle in time`);
    this.name = "PollTimeoutError";
  }
}

export interface PollOptions {
  intervalMs?: number;
  backoffFactor?: number;
  maxIntervalMs?: number;
  timeoutMs?: number;
  sleep?: (ms: number) => Promise<void>;
  onPoll?: (job: VerificationJob) => void;
}

const defaultSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export async function pollVerification(
  client: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<VerificationJob> {
  const intervalMs = options.intervalMs ?? 1000;
  const backoffFactor = options.backoffFactor ?? 1.5;
  const maxIntervalMs = options.maxIntervalMs ?? 5000;
  const timeoutMs = options.timeoutMs ?? 60_000;
  const sleep = options.sleep ?? defaultSleep;

  let waited = 0;
  let interval = intervalMs;
  for (;;) {
    const job = await client.getVerification(jobId);
    options.onPoll?.(job);
    if (job.state === "done" || job.state === "failed") {
      return job;
    }
    if (waited >= timeoutMs) {
      throw new PollTimeoutError(jobId);
    }
    await sleep(interval);
    waited += interval;
    interval = Math.min(interval * backoffFactor, maxIntervalMs);
  }
}
