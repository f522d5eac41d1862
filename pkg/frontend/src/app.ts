// DOM bootstrap shared by the extension popup and the standalone page.
// All rendering goes through the pure view functions; this file only
// wires events and swaps innerHTML.

import { ApiClient, ApiError } from "./api.js";
import { pollVerification, PollTimeoutError } from "./poller.js";
import { activate, canActivate, initialState, jobSettled, ViewName, ViewState } from "./state.js";
import {
  optimisticScore,
  renderPostDetail,
  renderPostList,
  renderToast,
  VoteDirection,
} from "./views/discussion.js";
import { renderFeed } from "./views/feed.js";
import {
  renderFailure,
  renderInlineRejection,
  renderProgress,
  renderVerdict,
} from "./views/verify.js";

const BASE_URL_KEY = "claimcheck.baseUrl";
const DEFAULT_BASE_URL = "http://127.0.0.1:8000";
const USER_ID_KEY = "claimcheck.userId";

function storedBaseUrl(): string {
  return localStorage.getItem(BASE_URL_KEY) ?? DEFAULT_BASE_URL;
}

function userId(): string {
  let existing = localStorage.getItem(USER_ID_KEY);
  if (!existing) {
    existing = `user-${Math.random().toString(36).slice(2, 10)}`;
    localStorage.setItem(USER_ID_KEY, existing);
  }
  return existing;
}

export function startApp(root: Document = document): void {
  let state: ViewState = initialState();
  let client = new ApiClient(storedBaseUrl());
  const myVotes = new Map<number, VoteDirection>();

  const panel = (name: string) => root.querySelector<HTMLElement>(`[data-panel="${name}"]`)!;
  const output = panel("Verify").querySelector<HTMLElement>(".verify-output")!;

  function showView(view: ViewName) {
    state = activate(state, view);
    root.querySelectorAll<HTMLElement>("[data-panel]").forEach((element) => {
      element.hidden = element.dataset.panel !== state.activeView;
    });
    root.querySelectorAll<HTMLElement>("[data-tab]").forEach((tab) => {
      const name = tab.dataset.tab as ViewName;
      tab.classList.toggle("active", name === state.activeView);
      tab.toggleAttribute("disabled", !canActivate(state, name));
    });
    if (state.activeView === "Discussion") void loadPosts();
    if (state.activeView === "StayInformed") void loadFeed();
    if (state.activeView === "Explanation" && state.lastJob) {
      panel("Explanation").innerHTML = renderVerdict(state.lastJob);
    }
  }

  async function submit(claimText: string) {
    output.innerHTML = renderProgress(claimText, 0);
    let polls = 0;
    try {
      const accepted = await client.submitClaim(claimText);
      state = { ...state, pendingJob: accepted.job_id };
      const job = await pollVerification(client, accepted.job_id, {
        intervalMs: state.pollIntervalMs,
        onPoll: () => {
          polls += 1;
          output.innerHTML = renderProgress(claimText, polls);
        },
      });
      state = jobSettled(state, job);
      if (job.state === "done") {
        output.innerHTML = renderVerdict(job);
        panel("Explanation").innerHTML = renderVerdict(job);
        showView("Explanation");
      } else {
        output.innerHTML = renderFailure(job.error ?? "verification failed");
      }
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        output.innerHTML = renderInlineRejection(error.detail);
      } else if (error instanceof PollTimeoutError) {
        output.innerHTML = renderFailure("Still working; the check timed out. Retry?");
      } else {
        output.innerHTML = renderFailure(String(error));
      }
    }
  }

  async function loadPosts() {
    const container = panel("Discussion").querySelector<HTMLElement>(".discussion-output")!;
    try {
      const list = await client.listPosts("top");
      container.innerHTML = renderPostList(list.posts);
    } catch (error) {
      container.innerHTML = renderToast(String(error));
    }
  }

  async function loadFeed() {
    const container = panel("StayInformed")!;
    try {
      const feed = await client.listFactchecks();
      container.innerHTML = renderFeed(feed.items, feed.stale);
    } catch (error) {
      container.innerHTML = renderToast(String(error));
    }
  }

  async function vote(postId: number, direction: VoteDirection, scoreElement: HTMLElement) {
    const previous = myVotes.get(postId) ?? null;
    const shown = Number(scoreElement.textContent ?? "0");
    scoreElement.textContent = String(optimisticScore(shown, previous, direction));
    myVotes.set(postId, direction);
    try {
      const result = await client.castVote(postId, userId(), direction);
      scoreElement.textContent = String(result.score);
    } catch (error) {
      scoreElement.textContent = String(shown);
      if (previous) myVotes.set(postId, previous);
      else myVotes.delete(postId);
      panel("Discussion").insertAdjacentHTML("beforeend", renderToast(String(error)));
    }
  }

  root.querySelectorAll<HTMLElement>("[data-tab]").forEach((tab) => {
    tab.addEventListener("click", () => showView(tab.dataset.tab as ViewName));
  });

  const form = root.querySelector<HTMLFormElement>("#verify-form")!;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = form.querySelector<HTMLTextAreaElement>("#claim-input")!;
    const text = input.value.trim();
    if (text) void submit(text);
  });

  const postForm = root.querySelector<HTMLFormElement>("#post-form");
  postForm?.addEventListener("submit", async (event) => {
    event.preventDefault();
    const title = postForm.querySelector<HTMLInputElement>("#post-title")!;
    const body = postForm.querySelector<HTMLTextAreaElement>("#post-body")!;
    if (!title.value.trim()) return;
    try {
      await client.createPost({
        author_id: userId(),
        title: title.value,
        body: body.value,
        linked_claim_id: state.lastJob?.id ?? null,
      });
      title.value = "";
      body.value = "";
      await loadPosts();
    } catch (error) {
      panel("Discussion").insertAdjacentHTML("beforeend", renderToast(String(error)));
    }
  });

  panel("Discussion").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.dataset.action;
    if (action !== "vote-up" && action !== "vote-down") return;
    const postId = Number(target.dataset.postId);
    const scoreElement = target
      .closest(".vote-box")!
      .querySelector<HTMLElement>(".post-score")!;
    void vote(postId, action === "vote-up" ? "up" : "down", scoreElement);
  });

  const settings = root.querySelector<HTMLInputElement>("#base-url");
  if (settings) {
    settings.value = storedBaseUrl();
    settings.addEventListener("change", () => {
      localStorage.setItem(BASE_URL_KEY, settings.value.trim() || DEFAULT_BASE_URL);
      client = new ApiClient(storedBaseUrl());
    });
  }

  showView("Verify");
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  startApp();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => startApp());
}

export { renderPostDetail };
