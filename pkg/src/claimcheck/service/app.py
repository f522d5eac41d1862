"""RESTful backend: verification jobs, fact-check feed, community endpoints.

JSON only, versioned under /api/v1. Verification runs as background
jobs; clients poll GET /api/v1/verifications/{id} until done or failed.
"""

from __future__ import annotations

from contextlib import asynccontextmanager
from datetime import datetime, timedelta, timezone

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from ..config import AppConfig
from ..errors import NotFoundError, ValidationError
from ..factfeed import filter_fresh
from ..pipeline import verify_claim
from .jobs import JobManager, JobState, QueueFullError
from .runtime import Runtime, build_runtime


class VerifyRequest(BaseModel):
    claim_text: str


class PostCreate(BaseModel):
    author_id: str
    title: str
    body: str = ""
    linked_claim_id: str | None = None


class CommentCreate(BaseModel):
    author_id: str
    body: str


class VoteRequest(BaseModel):
    voter_id: str
    direction: str


def create_app(config: AppConfig | None = None, runtime: Runtime | None = None) -> FastAPI:
    config = config or AppConfig()
    runtime = runtime or build_runtime(config)
    pipeline_config = config.runtime_pipeline()
    jobs = JobManager(
        runner=lambda claim: verify_claim(claim, pipeline_config, runtime.verifier_deps),
        workers=config.service.workers,
        capacity=config.service.queue_capacity,
    )

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        jobs.close()

    app = FastAPI(title="claimcheck", version="0.1.0", lifespan=lifespan)
    app.state.runtime = runtime
    app.state.jobs = jobs

    @app.exception_handler(NotFoundError)
    async def _not_found(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(ValidationError)
    async def _invalid(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(QueueFullError)
    async def _full(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=429, content={"detail": str(exc)})

    # ---- verification ----

    @app.post("/api/v1/verify", status_code=202)
    def submit_claim(body: VerifyRequest):
        text = body.claim_text.strip()
        if not text:
            raise HTTPException(status_code=422, detail="claim_text must be non-empty")
        if len(text) > config.service.max_claim_chars:
            raise HTTPException(
                status_code=422,
                detail=f"claim_text exceeds {config.service.max_claim_chars} characters",
            )
        job = jobs.submit(text)
        return {"job_id": job.id, "poll_url": f"/api/v1/verifications/{job.id}"}

    @app.get("/api/v1/verifications/{job_id}")
    def get_verification(job_id: str):
        return jobs.get(job_id).to_dict()

    # ---- fact-check feed ----

    @app.get("/api/v1/factchecks")
    def get_factchecks(max_age_days: int | None = Query(default=None, ge=0)):
        items, stale = runtime.feed_cache.get()
        days = config.feed.max_age_days if max_age_days is None else max_age_days
        fresh = filter_fresh(items, timedelta(days=days), datetime.now(timezone.utc))
        fresh = sorted(fresh, key=lambda i: i.review_date, reverse=True)
        return {"items": [i.to_dict() for i in fresh], "stale": stale}

    # ---- community ----

    store = runtime.community

    @app.get("/api/v1/posts")
    def list_posts(
        sort: str = Query(default="new"),
        page: int = Query(default=1, ge=1),
        page_size: int = Query(default=20, ge=1, le=100),
    ):
        posts = store.list_posts(sort=sort, page=page, page_size=page_size)
        return {"posts": [p.to_dict() for p in posts], "page": page}

    @app.post("/api/v1/posts", status_code=201)
    def create_post(body: PostCreate):
        post = store.create_post(
            author_id=body.author_id,
            title=body.title,
            body=body.body,
            linked_claim_id=body.linked_claim_id,
        )
        return post.to_dict()

    @app.get("/api/v1/posts/{post_id}")
    def get_post(post_id: int):
        post = store.get_post(post_id)
        comments = store.list_comments(post_id)
        verdict_summary = None
        if post.linked_claim_id:
            try:
                job = jobs.get(post.linked_claim_id)
                if job.state is JobState.DONE and job.verdict is not None:
                    verdict_summary = {
                        "label": job.verdict.label.value,
                        "confidence": job.verdict.confidence,
                    }
            except NotFoundError:
                pass
        return {
            "post": post.to_dict(),
            "comments": [c.to_dict() for c in comments],
            "verdict_summary": verdict_summary,
        }

    @app.post("/api/v1/posts/{post_id}/comments", status_code=201)
    def add_comment(post_id: int, body: CommentCreate):
        return store.add_comment(post_id, body.author_id, body.body).to_dict()

    @app.put("/api/v1/posts/{post_id}/vote")
    def cast_vote(post_id: int, body: VoteRequest):
        score = store.cast_vote(post_id, body.voter_id, body.direction)
        return {"post_id": post_id, "score": score}

    # ---- health ----

    @app.get("/health")
    def health():
        return {
            "status": "ok" if runtime.healthy else "degraded",
            "provider_mode": runtime.provider_mode,
        }

    return app
