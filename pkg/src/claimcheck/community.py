"""Persistent community layer: posts, comments, and per-user votes.

Two interchangeable stores: an in-memory one for tests and an embedded
SQLite one for deployment. A post's score is always derived from its
vote set, and one voter holds at most one vote per post (re-casting the
same direction is a no-op, the opposite direction replaces it).

Author and voter identifiers are opaque caller-supplied strings; there
is no account system here.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .errors import NotFoundError, ValidationError

VOTE_DIRECTIONS = ("up", "down")


@dataclass(frozen=True)
class Post:
    id: int
    author_id: str
    title: str
    body: str
    linked_claim_id: str | None
    created_at: datetime
    score: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "author_id": self.author_id,
            "title": self.title,
            "body": self.body,
            "linked_claim_id": self.linked_claim_id,
            "created_at": self.created_at.isoformat(),
            "score": self.score,
        }


@dataclass(frozen=True)
class Comment:
    id: int
    post_id: int
    author_id: str
    body: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "post_id": self.post_id,
            "author_id": self.author_id,
            "body": self.body,
            "created_at": self.created_at.isoformat(),
        }


@dataclass(frozen=True)
class Vote:
    post_id: int
    voter_id: str
    direction: str
    cast_at: datetime


def _score(votes: Iterable[Vote]) -> int:
    return sum(1 if v.direction == "up" else -1 for v in votes)


def _validate_new_post(title: str):
    if not title.strip():
        raise ValidationError("post title must be non-empty")


def _validate_comment(body: str):
    if not body.strip():
        raise ValidationError("comment body must be non-empty")


def _validate_direction(direction: str):
    if direction not in VOTE_DIRECTIONS:
        raise ValidationError(f"vote direction must be one of {VOTE_DIRECTIONS}")


def _sorted_posts(posts: list[Post], sort: str) -> list[Post]:
    if sort == "new":
        return sorted(posts, key=lambda p: (p.created_at, p.id), reverse=True)
    if sort == "top":
        return sorted(posts, key=lambda p: (-p.score, p.id))
    raise ValidationError(f"unknown sort {sort!r}")


def _page(items: list, page: int, page_size: int) -> list:
    if page < 1 or page_size < 1:
        raise ValidationError("page and page_size must be >= 1")
    start = (page - 1) * page_size
    return items[start : start + page_size]


class MemoryCommunityStore:
    """Dict-backed store; every public call is atomic under one lock."""

    def __init__(self, now_fn: Callable[[], datetime] | None = None):
        self._now = now_fn or (lambda: datetime.now(timezone.utc))
        self._lock = threading.RLock()
        self._posts: dict[int, Post] = {}
        self._comments: dict[int, list[Comment]] = {}
        self._votes: dict[int, dict[str, Vote]] = {}
        self._next_post_id = 1
        self._next_comment_id = 1

    def create_post(self, author_id: str, title: str, body: str, linked_claim_id: str | None = None) -> Post:
        _validate_new_post(title)
        with self._lock:
            post = Post(
                id=self._next_post_id,
                author_id=author_id,
                title=title,
                body=body,
                linked_claim_id=linked_claim_id,
                created_at=self._now(),
                score=0,
            )
            self._next_post_id += 1
            self._posts[post.id] = post
            self._comments[post.id] = []
            self._votes[post.id] = {}
            return post

    def get_post(self, post_id: int) -> Post:
        with self._lock:
            post = self._posts.get(post_id)
            if post is None:
                raise NotFoundError(f"post {post_id} not found")
            return self._with_score(post)

    def add_comment(self, post_id: int, author_id: str, body: str) -> Comment:
        _validate_comment(body)
        with self._lock:
            if post_id not in self._posts:
                raise NotFoundError(f"post {post_id} not found")
            comment = Comment(
                id=self._next_comment_id,
                post_id=post_id,
                author_id=author_id,
                body=body,
                created_at=self._now(),
            )
            self._next_comment_id += 1
            self._comments[post_id].append(comment)
            return comment

    def list_comments(self, post_id: int) -> list[Comment]:
        with self._lock:
            if post_id not in self._posts:
                raise NotFoundError(f"post {post_id} not found")
            return sorted(self._comments[post_id], key=lambda c: (c.created_at, c.id))

    def cast_vote(self, post_id: int, voter_id: str, direction: str) -> int:
        _validate_direction(direction)
        with self._lock:
            if post_id not in self._posts:
                raise NotFoundError(f"post {post_id} not found")
            self._votes[post_id][voter_id] = Vote(
                post_id=post_id, voter_id=voter_id, direction=direction, cast_at=self._now()
            )
            return _score(self._votes[post_id].values())

    def votes_for(self, post_id: int) -> list[Vote]:
        with self._lock:
            if post_id not in self._posts:
                raise NotFoundError(f"post {post_id} not found")
            return list(self._votes[post_id].values())

    def list_posts(self, sort: str = "new", page: int = 1, page_size: int = 20) -> list[Post]:
        with self._lock:
            scored = [self._with_score(p) for p in self._posts.values()]
        return _page(_sorted_posts(scored, sort), page, page_size)

    def _with_score(self, post: Post) -> Post:
        score = _score(self._votes[post.id].values())
        return Post(**{**post.__dict__, "score": score})

    # ---- line-delimited JSON dump, for tests and migration ----

    def export_jsonl(self, path: str | Path):
        with self._lock, Path(path).open("w", encoding="utf-8") as fh:
            for post in self._posts.values():
                fh.write(json.dumps({"type": "post", **self._with_score(post).to_dict()}) + "\n")
            for comments in self._comments.values():
                for c in comments:
                    fh.write(json.dumps({"type": "comment", **c.to_dict()}) + "\n")
            for votes in self._votes.values():
                for v in votes.values():
                    fh.write(
                        json.dumps(
                            {
                                "type": "vote",
                                "post_id": v.post_id,
                                "voter_id": v.voter_id,
                                "direction": v.direction,
                                "cast_at": v.cast_at.isoformat(),
                            }
                        )
                        + "\n"
                    )

    def import_jsonl(self, path: str | Path):
        with self._lock:
            for line in Path(path).read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                doc = json.loads(line)
                kind = doc.pop("type")
                if kind == "post":
                    doc.pop("score", None)
                    post = Post(created_at=datetime.fromisoformat(doc.pop("created_at")), score=0, **doc)
                    self._posts[post.id] = post
                    self._comments.setdefault(post.id, [])
                    self._votes.setdefault(post.id, {})
                    self._next_post_id = max(self._next_post_id, post.id + 1)
                elif kind == "comment":
                    comment = Comment(created_at=datetime.fromisoformat(doc.pop("created_at")), **doc)
                    self._comments.setdefault(comment.post_id, []).append(comment)
                    self._next_comment_id = max(self._next_comment_id, comment.id + 1)
                elif kind == "vote":
                    vote = Vote(
                        post_id=doc["post_id"],
                        voter_id=doc["voter_id"],
                        direction=doc["direction"],
                        cast_at=datetime.fromisoformat(doc["cast_at"]),
                    )
                    self._votes.setdefault(vote.post_id, {})[vote.voter_id] = vote


class SqliteCommunityStore:
    """SQLite-backed store with the same contract as the memory store.

    A single connection guarded by a lock keeps every call atomic; the
    (post_id, voter_id) primary key makes the vote upsert race-free.
    """

    def __init__(self, path: str | Path = ":memory:", now_fn: Callable[[], datetime] | None = None):
        self._now = now_fn or (lambda: datetime.now(timezone.utc))
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        self._conn.execute("PRAGMA foreign_keys = ON")
        self._create_tables()

    def _create_tables(self):
        with self._lock, self._conn:
            self._conn.executescript(
                """
                CREATE TABLE IF NOT EXISTS posts (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    author_id TEXT NOT NULL,
                    title TEXT NOT NULL,
                    body TEXT NOT NULL,
                    linked_claim_id TEXT,
                    created_at TEXT NOT NULL
                );
                CREATE TABLE IF NOT EXISTS comments (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    post_id INTEGER NOT NULL REFERENCES posts(id),
                    author_id TEXT NOT NULL,
                    body TEXT NOT NULL,
                    created_at TEXT NOT NULL
                );
                CREATE TABLE IF NOT EXISTS votes (
                    post_id INTEGER NOT NULL REFERENCES posts(id),
                    voter_id TEXT NOT NULL,
                    direction TEXT NOT NULL,
                    cast_at TEXT NOT NULL,
                    PRIMARY KEY (post_id, voter_id)
                );
                """
            )

    def create_post(self, author_id: str, title: str, body: str, linked_claim_id: str | None = None) -> Post:
        _validate_new_post(title)
        created = self._now()
        with self._lock, self._conn:
            cur = self._conn.execute(
                "INSERT INTO posts (author_id, title, body, linked_claim_id, created_at)"
                " VALUES (?, ?, ?, ?, ?)",
                (author_id, title, body, linked_claim_id, created.isoformat()),
            )
            return Post(
                id=cur.lastrowid,
                author_id=author_id,
                title=title,
                body=body,
                linked_claim_id=linked_claim_id,
                created_at=created,
                score=0,
            )

    def get_post(self, post_id: int) -> Post:
        with self._lock:
            row = self._conn.execute(
                "SELECT id, author_id, title, body, linked_claim_id, created_at FROM posts WHERE id = ?",
                (post_id,),
            ).fetchone()
            if row is None:
                raise NotFoundError(f"post {post_id} not found")
            return self._row_to_post(row)

    def add_comment(self, post_id: int, author_id: str, body: str) -> Comment:
        _validate_comment(body)
        created = self._now()
        with self._lock, self._conn:
            self._require_post(post_id)
            cur = self._conn.execute(
                "INSERT INTO comments (post_id, author_id, body, created_at) VALUES (?, ?, ?, ?)",
                (post_id, author_id, body, created.isoformat()),
            )
            return Comment(id=cur.lastrowid, post_id=post_id, author_id=author_id, body=body, created_at=created)

    def list_comments(self, post_id: int) -> list[Comment]:
        with self._lock:
            self._require_post(post_id)
            rows = self._conn.execute(
                "SELECT id, post_id, author_id, body, created_at FROM comments"
                " WHERE post_id = ? ORDER BY created_at, id",
                (post_id,),
            ).fetchall()
        return [
            Comment(
                id=r[0], post_id=r[1], author_id=r[2], body=r[3],
                created_at=datetime.fromisoformat(r[4]),
            )
            for r in rows
        ]

    def cast_vote(self, post_id: int, voter_id: str, direction: str) -> int:
        _validate_direction(direction)
        with self._lock, self._conn:
            self._require_post(post_id)
            self._conn.execute(
                "INSERT INTO votes (post_id, voter_id, direction, cast_at) VALUES (?, ?, ?, ?)"
                " ON CONFLICT(post_id, voter_id)"
                " DO UPDATE SET direction = excluded.direction, cast_at = excluded.cast_at",
                (post_id, voter_id, direction, self._now().isoformat()),
            )
            return self._score_of(post_id)

    def votes_for(self, post_id: int) -> list[Vote]:
        with self._lock:
            self._require_post(post_id)
            rows = self._conn.execute(
                "SELECT post_id, voter_id, direction, cast_at FROM votes WHERE post_id = ?",
                (post_id,),
            ).fetchall()
        return [
            Vote(post_id=r[0], voter_id=r[1], direction=r[2], cast_at=datetime.fromisoformat(r[3]))
            for r in rows
        ]

    def list_posts(self, sort: str = "new", page: int = 1, page_size: int = 20) -> list[Post]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT id, author_id, title, body, linked_claim_id, created_at FROM posts"
            ).fetchall()
            posts = [self._row_to_post(r) for r in rows]
        return _page(_sorted_posts(posts, sort), page, page_size)

    def export_jsonl(self, path: str | Path):
        memory = MemoryCommunityStore()
        with self._lock:
            for post in self.list_posts(sort="new", page=1, page_size=10**9):
                memory._posts[post.id] = post
                memory._comments[post.id] = self.list_comments(post.id)
                memory._votes[post.id] = {v.voter_id: v for v in self.votes_for(post.id)}
        memory.export_jsonl(path)

    def import_jsonl(self, path: str | Path):
        memory = MemoryCommunityStore()
        memory.import_jsonl(path)
        with self._lock, self._conn:
            for post in memory._posts.values():
                self._conn.execute(
                    "INSERT INTO posts (id, author_id, title, body, linked_claim_id, created_at)"
                    " VALUES (?, ?, ?, ?, ?, ?)",
                    (post.id, post.author_id, post.title, post.body, post.linked_claim_id,
                     post.created_at.isoformat()),
                )
            for comments in memory._comments.values():
                for c in comments:
                    self._conn.execute(
                        "INSERT INTO comments (id, post_id, author_id, body, created_at)"
                        " VALUES (?, ?, ?, ?, ?)",
                        (c.id, c.post_id, c.author_id, c.body, c.created_at.isoformat()),
                    )
            for votes in memory._votes.values():
                for v in votes.values():
                    self._conn.execute(
                        "INSERT INTO votes (post_id, voter_id, direction, cast_at) VALUES (?, ?, ?, ?)",
                        (v.post_id, v.voter_id, v.direction, v.cast_at.isoformat()),
                    )

    def _require_post(self, post_id: int):
        row = self._conn.execute("SELECT 1 FROM posts WHERE id = ?", (post_id,)).fetchone()
        if row is None:
            raise NotFoundError(f"post {post_id} not found")

    def _score_of(self, post_id: int) -> int:
        row = self._conn.execute(
            "SELECT COALESCE(SUM(CASE direction WHEN 'up' THEN 1 ELSE -1 END), 0)"
            " FROM votes WHERE post_id = ?",
            (post_id,),
        ).fetchone()
        return int(row[0])

    def _row_to_post(self, row) -> Post:
        return Post(
            id=row[0],
            author_id=row[1],
            title=row[2],
            body=row[3],
            linked_claim_id=row[4],
            created_at=datetime.fromisoformat(row[5]),
            score=self._score_of(row[0]),
        )


def make_store(kind: str, db_path: str = "community.db"):
    if kind == "memory":
        return MemoryCommunityStore()
    if kind == "sqlite":
        return SqliteCommunityStore(db_path)
    raise ValueError(f"unknown community store kind {kind!r}")
