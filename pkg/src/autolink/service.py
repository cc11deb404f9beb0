"""HTTP annotation service.

POST /annotate takes raw HTML as the request body and returns the
result in a thin JSON wrapper: {"status": "OK", "payload": ...} with
the annotated document (format=embed) or the stand-off list
(format=standoff). GET /status reports corpus and cache counters.
Responses other than 200 carry {"status": "error", "message": ...}.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .annotate import POLICIES
from .cache import DEFAULT_CAPACITY
from .disambiguate import DEFAULT_SOURCE_PRIORITY
from .linker import Linker

logger = logging.getLogger(__name__)

FORMATS = ("embed", "standoff")

DEFAULT_SIZE_LIMIT = 2 * 1024 * 1024  # snippets, not bulk documents


@dataclass
class ServiceConfig:
    port: int = 8080
    corpus: str | None = None
    source_priority: tuple[str, ...] = field(default=DEFAULT_SOURCE_PRIORITY)
    cache_capacity: int = DEFAULT_CAPACITY
    size_limit: int = DEFAULT_SIZE_LIMIT
    stopwords: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ServiceConfig":
        known = {
            "port": int,
            "corpus": str,
            "cache_capacity": int,
            "size_limit": int,
            "stopwords": str,
        }
        kwargs = {}
        for name, cast in known.items():
            if data.get(name) is not None:
                kwargs[name] = cast(data[name])
        if data.get("source_priority") is not None:
            kwargs["source_priority"] = tuple(data["source_priority"])
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str) -> "ServiceConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _error(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status_code, content={"status": "error", "message": message}
    )


def create_app(linker: Linker, config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig()
    app = FastAPI(title="autolink", docs_url=None, redoc_url=None)

    @app.post("/annotate")
    async def annotate(request: Request, format: str = "embed",
                       policy: str = "first", sources: str | None = None):
        if format not in FORMATS:
            return _error(400, f"format must be one of {list(FORMATS)}")
        if policy not in POLICIES:
            return _error(400, f"policy must be one of {list(POLICIES)}")
        body = await request.body()
        if len(body) > cfg.size_limit:
            return _error(413, f"body exceeds {cfg.size_limit} bytes")
        try:
            html = body.decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "body is not valid UTF-8")
        allowed = None
        if sources is not None:
            allowed = tuple(s for s in sources.split(",") if s)
        try:
            result = linker.annotate(html, policy=policy, sources=allowed)
        except Exception:
            logger.exception("annotation failed")
            return _error(500, "annotation failed")
        if format == "embed":
            payload = result.html
        else:
            payload = [a.as_record() for a in result.annotations]
        return {"status": "OK", "payload": payload}

    @app.get("/status")
    async def status():
        return {
            "concepts": len(linker.store),
            "sources": linker.store.sources(),
            "cache": linker.cache.stats(),
        }

    return app
