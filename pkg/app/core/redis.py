"""
Redis-backed cache for deterministic reports (bound scans, tightness grids).

A report is keyed by a fingerprint of its resolved configuration, so a hit is
always byte-identical to a recomputation. Any Redis failure falls back to
computing the report.
"""

import hashlib
import json
import logging
from typing import Callable, Optional, TypeVar

from pydantic import BaseModel

from app.core.config import get_settings

logger = logging.getLogger(__name__)

ReportT = TypeVar("ReportT", bound=BaseModel)

_client = None
_unavailable = False


def get_redis_client():
    """Connected client, or None when caching is off or the server cannot be reached."""
    global _client, _unavailable
    settings = get_settings()
    if not settings.REDIS_ENABLED or _unavailable:
        return None
    if _client is None:
        try:
            import redis
            client = redis.from_url(settings.REDIS_URL, decode_responses=True, socket_connect_timeout=2)
            client.ping()
        except Exception as e:
            logger.warning(f"[CACHE] Redis at {settings.REDIS_URL} unavailable, reports computed directly: {e}")
            _unavailable = True
            return None
        _client = client
        logger.info(f"[CACHE] connected to {settings.REDIS_URL}")
    return _client


def report_cache_key(kind: str, config: dict) -> str:
    """turan:report:v1:<kind>:<sha256 of the canonical config JSON>."""
    payload = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return f"turan:report:v1:{kind}:{hashlib.sha256(f'{kind}|{payload}'.encode()).hexdigest()}"


def load_report(key: str, model: type[ReportT]) -> Optional[ReportT]:
    client = get_redis_client()
    if client is None:
        return None
    try:
        raw = client.get(key)
    except Exception as e:
        logger.warning(f"[CACHE] read of {key} failed: {e}")
        return None
    return model.model_validate_json(raw) if raw else None


def store_report(key: str, report: BaseModel) -> bool:
    client = get_redis_client()
    if client is None:
        return False
    try:
        client.setex(key, get_settings().REPORT_CACHE_TTL, report.model_dump_json(by_alias=True))
    except Exception as e:
        logger.warning(f"[CACHE] write of {key} failed: {e}")
        return False
    return True


def cached_report(kind: str, config: dict, model: type[ReportT], compute: Callable[[], ReportT]) -> ReportT:
    """Return the cached report for (kind, config) or compute and store it."""
    key = report_cache_key(kind, config)
    hit = load_report(key, model)
    if hit is not None:
        logger.info(f"[CACHE HIT] {kind} {key}")
        return hit
    report = compute()
    store_report(key, report)
    return report
