"""Mapping of domain exceptions onto HTTP errors."""

import logging
from contextlib import contextmanager

from fastapi import HTTPException

from app.core.errors import HypergraphError, InstanceParseError, NotFoundError, TheoremViolationError

logger = logging.getLogger(__name__)


@contextmanager
def domain_errors():
    """404 for missing edges, 422 for other domain errors, 500 for theorem violations."""
    try:
        yield
    except NotFoundError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except InstanceParseError as e:
        raise HTTPException(status_code=422, detail={"error": type(e).__name__, "message": str(e), "context": e.context})
    except HypergraphError as e:
        raise HTTPException(status_code=422, detail={"error": type(e).__name__, "message": str(e)})
    except TheoremViolationError as e:
        logger.error(f"[THEOREM VIOLATION] {e}")
        raise HTTPException(status_code=500, detail=f"theorem violation: {e}")
