"""
Verification endpoints: lower-bound scans, tightness grids and the balanced threshold scan.
All are deterministic in their configuration, so reports are cached in Redis
under a fingerprint of the resolved request.
"""

import logging

from fastapi import APIRouter

from app.api.errors import domain_errors
from app.core.redis import cached_report
from app.schemas.constructions import TightnessReport
from app.schemas.requests import TightnessRequest
from app.schemas.search import BalancedSpace, BoundReport, SearchSpace, ThresholdPropertyReport
from app.services.search_oracle import SearchOracleService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/verification", tags=["Verification"])


@router.post("/verify-bound", response_model=BoundReport)
def verify_bound(space: SearchSpace):
    """Check C(G) >= Σρ − r over every (exhaustive) or a seeded sample (random) of instances."""

    def scan() -> BoundReport:
        if space.mode == "exhaustive":
            return SearchOracleService.exhaustive_bound_scan(space)
        return SearchOracleService.random_bound_scan(space)

    with domain_errors():
        return cached_report("verify-bound", space.model_dump(mode="json"), BoundReport, scan)


@router.post("/tightness", response_model=TightnessReport)
def tightness(request: TightnessRequest):
    """Compare C of the extremal construction with Σρ − r on a grid of targets."""
    with domain_errors():
        return cached_report(
            "tightness",
            request.model_dump(mode="json"),
            TightnessReport,
            lambda: SearchOracleService.tightness_probe(request.r, request.grid),
        )


@router.post("/threshold-property", response_model=ThresholdPropertyReport)
def threshold_property(space: BalancedSpace):
    """Balanced threshold and clique-free edge sums over a seeded stream of balanced instances."""
    with domain_errors():
        return cached_report(
            "threshold-property",
            space.model_dump(mode="json"),
            ThresholdPropertyReport,
            lambda: SearchOracleService.threshold_property_scan(space),
        )
