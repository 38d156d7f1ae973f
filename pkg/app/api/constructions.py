"""Extremal construction, lift and Δ-region endpoints."""

import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.api.errors import domain_errors
from app.schemas.constructions import PosGridReport, PosRegionVerdict
from app.schemas.hypergraph import InstanceDocument, SimpleGraphDocument
from app.schemas.requests import ConstructRequest, ConstructResponse, PosRegionRequest
from app.services.extremal_builder import ExtremalBuilderService
from app.services.instance_io import InstanceIOService
from app.services.lift import LiftService
from app.services.pos_region import PosRegionService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/constructions", tags=["Constructions"])


@router.post("/construct", response_model=ConstructResponse)
def construct(request: ConstructRequest):
    """Graph with the requested densities and C = Σρ − r, with its recipe."""
    with domain_errors():
        graph, recipe = ExtremalBuilderService.build_extremal(request.r, request.rho, request.tolerance)
        return ConstructResponse(instance=InstanceIOService.to_document(graph), recipe=recipe)


@router.post("/lift", response_model=InstanceDocument)
def lift(document: SimpleGraphDocument):
    with domain_errors():
        graph = InstanceIOService.parse_simple_graph(document.model_dump())
        return InstanceIOService.to_document(LiftService.decaen_lift(graph))


@router.post("/pos-region", response_model=PosRegionVerdict)
def pos_region(request: PosRegionRequest):
    with domain_errors():
        return PosRegionService.check_pos_region(request.a, request.b, request.c)


@router.get("/pos-grid", response_model=PosGridReport)
def pos_grid(denominator: Optional[int] = Query(None, ge=1, le=400)):
    with domain_errors():
        return PosRegionService.verify_pos_grid(denominator)
