"""
Instance analysis endpoints.
Each takes an instance document and returns the same report the CLI writes.
"""

import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.api.errors import domain_errors
from app.schemas.degrees import BalanceVerdict, CodegreeSummary, ThresholdCertificate
from app.schemas.hypergraph import DensityVector, InstanceDocument
from app.schemas.reports import CliqueReport
from app.schemas.requests import BlowUpRequest
from app.services.blow_up import BlowUpService
from app.services.clique_counter import CliqueService
from app.services.degree_analysis import DegreeAnalysisService
from app.services.density import DensityService
from app.services.instance_io import InstanceIOService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/instances", tags=["Instances"])


@router.post("/density", response_model=DensityVector)
def density(document: InstanceDocument):
    """Density vector ρ̄ of an (r+1)-partite instance."""
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return DensityService.density_vector(graph)


@router.post("/cliques", response_model=CliqueReport)
def cliques(
    document: InstanceDocument,
    witnesses: bool = Query(False, description="Include clique transversals"),
    max_witnesses: Optional[int] = Query(None, ge=0),
):
    """Clique density C(G)."""
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return CliqueService.clique_density(graph, with_witnesses=witnesses, max_witnesses=max_witnesses)


@router.post("/near-cliques", response_model=CliqueReport)
def near_cliques(
    document: InstanceDocument,
    k: int = Query(..., ge=0),
    witnesses: bool = Query(False),
    max_witnesses: Optional[int] = Query(None, ge=0),
):
    """Density of transversals missing at most k edges."""
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return CliqueService.count_near_cliques(graph, k, with_witnesses=witnesses, max_witnesses=max_witnesses)


@router.post("/blowup", response_model=InstanceDocument)
def blowup(request: BlowUpRequest):
    with domain_errors():
        graph = InstanceIOService.parse_instance(request.instance.model_dump())
        return InstanceIOService.to_document(BlowUpService.blow_up(graph, request.scale))


@router.post("/balance", response_model=BalanceVerdict)
def balance(document: InstanceDocument, tuple_size: Optional[int] = Query(None, ge=1)):
    """Strict codegree balance at the given tuple size (default r−1)."""
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return DegreeAnalysisService.is_strictly_balanced(graph, tuple_size)


@router.post("/threshold", response_model=ThresholdCertificate)
def threshold(
    document: InstanceDocument,
    k: int = Query(0, ge=0),
    all_classes: bool = Query(False, description="Compute S(e) for every class, not just j*"),
):
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return DegreeAnalysisService.threshold_check(graph, k, all_classes=all_classes)


@router.post("/codegrees", response_model=CodegreeSummary)
def codegrees(document: InstanceDocument):
    with domain_errors():
        graph = InstanceIOService.parse_instance(document.model_dump())
        return DegreeAnalysisService.codegree_profile(graph)
