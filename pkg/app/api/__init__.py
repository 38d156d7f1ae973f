# API Routes
from app.api.health import router as health_router
from app.api.instances import router as instances_router
from app.api.constructions import router as constructions_router
from app.api.verification import router as verification_router

__all__ = ["health_router", "instances_router", "constructions_router", "verification_router"]
