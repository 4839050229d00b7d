"""API routes package."""

from .canon import router as canon_router
from .signatures import router as signatures_router
from .classify import router as classify_router
from .cuts import router as cuts_router

__all__ = [
    "canon_router",
    "signatures_router",
    "classify_router",
    "cuts_router",
]
