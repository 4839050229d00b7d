"""
FastAPI application entry point for the NPN classification API.
"""
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.api import canon_router, classify_router, cuts_router, signatures_router
from app.config import get_settings

# Get settings
settings = get_settings()

logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s - %(levelname)s - %(message)s",
)

# Create FastAPI app
app = FastAPI(
    title="NPN Classification API",
    description="Exact NPN canonical forms, batch classification and AIGER cut extraction",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(canon_router)
app.include_router(signatures_router)
app.include_router(classify_router)
app.include_router(cuts_router)


@app.get("/")
async def root():
    """Root endpoint - API information."""
    return {
        "name": "NPN Classification API",
        "version": __version__,
        "status": "operational",
        "defaults": {
            "method": settings.method.value,
            "symmetry_policy": settings.symmetry_policy.value,
            "sers_base": settings.sers_base,
        },
        "endpoints": {
            "docs": "/docs",
            "canon": "/api/canon",
            "signatures": "/api/signatures/{hex}",
            "classify": "/api/classify",
            "cuts": "/api/cuts"
        }
    }


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "version": __version__}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug
    )
