"""
HTTP entry point for permstat.
Sets up FastAPI and includes the compute routes.
"""

import logging
from fastapi import FastAPI

from permstat import __version__
from permstat.config import settings
from permstat.routes import compute

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL.upper(),
    format=settings.LOG_FORMAT,
)
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="permstat",
    description="Exact q-statistics, covering maps and equidistribution checks on symmetric groups",
    version=__version__,
)

# Include routers
app.include_router(compute.router)


@app.get("/")
async def root():
    """Root endpoint that returns API information."""
    return {
        "message": "permstat API",
        "docs": "/docs",
        "version": __version__,
    }


@app.get("/health")
async def health_check():
    """Health check endpoint with the effective sweep limits."""
    return {
        "status": "healthy",
        "enumeration_budget": settings.effective_budget(),
        "threads": settings.effective_threads(),
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("permstat.main:app", host="0.0.0.0", port=8000, reload=True)
