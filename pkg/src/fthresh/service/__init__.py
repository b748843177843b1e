"""Service layer: pydantic models, shared handlers, and the FastAPI app."""

from .handlers import ROUTES

__all__ = ["ROUTES"]
