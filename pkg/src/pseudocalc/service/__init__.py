"""Service layer: pydantic schemas, handlers and the FastAPI app."""

from . import handlers, schemas  # noqa: F401
