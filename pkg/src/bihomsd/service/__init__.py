"""HTTP service wrapping the engine: pydantic models, handlers, FastAPI app."""
