"""HTTP service: surveillance ingestion/aggregation plus the diagnostic API."""

from .app import create_app
from . import schemas

__all__ = ["create_app", "schemas"]
