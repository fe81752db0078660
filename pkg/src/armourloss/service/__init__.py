"""HTTP service wrapping the loss calculator."""

from .app import app

__all__ = ["app"]
