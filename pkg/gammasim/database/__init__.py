"""Database module for recording runs."""

from .run_store import AppearanceRecord, RunRecord, RunStore

__all__ = ["AppearanceRecord", "RunRecord", "RunStore"]
