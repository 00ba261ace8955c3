"""Dovetailed runs of many machines and the constants observed in them."""

from .constants import ObservedConstants, harvest_constants
from .dovetail import DovetailRun, FirstAppearanceLog, appearance_frame, dovetail, outcome_frame

__all__ = [
    "DovetailRun",
    "FirstAppearanceLog",
    "ObservedConstants",
    "appearance_frame",
    "dovetail",
    "harvest_constants",
    "outcome_frame",
]
