"""
Gammasim - a simulator for infinite time Turing machines with pluggable limit rules.

This package provides functionality for:
- Exact ordinal arithmetic and ordinal words with contraction
- Limit operators (limsup, liminf, priority limsup, tick, escaping)
- Running machines through transfinite stages with certified limits
- Loop detection, program transformations and ordinal codes
- Classifying operators against stability and looping properties
"""

__version__ = "0.1.0"
