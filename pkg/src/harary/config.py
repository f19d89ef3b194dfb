"""Size limits and runtime defaults.

The limits are plain module state so the CLI (or a test) can tighten them
for a run; every bounded operation reads them at call time.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, fields, replace

MAX_ORDER = 32


@dataclass
class Limits:
    enumeration: int = 8   # enumerate_graphs / census-based checks
    partition: int = 12    # harary_counts
    canonical: int = 32    # canonical_code
    chromatic: int = 16    # deletion-contraction
    subset: int = 24       # subset generating functions, matchings
    spectral: int = 16     # characteristic / Laplacian polynomials


LIMITS = Limits()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override entries of :data:`LIMITS`."""
    saved = replace(LIMITS)
    try:
        for key, value in overrides.items():
            if key not in {f.name for f in fields(Limits)}:
                raise KeyError(f"unknown limit {key!r}")
            setattr(LIMITS, key, value)
        yield LIMITS
    finally:
        for f in fields(Limits):
            setattr(LIMITS, f.name, getattr(saved, f.name))
