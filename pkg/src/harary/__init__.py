"""Exact Harary polynomials, mate classification and random-graph experiments."""

from .errors import CapacityError, GraphFormatError, HararyError, PropertySyntaxError
from .graph import (
    Graph, canonical_code, complement, connected_components, disjoint_union, enumerate_graphs,
    induced_subgraph, make_named, parse_graph6, write_graph6,
)
from .polynomials import (
    FFPoly, MonoPoly, chromatic_dc, coloring_counts, evaluate_ff, ff_to_monomial, harary_counts,
    independence_poly, stirling2,
)
from .properties import parse_property

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "GraphFormatError", "HararyError", "PropertySyntaxError",
    "Graph", "canonical_code", "complement", "connected_components", "disjoint_union",
    "enumerate_graphs", "induced_subgraph", "make_named", "parse_graph6", "write_graph6",
    "FFPoly", "MonoPoly", "chromatic_dc", "coloring_counts", "evaluate_ff", "ff_to_monomial",
    "harary_counts", "independence_poly", "stirling2", "parse_property",
]
