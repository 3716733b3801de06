"""k-matching and maximum-weight k-matching in O(k^2) words of workspace."""

from .config import RunConfig
from .graph_store import AdjacencyGraph, ResourceMeter, from_edges, load_graph
from .matching import Matching, validate_matching
from .unweighted import find_k_matching
from .weighted import max_weight_k_matching

__all__ = ["AdjacencyGraph", "Matching", "ResourceMeter", "RunConfig", "find_k_matching",
           "from_edges", "load_graph", "max_weight_k_matching", "validate_matching"]
__version__ = "0.1.0"
