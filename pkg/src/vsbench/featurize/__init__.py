"""Graph featurization for 2D (bond) and 3D (radius) molecular graphs."""

from .graph import (
    CUTOFF,
    EDGE_DIM,
    EDGE_FEATURE_NAMES,
    NODE_DIM,
    NODE_FEATURE_NAMES,
    GraphTensor,
    build_2d_graph,
    build_3d_graph,
    node_feature_vector,
    node_features,
    radius_edges,
)
from .store import decode_graph, encode_graph, iter_graph_store, read_graph, write_graph_store

__all__ = [
    "CUTOFF", "EDGE_DIM", "EDGE_FEATURE_NAMES", "NODE_DIM", "NODE_FEATURE_NAMES", "GraphTensor",
    "build_2d_graph", "build_3d_graph", "decode_graph", "encode_graph", "iter_graph_store",
    "node_feature_vector", "node_features", "radius_edges", "read_graph", "write_graph_store",
]
