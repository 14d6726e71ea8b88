"""Fully dynamic long-path, detour and parity-path queries."""

from .biconnectivity import MarkedBiconnectivity
from .bipartite import DynBipartite
from .connectivity import DynConnectivity
from .engines import LongDetourEngine, LongPathEngine, ParityEngine
from .errors import (
    AlreadyMarked,
    DuplicateEdge,
    EqualEndpoints,
    GraphError,
    IllegalEvent,
    MissingEdge,
    NotMarked,
    OutOfRange,
    ParseError,
    SelfLoop,
    TooLarge,
    WidthExceeded,
)
from .graph import Graph, InsertResult, edge
from .trace import EventKind, Trace, TraceEvent, loads, parse_trace

__all__ = [
    "AlreadyMarked",
    "DuplicateEdge",
    "DynBipartite",
    "DynConnectivity",
    "EqualEndpoints",
    "EventKind",
    "Graph",
    "GraphError",
    "IllegalEvent",
    "InsertResult",
    "LongDetourEngine",
    "LongPathEngine",
    "MarkedBiconnectivity",
    "MissingEdge",
    "NotMarked",
    "OutOfRange",
    "ParityEngine",
    "ParseError",
    "SelfLoop",
    "TooLarge",
    "Trace",
    "TraceEvent",
    "WidthExceeded",
    "edge",
    "loads",
    "parse_trace",
]
