"""Tree decompositions, exact treewidth and path automata."""

from .automaton import PathAutomatonState, Variant, run_path_automaton
from .bounded import BoundedTwSubgraph
from .decomposition import TreeDecomposition, is_valid_decomposition, nice_program
from .exact import decompose_at_most, exact_treewidth, treewidth_at_most

__all__ = [
    "BoundedTwSubgraph",
    "PathAutomatonState",
    "TreeDecomposition",
    "Variant",
    "decompose_at_most",
    "exact_treewidth",
    "is_valid_decomposition",
    "nice_program",
    "run_path_automaton",
    "treewidth_at_most",
]
