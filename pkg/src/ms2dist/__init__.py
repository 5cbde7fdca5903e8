"""MS2 folding distances and trajectories between RNA secondary structures."""

from .conflict_graph import (
    ConflictDigraph, TripletNode, build_coarse_digraph, build_conflict_digraph,
    classify_edge, classify_node_type, detect_closed_2cycles,
)
from .moves import Move, Trajectory, apply_move, verify_trajectory
from .optimize import CycleCapExceeded, enumerate_simple_cycles, solve_max_binary, topological_sort
from .partition import EquivalenceClass, equivalence_classes, partition_positions
from .pkms2 import pk_ms2_distance, pk_ms2_trajectory
from .structures import (
    RnaSequence, SecondaryStructure, StructureError, base_pair_distance, hamming_distance,
    parse_dot_bracket, read_structure_pair, to_dot_bracket,
)
from .trajectory import ms2_branch_and_bound, ms2_exact, ms2_greedy, ms2_near_optimal

__version__ = "0.1.0"

__all__ = [
    "ConflictDigraph", "TripletNode", "build_coarse_digraph", "build_conflict_digraph",
    "classify_edge", "classify_node_type", "detect_closed_2cycles",
    "Move", "Trajectory", "apply_move", "verify_trajectory",
    "CycleCapExceeded", "enumerate_simple_cycles", "solve_max_binary", "topological_sort",
    "EquivalenceClass", "equivalence_classes", "partition_positions",
    "pk_ms2_distance", "pk_ms2_trajectory",
    "RnaSequence", "SecondaryStructure", "StructureError", "base_pair_distance",
    "hamming_distance", "parse_dot_bracket", "read_structure_pair", "to_dot_bracket",
    "ms2_branch_and_bound", "ms2_exact", "ms2_greedy", "ms2_near_optimal",
]
