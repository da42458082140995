"""Largest weight common subtree embeddings between labeled trees."""

from ._backend import DEFAULT as DEFAULT_KERNEL, KERNELS, get_kernel
from .embedding import Embedding
from .matching import (DeletionFamily, DeletionResult, Matching, Side, best_cardinality_two,
                       solve_all_deletions, solve_mwm)
from .oracle import is_valid_embedding, mcs_brute_force, oracle_best, weight_of_embedding
from .rooted import DPTable, compute_tables, lawecse_rooted, root_to_root, traceback
from .trees import (DirectedContext, LabeledTree, RootedView, TreeError, directed_contexts,
                    parse_tree, read_tree, root_at, serialize_tree)
from .unrooted import (ContextTable, LeaveOneOutMax, compute_all_context_tables, lawecse_unrooted,
                       m1, m2, naive_unrooted)
from .weights import (NEG_INF, POS_INF, WeightError, WeightScheme, edge_weight, parse_weights,
                      read_weights, serialize_weights, vertex_weight)

__all__ = [
    "DEFAULT_KERNEL", "KERNELS", "get_kernel",
    "Embedding",
    "DeletionFamily", "DeletionResult", "Matching", "Side", "best_cardinality_two",
    "solve_all_deletions", "solve_mwm",
    "is_valid_embedding", "mcs_brute_force", "oracle_best", "weight_of_embedding",
    "DPTable", "compute_tables", "lawecse_rooted", "root_to_root", "traceback",
    "DirectedContext", "LabeledTree", "RootedView", "TreeError", "directed_contexts",
    "parse_tree", "read_tree", "root_at", "serialize_tree",
    "ContextTable", "LeaveOneOutMax", "compute_all_context_tables", "lawecse_unrooted",
    "m1", "m2", "naive_unrooted",
    "NEG_INF", "POS_INF", "WeightError", "WeightScheme", "edge_weight", "parse_weights",
    "read_weights", "serialize_weights", "vertex_weight",
]
