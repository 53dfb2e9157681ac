"""Distinguishing numbers of finite graphs and permutation groups.

The package computes automorphism groups by partition refinement, exact
distinguishing numbers by pruned colouring search, and checks the
constructions relating them: nested-ball colouring extension, block
systems and wreath products, and the layered strip family.
"""

from .automorphism import automorphism_group, color_automorphism_group, refine
from .balls import build_chain, extend_coloring, extension_steps, verify_ball_extension
from .budget import DEFAULT_BUDGET, Budget
from .distinguishing import (
    INF,
    Cardinal,
    Fin,
    anchored_distinguishing_coloring,
    wreath_distnum_by_counting,
    count_distinguishing_colorings,
    distinguishing_number,
    distinguishing_witness,
    find_distinguishing_coloring,
    graph_distinguishing_number,
    is_distinguishing,
    min_star,
)
from .errors import BudgetExceeded, DistnumError, Inconclusive, PreconditionError, VerificationFailure
from .graph import Graph, VertexMap, ball, complement, disjoint_copies, induced_subgraph, quotient_graph
from .graphio import from_graph6, parse_graph, read_graph_file, to_graph6
from .imprimitivity import (
    BlockSystem,
    all_block_systems,
    block_group,
    build_transversal,
    copies_palette_bound,
    minimal_block,
    block_wreath_coloring,
    verify_block_copies_bound,
    verify_block_wreath_bound,
)
from .perm import PermGroup, induced_action, wreath_imprimitive
from .strip import layer_graph, strip_ball, strip_cycle, strip_window, verify_strip_family

__version__ = "0.1.0"
