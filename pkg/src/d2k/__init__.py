"""Directed graphs with prescribed degree sequences and degree correlations.

The pipeline: measure targets from a graph (five models of increasing
detail), test the degree-correlation targets for realizability, construct
simple realizations that match exactly, and compare generated ensembles to
the original with a census metric suite.
"""
from .baselines import gen_d0k, gen_d1k, gen_uman
from .construct import ConstructionState, generate
from .errors import (ConstructionInvariantError, D2KError,
                     EdgeListFormatError, NotGraphicalError,
                     NotRealizableError, SwapError, TargetStructureError)
from .files import (load_metrics_report, load_targets, read_edge_list,
                    save_metrics_report, save_targets, write_edge_list)
from .graph import (ASYMMETRIC, BipartiteGraph, DirectedGraph, MUTUAL, NULL,
                    collapse_bipartite, dyad_state, from_edge_list,
                    to_bipartite)
from .metrics import (CensusReport, MetricsConfig, avg_neighbor_degree,
                      dsp, dyad_census, expansion, structural_suite,
                      triad_census)
from .realizability import RealizabilityReport, check
from .swaps import (SwapProposal, apply_swap, c6_reverse_proposal,
                    double_swap_proposal, enumerate_jdam_swaps)
from .targets import (CellKey, D2KTargets, DdsTargets, MODE_DEGREE,
                      MODE_PAIR, SizeTargets, UmanTargets, extract_d2k,
                      extract_dds, extract_size, extract_uman)

__version__ = "0.1.0"

__all__ = [
    "ASYMMETRIC", "BipartiteGraph", "CellKey", "CensusReport",
    "ConstructionInvariantError", "ConstructionState", "D2KError",
    "D2KTargets", "DdsTargets", "DirectedGraph", "EdgeListFormatError",
    "MODE_DEGREE", "MODE_PAIR", "MUTUAL", "MetricsConfig", "NULL",
    "NotGraphicalError", "NotRealizableError", "RealizabilityReport",
    "SizeTargets", "SwapError", "SwapProposal", "TargetStructureError",
    "UmanTargets", "apply_swap", "avg_neighbor_degree",
    "c6_reverse_proposal", "check", "collapse_bipartite", "dsp",
    "double_swap_proposal", "dyad_census", "dyad_state",
    "enumerate_jdam_swaps", "expansion", "extract_d2k", "extract_dds",
    "extract_size", "extract_uman", "from_edge_list", "gen_d0k", "gen_d1k",
    "gen_uman", "generate", "load_metrics_report", "load_targets",
    "read_edge_list", "save_metrics_report", "save_targets",
    "structural_suite", "to_bipartite", "triad_census", "write_edge_list",
]
