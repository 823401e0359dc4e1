"""CONGEST-model simulator and reduction-gadget toolkit for APSP and eccentricity lower bounds."""

from .algorithms import EccDiameterRadius, LeaderBfsTree, PipelinedApsp, ecc_diameter_radius, leader_bfs_tree, pipelined_apsp
from .gadgets import (
    apsp_params,
    approx_thresholds,
    build_apsp_gadget,
    build_ecc_gadget,
    build_line,
    choose_ell,
    decode_apsp,
    decode_ecc,
    decode_ecc_approx,
    ecc_params,
)
from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    LabeledGraph,
    Role,
    Side,
    apsp_oracle,
    bfs,
    distance_params,
    random_connected_graph,
    subdivide_edges,
)
from .instances import (
    IntersectionInstance,
    bit_b,
    eval_disj,
    eval_int,
    index_to_pair,
    intersection_size,
    pair_to_index,
)
from .sim import CutReport, Message, NodeProgram, SimConfig, SimResult, bandwidth_bits, cut_report, run

__version__ = "0.1.0"
