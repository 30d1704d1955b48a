"""Path colorings of connected graphs and what they certify.

The package decides whether a connected graph admits a nontrivial path
coloring (making it composite with respect to subgraph embeddings into
products of complete graphs), builds the clique-fused cube gadgets that tie
such colorings to monotone one-in-three satisfiability, and produces the
embedding and edge-labeling certificates behind a composite verdict.
"""

from .coloring import (
    Budget,
    Coloring,
    ColoringVerdict,
    bichromatic_components,
    enumerate_path_colorings,
    find_any_nontrivial_path_coloring,
    find_path_coloring,
    is_nontrivial,
    nontrivial_k_range,
    num_colors,
    oracle_verify_path_coloring,
    parse_coloring,
    restrict_coloring,
    serialize_coloring,
    verify_path_coloring,
)
from .errors import (
    BudgetExhaustedError,
    CapacityError,
    DecodeError,
    FormatError,
    InternalConsistencyError,
)
from .gadgets import (
    EPrimeSpec,
    GadgetGraph,
    SmallGadgetWarning,
    VertexProvenance,
    build_extended_joint_graph,
    build_joint_graph,
    expected_vertex_count,
    gadget_from_parts,
    parse_provenance,
    serialize_provenance,
    validate_gadget,
)
from .graphs import (
    Graph,
    ProductVertexMap,
    bfs_distance,
    cartesian_product,
    complete_graph,
    connected_components,
    hypercube,
    induced_subgraph,
    parse_graph,
    serialize_graph,
)
from .recognition import (
    HammingEmbedding,
    SCompositeVerdict,
    TwoLabeling,
    check_s_composite,
    embed_into_hamming,
    induced_cycles,
    parse_embedding,
    parse_labeling,
    serialize_embedding,
    serialize_labeling,
    two_labeling_from_coloring,
    verify_product_subgraph_embedding,
    verify_two_labeling,
)
from .reduction import (
    SatInstance,
    brute_force_1in3,
    construct_coloring_from_assignment,
    decode,
    encode,
    parse_assignment,
    parse_sat_instance,
    parse_var_vertex_map,
    random_instance,
    seeded_corpus,
    serialize_assignment,
    serialize_sat_instance,
    serialize_var_vertex_map,
    solve_1in3_via_gadget,
    verify_1in3,
)

__version__ = "0.1.0"
