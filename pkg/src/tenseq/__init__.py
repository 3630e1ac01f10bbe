"""tenseq: contraction sequences for tensor networks via line-graph treewidth."""

from .graph import Graph, GraphError, ParseError, random_regular, read_gr, write_gr
from .network import (
    LineGraphMap,
    TensorNetwork,
    Wire,
    line_graph,
    network_from_json,
    network_to_json,
    to_simple,
)
from .decomposition import (
    CancelToken,
    EliminationOrdering,
    TreeDecomposition,
    TreewidthResult,
    eo_to_td,
    fill_in_width,
    heuristic_order,
    lower_bound,
    read_td,
    td_to_eo,
    treewidth_exact,
    validate_td,
    write_td,
)

__version__ = "0.1.0"
