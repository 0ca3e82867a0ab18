"""oddhex: find an all-odd K3,3 subdivision in a bipartite graph.

The package is organized bottom-up:

* ``graph_core``    -- immutable bipartite graphs, parsing, paths
* ``connectivity``  -- cuts, disjoint-path fans, H-path search
* ``hexes``         -- the hex certificate object, parity accounting, surgery
* ``seed``          -- planarity check and the initial hex search
* ``extensions``    -- the structured outcome types of the path-extension engine
* ``augment``       -- three-path extension (the augmenting-sequence engine)
* ``improver``      -- odd-count improvement steps and the end-to-end finder
* ``oracle``        -- independent brute-force ground truth for testing
* ``generators``    -- named and seeded random instances
* ``cli``           -- command line front end
"""

from .graph_core import (
    BipartiteGraph,
    GraphError,
    InvalidHighlight,
    LoopOrMultiEdge,
    MalformedInput,
    NotBipartite,
    Parity,
    LEFT,
    RIGHT,
    emit_dot,
    emit_edge_list,
    emit_graph6,
    graph_hash,
    parse_edge_list,
    parse_graph6,
    path_parity,
    subpath,
)
from .connectivity import Separation
from .generators import BadParameters, FAMILIES, GaveUp, SplitMix64, named, random_instance
from .hexes import Hex, ParityProfile, Surgery, certificate, certificate_json, verify_certificate
from .improver import (
    AlreadyOdd,
    CaseExhausted,
    ImprovementStep,
    NotInternally4Connected,
    find_odd_hex,
    improve_4,
    improve_5,
    improve_6,
    improve_le3,
    improve_once,
)
from .seed import PlanarInput, SearchCancelled, SearchExhausted, find_hex, is_planar

__version__ = "0.1.0"

__all__ = [
    "AlreadyOdd",
    "BadParameters",
    "BipartiteGraph",
    "CaseExhausted",
    "FAMILIES",
    "GaveUp",
    "GraphError",
    "Hex",
    "ImprovementStep",
    "InvalidHighlight",
    "LEFT",
    "LoopOrMultiEdge",
    "MalformedInput",
    "NotBipartite",
    "NotInternally4Connected",
    "Parity",
    "ParityProfile",
    "PlanarInput",
    "RIGHT",
    "SearchCancelled",
    "SearchExhausted",
    "Separation",
    "SplitMix64",
    "Surgery",
    "certificate",
    "certificate_json",
    "emit_dot",
    "emit_edge_list",
    "emit_graph6",
    "find_hex",
    "find_odd_hex",
    "graph_hash",
    "improve_4",
    "improve_5",
    "improve_6",
    "improve_le3",
    "improve_once",
    "is_planar",
    "named",
    "parse_edge_list",
    "parse_graph6",
    "path_parity",
    "random_instance",
    "subpath",
    "verify_certificate",
    "__version__",
]
