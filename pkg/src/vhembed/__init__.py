"""Minor embedding of problem graphs onto Chimera hardware through a
biclique virtual-hardware template."""

from .chimera import ChimeraSpec, QubitLabel, VirtualQubit, biclique_virtual_hardware, chimera_graph
from .embedders import (
    fast_oct_embed,
    klymko_embed,
    native_embed,
    oct_embed,
    pipeline,
)
from .framework import (
    Fail,
    PhysicalEmbedding,
    VirtualEmbedding,
    compose,
    validate_minor_embedding,
)
from .graph import Graph, parse_edge_list
from .reducers import (
    fast_qubit_evaluation,
    k_exchange_reduce,
    qubit_evaluation,
    qubit_reduce,
    qubit_score,
)

__version__ = "0.1.0"

__all__ = [
    "ChimeraSpec",
    "Fail",
    "Graph",
    "PhysicalEmbedding",
    "QubitLabel",
    "VirtualEmbedding",
    "VirtualQubit",
    "biclique_virtual_hardware",
    "chimera_graph",
    "compose",
    "fast_oct_embed",
    "fast_qubit_evaluation",
    "k_exchange_reduce",
    "klymko_embed",
    "native_embed",
    "oct_embed",
    "parse_edge_list",
    "pipeline",
    "qubit_evaluation",
    "qubit_reduce",
    "qubit_score",
    "validate_minor_embedding",
]
