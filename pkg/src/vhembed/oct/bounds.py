from __future__ import annotations

from ..chimera import ChimeraSpec, QubitLabel, chimera_graph
from ..graph import Graph


def lower_bound_witness(spec: ChimeraSpec) -> Graph:
    """Chimera graph with L-1 disjoint intra-cell edges contracted per cell.

    The contracted pairs are (partite 1, height t) with (partite 2, height t)
    for t < L, turning every cell into a K_{L+1}.  Parallel edges created by
    the contraction collapse into one.
    """
    g, labeling = chimera_graph(spec)
    rep = list(range(g.n))
    for i, q in enumerate(labeling.labels):
        if q.partite == 2 and q.height < spec.L:
            rep[i] = labeling.id_of(QubitLabel(q.row, q.col, 1, q.height))
    keep = sorted(set(rep))
    new_id = {v: i for i, v in enumerate(keep)}
    edges = {
        (min(new_id[rep[a]], new_id[rep[b]]), max(new_id[rep[a]], new_id[rep[b]]))
        for a, b in g.edges
        if rep[a] != rep[b]
    }
    return Graph(len(keep), edges)


def oct_upper_lower_bounds(spec: ChimeraSpec) -> tuple[Graph, int]:
    """The lower-bound witness graph and the L*M*N upper bound on OCT.

    Any Chimera minor keeps OCT at most L*M*N, while the witness needs at
    least (L-1)*M*N deletions.
    """
    return lower_bound_witness(spec), spec.L * spec.M * spec.N
