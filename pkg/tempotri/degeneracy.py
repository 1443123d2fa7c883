"""Degeneracy ordering of the static graph, and its orientation into a DAG."""

from dataclasses import dataclass
from itertools import accumulate
import logging
from typing import List

import numpy as np

from tempotri.graph import IdArray, StaticGraph
from tempotri.utils import log_duration


logger = logging.getLogger(__name__)


@dataclass
class DegeneracyOrdering:
    """Position of each vertex in the minimum-degree removal order, together with the degeneracy `kappa`."""
    rank: IdArray
    kappa: int

    @property
    def order(self) -> IdArray:
        """Gets the vertices in removal order (the inverse permutation of `rank`)."""
        return np.argsort(self.rank)


@dataclass
class OrientedGraph:
    """The static graph with each edge directed from lower to higher rank.

    Out-neighbors of `v` are `indices[indptr[v]:indptr[v + 1]]`, sorted by rank ascending. The underlying static graph is kept for edge membership queries."""
    indptr: IdArray
    indices: IdArray
    ordering: DegeneracyOrdering
    static: StaticGraph

    @property
    def n(self) -> int:
        """Number of vertices."""
        return len(self.indptr) - 1

    @property
    def kappa(self) -> int:
        """Degeneracy of the underlying static graph."""
        return self.ordering.kappa

    @property
    def rank(self) -> IdArray:
        """Rank of every vertex in the degeneracy ordering."""
        return self.ordering.rank

    @property
    def out_degrees(self) -> IdArray:
        """Gets the out-degree of every vertex."""
        return np.diff(self.indptr)

    def out_neighbors(self, v: int) -> IdArray:
        """Gets the out-neighbors of a vertex, sorted by rank."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]


def degeneracy_order(graph: StaticGraph) -> DegeneracyOrdering:
    """Computes a degeneracy ordering by repeatedly removing a vertex of minimum remaining degree, in O(n + m) time.

    All vertices live in one array sorted by current degree, with `start[d]` marking where the bucket of degree `d` begins. Removing a vertex moves each higher-degree neighbor to the front of its bucket and shifts that bucket's boundary past it, so the neighbor joins the back of the next lower bucket. Buckets begin in vertex id order, so the ordering is deterministic.

    Args:
        graph: Static graph

    Returns:
        The `DegeneracyOrdering` (ranks in removal order, and the degeneracy)"""
    n = graph.n
    degree: List[int] = graph.degrees.tolist()
    indptr: List[int] = graph.indptr.tolist()
    indices: List[int] = graph.indices.tolist()
    # counting sort of the vertices by degree (stable, so ids ascend within a bucket)
    sizes = [0] * (max(degree, default=0) + 1)
    for d in degree:
        sizes[d] += 1
    start = [0, *accumulate(sizes)][:-1]
    fill = start[:]
    vert = [0] * n
    pos = [0] * n
    for v in range(n):
        pos[v] = fill[degree[v]]
        vert[pos[v]] = v
        fill[degree[v]] += 1
    rank = [0] * n
    kappa = 0
    with log_duration('degeneracy ordering'):
        for i in range(n):
            v = vert[i]
            rank[v] = i
            dv = degree[v]
            kappa = max(kappa, dv)
            for u in indices[indptr[v]:indptr[v + 1]]:
                du = degree[u]
                # removed vertices never exceed the current degree
                if du > dv:
                    (pu, pw) = (pos[u], start[du])
                    w = vert[pw]
                    if u != w:
                        (vert[pu], vert[pw]) = (w, u)
                        (pos[u], pos[w]) = (pw, pu)
                    start[du] += 1
                    degree[u] = du - 1
    logger.info('degeneracy %d on %d vertices', kappa, n)
    return DegeneracyOrdering(np.array(rank, dtype=np.int64), kappa)

def orient(graph: StaticGraph, ordering: DegeneracyOrdering) -> OrientedGraph:
    """Orients every static edge `{u, v}` as `u -> v` iff `rank(u) < rank(v)`.

    Args:
        graph: Static graph
        ordering: Degeneracy ordering computed on the same graph

    Returns:
        The `OrientedGraph`, whose out-degrees are at most `ordering.kappa`"""
    rank = ordering.rank
    src = np.repeat(np.arange(graph.n, dtype=np.int64), graph.degrees)
    dst = graph.indices
    forward = rank[src] < rank[dst]
    (src, dst) = (src[forward], dst[forward])
    order = np.lexsort((rank[dst], src))
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=graph.n), out=indptr[1:])
    return OrientedGraph(indptr, dst[order], ordering, graph)
