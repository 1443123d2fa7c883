"""Enumeration of static triangles from their source vertex in the degeneracy-oriented DAG."""

from dataclasses import dataclass
import logging
from typing import Callable, Iterable, Iterator, List, NamedTuple, Optional

from tempotri.degeneracy import OrientedGraph, degeneracy_order, orient
from tempotri.graph import PairIndex, StaticGraph, TemporalGraph, build_pair_index, extract_static_graph, pair_key


logger = logging.getLogger(__name__)


class SourceTriangle(NamedTuple):
    """A static triangle `<u, v, w>` with `rank(u) < rank(v) < rank(w)`; `u` is its source vertex."""
    u: int
    v: int
    w: int


TriangleVisitor = Callable[[SourceTriangle], None]


def iter_source_triangles(dag: OrientedGraph, sources: Optional[Iterable[int]] = None) -> Iterator[SourceTriangle]:
    """Iterates through the static triangles whose source vertex lies in `sources`.

    For each source `u`, every pair `(v, w)` of out-neighbors with `rank(v) < rank(w)` is tested for the edge `{v, w}`.

    Args:
        dag: Oriented static graph (out-neighbors sorted by rank)
        sources: Source vertices to use (by default, all vertices in id order)

    Returns:
        Generator of `SourceTriangle`s"""
    has_edge = dag.static.edge_keys.__contains__
    indptr: List[int] = dag.indptr.tolist()
    indices: List[int] = dag.indices.tolist()
    for u in (range(dag.n) if (sources is None) else sources):
        out = indices[indptr[u]:indptr[u + 1]]
        for (i, v) in enumerate(out):
            for w in out[i + 1:]:
                if has_edge(pair_key(v, w)):
                    yield SourceTriangle(u, v, w)

def enumerate_source_triangles(dag: OrientedGraph, visitor: Optional[TriangleVisitor] = None, sources: Optional[Iterable[int]] = None) -> int:
    """Visits every static triangle exactly once, as a `SourceTriangle`.

    Args:
        dag: Oriented static graph
        visitor: Callback invoked once per triangle
        sources: Restrict enumeration to these source vertices (a shard)

    Returns:
        Number of static triangles visited"""
    count = 0
    for tri in iter_source_triangles(dag, sources):
        if visitor is not None:
            visitor(tri)
        count += 1
    logger.debug('visited %d static triangles', count)
    return count


@dataclass
class PreparedGraph:
    """A temporal graph together with the structures the counters run on."""
    graph: TemporalGraph
    index: PairIndex
    static: StaticGraph
    dag: OrientedGraph


def prepare_graph(graph: TemporalGraph) -> PreparedGraph:
    """Builds the pair index, the static graph, and its degeneracy orientation.

    Args:
        graph: Temporal graph

    Returns:
        A `PreparedGraph`"""
    index = build_pair_index(graph)
    static = extract_static_graph(index)
    dag = orient(static, degeneracy_order(static))
    return PreparedGraph(graph, index, static, dag)
