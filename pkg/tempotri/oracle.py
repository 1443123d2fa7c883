"""Brute-force reference counter that tests every temporal edge triple of each static triangle directly."""

from itertools import product
import logging
from typing import List, Tuple

from tempotri.degeneracy import OrientedGraph
from tempotri.graph import PairIndex, TemporalGraph
from tempotri.motif import DeltaTriple, TypeCounts, encode_type
from tempotri.triangles import SourceTriangle, iter_source_triangles
from tempotri.utils import BudgetExceededError, log_duration


logger = logging.getLogger(__name__)

DEFAULT_ORACLE_BUDGET = 10 ** 9

# (timestamp, (src, dst))
_TimedArc = Tuple[int, Tuple[int, int]]


def _pair_edges(index: PairIndex, a: int, b: int) -> List[_TimedArc]:
    return [(t, (a, b)) for t in index.seq(a, b).tolist()] + [(t, (b, a)) for t in index.seq(b, a).tolist()]

def oracle_count_triangle(tri: SourceTriangle, deltas: DeltaTriple, index: PairIndex) -> TypeCounts:
    """Counts the temporal triangles on one static triangle by checking every triple of edges.

    One edge is taken from each of the three vertex pairs (in either direction). A triple counts if its timestamps are pairwise distinct and, in time order `t1 < t2 < t3`, satisfy `t2 - t1 <= d12`, `t3 - t2 <= d23`, and `t3 - t1 <= d13`.

    Args:
        tri: Static triangle
        deltas: Time constraints (need not be normalized)
        index: Pair index

    Returns:
        `TypeCounts` for this triangle"""
    (u, v, w) = tri
    (d13, d12, d23) = deltas.as_tuple()
    counts = TypeCounts()
    pairs = [_pair_edges(index, u, v), _pair_edges(index, u, w), _pair_edges(index, v, w)]
    for triple in product(*pairs):
        (e1, e2, e3) = sorted(triple)
        (t1, t2, t3) = (e1[0], e2[0], e3[0])
        if (t1 == t2) or (t2 == t3):
            continue
        if (t2 - t1 <= d12) and (t3 - t2 <= d23) and (t3 - t1 <= d13):
            counts.add(encode_type(e1[1], e2[1], e3[1]), 1)
    return counts

def oracle_work(index: PairIndex, dag: OrientedGraph) -> int:
    """Computes the number of edge triples the brute-force counter would examine.

    Args:
        index: Pair index
        dag: Oriented static graph

    Returns:
        Sum over static triangles of the product of the three pair multiplicities (both directions)"""
    def multiplicity(a: int, b: int) -> int:
        return index.sigma(a, b) + index.sigma(b, a)
    work = 0
    for (u, v, w) in iter_source_triangles(dag):
        work += multiplicity(u, v) * multiplicity(u, w) * multiplicity(v, w)
    return work

def oracle_count(graph: TemporalGraph, index: PairIndex, dag: OrientedGraph, deltas: DeltaTriple, budget: int = DEFAULT_ORACLE_BUDGET) -> TypeCounts:
    """Counts the temporal triangles of every type by brute force.

    This is a reference for validating [`count_all`][tempotri.count.count_all] on small graphs.

    Args:
        graph: Temporal graph
        index: Pair index of the graph
        dag: Oriented static graph (used only to enumerate triangles)
        deltas: Time constraints
        budget: Maximum number of edge triples to examine

    Returns:
        `TypeCounts` indexed by `TypeCode`

    Raises:
        BudgetExceededError: If the work exceeds `budget`"""
    work = oracle_work(index, dag)
    if work > budget:
        raise BudgetExceededError(work, budget)
    logger.info('brute-force counting over %d edge triples (m = %d)', work, graph.m)
    counts = TypeCounts()
    with log_duration('brute-force count'):
        for tri in iter_source_triangles(dag):
            counts.merge(oracle_count_triangle(tri, deltas, index))
    return counts


def oracle_count_sequences(s1: List[int], s2: List[int], s3: List[int], deltas: DeltaTriple) -> int:
    """Counts the triples `(t1, t2, t3)` drawn from three timestamp sequences (in that role order) that satisfy the temporal constraints with `t1 < t2 < t3`.

    Args:
        s1: Times of the first edge
        s2: Times of the second edge
        s3: Times of the third edge
        deltas: Time constraints

    Returns:
        Number of valid triples"""
    (d13, d12, d23) = deltas.as_tuple()
    return sum(
        1 for (t1, t2, t3) in product(s1, s2, s3)
        if (t1 < t2 < t3) and (t2 - t1 <= d12) and (t3 - t2 <= d23) and (t3 - t1 <= d13)
    )

