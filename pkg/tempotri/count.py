"""Exact counting of temporal triangles per static triangle, using binary searches and cumulative counts.

For a source triangle `<u, v, w>`, only the timestamp sequences on the pairs `{u, v}` and `{u, w}` are scanned linearly; the sequence on `{v, w}` is only ever binary-searched. Orderings are grouped by the time position of `{v, w}`:

- position 3: [`count_vw3`][tempotri.count.count_vw3]
- position 2: [`count_vw2`][tempotri.count.count_vw2]
- position 1: [`count_vw1`][tempotri.count.count_vw1]

Edge times in a temporal triangle are strictly increasing, so any window expressing "before" or "after" another edge excludes equal timestamps, while gap constraints (`<= delta`) stay closed.

Sequences of at most `SHORT_SEQUENCE` timestamps are counted on Python lists with `bisect`, where the per-call cost of numpy would dominate. A cell whose sequences cannot hold a temporal triangle, judging by their first and last times alone, is skipped before any counting."""

from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate
import logging
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from tempotri.degeneracy import OrientedGraph
from tempotri.graph import PairIndex, TemporalGraph
from tempotri.motif import CLASSIFICATION_TABLE, DeltaTriple, Ordering, Orientation, PairRole, TypeCode, TypeCounts
from tempotri.triangles import SourceTriangle, iter_source_triangles
from tempotri.utils import TimeArray, checked_add, log_duration, shift_times


logger = logging.getLogger(__name__)

CountArray = NDArray[np.int64]
# ascending timestamps, as an int64 array or a list of Python integers
Times = Union[TimeArray, Sequence[int]]


##################
# RANGE COUNTING #
##################

class Window(NamedTuple):
    """A time interval; a `None` endpoint is unbounded."""
    lo: Optional[int]
    hi: Optional[int]
    lo_closed: bool = True
    hi_closed: bool = True

    @classmethod
    def closed(cls, lo: int, hi: int) -> 'Window':
        """Constructs `[lo, hi]`."""
        return cls(lo, hi)

    @classmethod
    def after(cls, lo: int, strict: bool = False) -> 'Window':
        """Constructs `[lo, inf)`, or `(lo, inf)` if strict."""
        return cls(lo, None, lo_closed=not strict)

    @classmethod
    def before(cls, hi: int, strict: bool = False) -> 'Window':
        """Constructs `(-inf, hi]`, or `(-inf, hi)` if strict."""
        return cls(None, hi, hi_closed=not strict)


def edge_count(window: Window, seq: TimeArray) -> int:
    """Counts the timestamps of a sorted sequence lying in a window, with two binary searches.

    Args:
        window: Time interval
        seq: Ascending timestamps

    Returns:
        Number of timestamps in the window (0 if the window is empty)"""
    start = 0 if (window.lo is None) else int(np.searchsorted(seq, window.lo, 'left' if window.lo_closed else 'right'))
    stop = len(seq) if (window.hi is None) else int(np.searchsorted(seq, window.hi, 'right' if window.hi_closed else 'left'))
    return max(stop - start, 0)


class WindowKind(Enum):
    """Per-edge window `W(t)` used for cumulative counts.

    - `PLUS_DELTA`: `[t, t + delta]`
    - `INF`: `[t, inf)`
    - `MINUS_DELTA`: `[t - delta, t]`
    - `MINUS_INF`: `(-inf, t]`

    When strict, the endpoint at `t` itself is open."""
    PLUS_DELTA = '+delta'
    INF = 'inf'
    MINUS_DELTA = '-delta'
    MINUS_INF = '-inf'


@dataclass
class PrefixCounts:
    """Cumulative counts `values[l] = sum over r < l of edge_count(W(seq_i[r]), seq_j)`, with `values[0] = 0`.

    The cumulative count over the slice `seq_i[a:b]` is `values[b] - values[a]`."""
    values: CountArray


def _window_counts(seq_i: TimeArray, seq_j: TimeArray, kind: WindowKind, delta: int, strict: bool) -> CountArray:
    """For every timestamp `t` in `seq_i`, counts the timestamps of `seq_j` in `W(t)`."""
    if kind is WindowKind.PLUS_DELTA:
        lo = np.searchsorted(seq_j, seq_i, 'right' if strict else 'left')
        hi = np.searchsorted(seq_j, shift_times(seq_i, delta), 'right')
    elif kind is WindowKind.INF:
        lo = np.searchsorted(seq_j, seq_i, 'right' if strict else 'left')
        hi = len(seq_j)
    elif kind is WindowKind.MINUS_DELTA:
        lo = np.searchsorted(seq_j, shift_times(seq_i, -delta), 'left')
        hi = np.searchsorted(seq_j, seq_i, 'left' if strict else 'right')
    else:
        lo = 0
        hi = np.searchsorted(seq_j, seq_i, 'left' if strict else 'right')
    return np.maximum(hi - lo, 0)

def build_prefix(seq_i: TimeArray, seq_j: TimeArray, kind: WindowKind, delta: int = 0, strict: bool = False, out: Optional[CountArray] = None) -> PrefixCounts:
    """Computes the cumulative counts of `seq_j` timestamps in the windows around each `seq_i` timestamp, in one pass over `seq_i`.

    Args:
        seq_i: Ascending timestamps to scan
        seq_j: Ascending timestamps to count
        kind: Window kind
        delta: Window length for the `PLUS_DELTA` and `MINUS_DELTA` kinds
        strict: Whether to exclude timestamps equal to the scanned one
        out: Optional scratch buffer of length at least `len(seq_i) + 1`

    Returns:
        `PrefixCounts` of length `len(seq_i) + 1`"""
    size = len(seq_i) + 1
    values = np.empty(size, dtype=np.int64) if (out is None) else out[:size]
    values[0] = 0
    np.cumsum(_window_counts(seq_i, seq_j, kind, delta, strict), out=values[1:])
    return PrefixCounts(values)


class PrefixScratch:
    """Reusable buffers for prefix arrays, grown to the largest multiplicity seen so far."""

    def __init__(self, num_buffers: int = 2) -> None:
        self._buffers = [np.zeros(1, dtype=np.int64) for _ in range(num_buffers)]

    def buffer(self, slot: int, size: int) -> CountArray:
        """Gets a buffer of length at least `size`."""
        buf = self._buffers[slot]
        if len(buf) < size:
            buf = self._buffers[slot] = np.zeros(max(size, 2 * len(buf)), dtype=np.int64)
        return buf

    def prefix(self, slot: int, seq_i: TimeArray, seq_j: TimeArray, kind: WindowKind, delta: int = 0, strict: bool = False) -> PrefixCounts:
        """Builds a prefix array into the given buffer slot (see [`build_prefix`][tempotri.count.build_prefix])."""
        return build_prefix(seq_i, seq_j, kind, delta, strict, out=self.buffer(slot, len(seq_i) + 1))


###################
# SHORT SEQUENCES #
###################

# sequences no longer than this are counted on Python lists with bisect rather than numpy
SHORT_SEQUENCE = 48


def _short_vw3(s1: List[int], s2: List[int], s3: List[int], d13: int, d12: int, d23: int) -> int:
    n3 = len(s3)
    plus = list(accumulate((bisect_right(s3, t + d13) - bisect_right(s3, t) for t in s1), initial=0))
    inf = list(accumulate((n3 - bisect_right(s3, t) for t in s1), initial=0))
    total = 0
    for t2 in s2:
        first = bisect_left(s1, t2 - d12)
        last = bisect_left(s1, t2)
        if first == last:
            continue
        split = min(max(bisect_right(s1, t2 + d23 - d13), first), last)
        upto_t2 = bisect_right(s3, t2)
        total += (plus[split] - plus[first]) - (inf[split] - inf[first]) + (split - first) * (n3 - upto_t2) + (last - split) * (bisect_right(s3, t2 + d23) - upto_t2)
    return total

def _short_vw2(s1: List[int], s2: List[int], s3: List[int], d13: int, d12: int, d23: int) -> int:
    below = list(accumulate((bisect_left(s2, t) for t in s3), initial=0))
    recent = list(accumulate((bisect_left(s2, t) - bisect_left(s2, t - d23) for t in s3), initial=0))
    (near, far) = (min(d12, d23), max(d12, d23))
    total = 0
    for t1 in s1:
        first = bisect_right(s3, t1)
        last = bisect_right(s3, t1 + d13)
        if first == last:
            continue
        low_end = min(max(bisect_right(s3, t1 + near), first), last)
        mid_end = min(max(bisect_right(s3, t1 + far), low_end), last)
        upto_t1 = bisect_right(s2, t1)
        upto_d12 = bisect_right(s2, t1 + d12)
        total += (below[low_end] - below[first]) - (low_end - first) * upto_t1
        if d12 <= d23:
            total += (mid_end - low_end) * (upto_d12 - upto_t1)
        else:
            total += recent[mid_end] - recent[low_end]
        total += (recent[last] - recent[mid_end]) - (below[last] - below[mid_end]) + (last - mid_end) * upto_d12
    return total

def _short_vw1(s1: List[int], s2: List[int], s3: List[int], d13: int, d12: int, d23: int) -> int:
    recent = list(accumulate((bisect_left(s1, t) - bisect_left(s1, t - d13) for t in s3), initial=0))
    below = list(accumulate((bisect_left(s1, t) for t in s3), initial=0))
    total = 0
    for t2 in s2:
        first = bisect_right(s3, t2)
        last = bisect_right(s3, t2 + d23)
        if first == last:
            continue
        split = min(max(bisect_left(s3, t2 + d13 - d12), first), last)
        before_t2 = bisect_left(s1, t2)
        within_d12 = before_t2 - bisect_left(s1, t2 - d12)
        total += (split - first) * within_d12 + (recent[last] - recent[split]) - (below[last] - below[split]) + (last - split) * before_t2
    return total


def _as_list(seq: Times) -> List[int]:
    return seq if isinstance(seq, list) else np.asarray(seq, dtype=np.int64).tolist()

def _as_array(seq: Times) -> TimeArray:
    return np.asarray(seq, dtype=np.int64)

def _is_short(s1: Times, s2: Times, s3: Times) -> bool:
    return max(len(s1), len(s2), len(s3)) <= SHORT_SEQUENCE


#################
# PER-ORDERINGS #
#################

def _total(terms: CountArray) -> int:
    return int(terms.sum(dtype=np.int64))

def count_vw3(s1: Times, s2: Times, s3: Times, deltas: DeltaTriple, scratch: Optional[PrefixScratch] = None) -> int:
    """Counts temporal triangles whose third edge lies on `{v, w}`.

    Scans `s1` once to build cumulative counts on `s3`, then for each second edge splits the compatible first edges at `t2 - d13 + d23`: earlier first edges are bounded by `t1 + d13`, later ones by `t2 + d23`.

    Args:
        s1: Ascending times of the first-edge sequence
        s2: Ascending times of the second-edge sequence
        s3: Ascending times of the third-edge sequence
        deltas: Normalized time constraints
        scratch: Reusable prefix buffers

    Returns:
        Number of `(e1, e2, e3)` triples forming a temporal triangle"""
    if not (len(s1) and len(s2) and len(s3)):
        return 0
    (d13, d12, d23) = deltas.as_tuple()
    if _is_short(s1, s2, s3):
        return _short_vw3(_as_list(s1), _as_list(s2), _as_list(s3), d13, d12, d23)
    (s1, s2, s3) = (_as_array(s1), _as_array(s2), _as_array(s3))
    scratch = scratch or PrefixScratch()
    plus = scratch.prefix(0, s1, s3, WindowKind.PLUS_DELTA, d13, strict=True).values
    inf = scratch.prefix(1, s1, s3, WindowKind.INF, strict=True).values
    first = np.searchsorted(s1, shift_times(s2, -d12), 'left')
    last = np.searchsorted(s1, s2, 'left')
    split = np.clip(np.searchsorted(s1, shift_times(s2, d23 - d13), 'right'), first, last)
    after_t2 = len(s3) - np.searchsorted(s3, s2, 'right')
    within_d23 = np.searchsorted(s3, shift_times(s2, d23), 'right') - np.searchsorted(s3, s2, 'right')
    terms = (plus[split] - plus[first]) - (inf[split] - inf[first]) + (split - first) * after_t2 + (last - split) * within_d23
    return _total(terms)

def count_vw2(s1: Times, s2: Times, s3: Times, deltas: DeltaTriple, scratch: Optional[PrefixScratch] = None) -> int:
    """Counts temporal triangles whose second edge lies on `{v, w}`.

    Scans `s3` once to build cumulative counts on `s2`, then for each first edge splits the compatible third edges at offsets `min(d12, d23)` and `max(d12, d23)` from `t1`.

    Args:
        s1: Ascending times of the first-edge sequence
        s2: Ascending times of the second-edge sequence
        s3: Ascending times of the third-edge sequence
        deltas: Normalized time constraints
        scratch: Reusable prefix buffers

    Returns:
        Number of `(e1, e2, e3)` triples forming a temporal triangle"""
    if not (len(s1) and len(s2) and len(s3)):
        return 0
    (d13, d12, d23) = deltas.as_tuple()
    if _is_short(s1, s2, s3):
        return _short_vw2(_as_list(s1), _as_list(s2), _as_list(s3), d13, d12, d23)
    (s1, s2, s3) = (_as_array(s1), _as_array(s2), _as_array(s3))
    scratch = scratch or PrefixScratch()
    below = scratch.prefix(0, s3, s2, WindowKind.MINUS_INF, strict=True).values
    recent = scratch.prefix(1, s3, s2, WindowKind.MINUS_DELTA, d23, strict=True).values
    first = np.searchsorted(s3, s1, 'right')
    last = np.searchsorted(s3, shift_times(s1, d13), 'right')
    low_end = np.clip(np.searchsorted(s3, shift_times(s1, min(d12, d23)), 'right'), first, last)
    mid_end = np.clip(np.searchsorted(s3, shift_times(s1, max(d12, d23)), 'right'), low_end, last)
    upto_t1 = np.searchsorted(s2, s1, 'right')
    upto_d12 = np.searchsorted(s2, shift_times(s1, d12), 'right')
    # third edges within min(d12, d23) of t1: any second edge strictly between t1 and t3
    terms = (below[low_end] - below[first]) - (low_end - first) * upto_t1
    if d12 <= d23:
        terms += (mid_end - low_end) * (upto_d12 - upto_t1)
    else:
        terms += recent[mid_end] - recent[low_end]
    # third edges beyond max(d12, d23): second edge in [t3 - d23, t1 + d12]
    terms += (recent[last] - recent[mid_end]) - (below[last] - below[mid_end]) + (last - mid_end) * upto_d12
    return _total(terms)

def count_vw1(s1: Times, s2: Times, s3: Times, deltas: DeltaTriple, scratch: Optional[PrefixScratch] = None) -> int:
    """Counts temporal triangles whose first edge lies on `{v, w}`.

    Scans `s3` once to build cumulative counts on `s1`, then for each second edge splits the compatible third edges at `t2 + d13 - d12`: earlier third edges leave the first edge bounded by `t2 - d12`, later ones by `t3 - d13`.

    Args:
        s1: Ascending times of the first-edge sequence
        s2: Ascending times of the second-edge sequence
        s3: Ascending times of the third-edge sequence
        deltas: Normalized time constraints
        scratch: Reusable prefix buffers

    Returns:
        Number of `(e1, e2, e3)` triples forming a temporal triangle"""
    if not (len(s1) and len(s2) and len(s3)):
        return 0
    (d13, d12, d23) = deltas.as_tuple()
    if _is_short(s1, s2, s3):
        return _short_vw1(_as_list(s1), _as_list(s2), _as_list(s3), d13, d12, d23)
    (s1, s2, s3) = (_as_array(s1), _as_array(s2), _as_array(s3))
    scratch = scratch or PrefixScratch()
    recent = scratch.prefix(0, s3, s1, WindowKind.MINUS_DELTA, d13, strict=True).values
    below = scratch.prefix(1, s3, s1, WindowKind.MINUS_INF, strict=True).values
    first = np.searchsorted(s3, s2, 'right')
    last = np.searchsorted(s3, shift_times(s2, d23), 'right')
    split = np.clip(np.searchsorted(s3, shift_times(s2, d13 - d12), 'left'), first, last)
    before_t2 = np.searchsorted(s1, s2, 'left')
    within_d12 = before_t2 - np.searchsorted(s1, shift_times(s2, -d12), 'left')
    terms = (split - first) * within_d12 + (recent[last] - recent[split]) - (below[last] - below[split]) + (last - split) * before_t2
    return _total(terms)


_COUNTERS = {3: count_vw3, 2: count_vw2, 1: count_vw1}


################
# PER-TRIANGLE #
################

Sequences = Tuple[TimeArray, TimeArray, TimeArray]


def resolve_sequences(tri: SourceTriangle, ordering: Ordering, orientation: Orientation, index: PairIndex) -> Sequences:
    """Gets the timestamp sequences `(S1, S2, S3)` holding the first, second, and third edge of a cell.

    Args:
        tri: Source triangle
        ordering: Temporal ordering
        orientation: Orientation
        index: Pair index

    Returns:
        Three ascending timestamp arrays"""
    (s1, s2, s3) = (index.seq(*orientation.arc(role, tri)) for role in ordering.roles)
    return (s1, s2, s3)

def count_cell(tri: SourceTriangle, ordering: Ordering, orientation: Orientation, deltas: DeltaTriple, index: PairIndex, scratch: Optional[PrefixScratch] = None) -> int:
    """Counts the temporal triangles on a static triangle with a given ordering and orientation.

    Dispatches on the time position of the `{v, w}` pair.

    Args:
        tri: Source triangle
        ordering: Temporal ordering
        orientation: Orientation
        deltas: Normalized time constraints
        index: Pair index
        scratch: Reusable prefix buffers

    Returns:
        Number of temporal triangles"""
    return _COUNTERS[ordering.vw_position](*resolve_sequences(tri, ordering, orientation, index), deltas, scratch)


@dataclass
class CountingStats:
    """Instrumentation of a counting run."""
    triangles: int = 0
    cells_evaluated: int = 0
    # cells with an empty sequence, or whose time ranges rule out any temporal triangle
    cells_skipped: int = 0
    # timestamps scanned linearly (only sequences incident to the source vertex)
    scan_touches: int = 0

    def merge(self, other: 'CountingStats') -> None:
        """Adds another set of statistics into this one, in-place."""
        self.triangles += other.triangles
        self.cells_evaluated += other.cells_evaluated
        self.cells_skipped += other.cells_skipped
        self.scan_touches += other.scan_touches


@dataclass
class CountResult:
    """Counts per type, counts per (ordering, orientation) cell, and instrumentation."""
    counts: TypeCounts = field(default_factory=TypeCounts)
    # cells[ordering index - 1][orientation code]
    cells: List[List[int]] = field(default_factory=lambda: [[0] * 8 for _ in range(6)])
    stats: CountingStats = field(default_factory=CountingStats)

    def merge(self, other: 'CountResult') -> None:
        """Adds another result into this one, in-place."""
        self.counts.merge(other.counts)
        for (row, other_row) in zip(self.cells, other.cells):
            for (j, val) in enumerate(other_row):
                row[j] = checked_add(row[j], val)
        self.stats.merge(other.stats)


class _Cell(NamedTuple):
    ordering: int
    orientation: int
    type_code: TypeCode
    vw_position: int
    # slots (2 * role + reversed) of the first, second, and third edge's directed sequence
    slots: Tuple[int, int, int]
    # positions (0-based) of the sequences scanned linearly
    scanned: Tuple[int, int]


def _make_cell_groups() -> List[Tuple[Tuple[int, int, int], List[_Cell]]]:
    """Groups the 48 cells by orientation, which fixes the set of directed sequences they read."""
    scanned = {3: (0, 1), 2: (2, 0), 1: (2, 1)}
    groups = []
    for orientation in Orientation.all():
        slot = {role: 2 * int(role) + int(orientation.reversed(role)) for role in PairRole}
        group = []
        for ordering in Ordering.all():
            (r1, r2, r3) = ordering.roles
            pos = ordering.vw_position
            group.append(_Cell(ordering.index, orientation.code, CLASSIFICATION_TABLE[ordering.index, orientation.code], pos, (slot[r1], slot[r2], slot[r3]), scanned[pos]))
        groups.append(((slot[PairRole.UV], slot[PairRole.UW], slot[PairRole.VW]), group))
    return groups


_CELL_GROUPS = _make_cell_groups()


def _may_interact(first: Tuple[int, int, int], last: Tuple[int, int, int], d13: int, d12: int, d23: int) -> bool:
    """Given the earliest and latest time of each of three sequences, checks whether any triple drawn from them could be in time order within the constraints."""
    return (
        (last[1] > first[0]) and (first[1] - last[0] <= d12)
        and (last[2] > first[1]) and (first[2] - last[1] <= d23)
        and (last[2] > first[0]) and (first[2] - last[0] <= d13)
    )

def _count_shard(sources: Optional[Iterable[int]], index: PairIndex, dag: OrientedGraph, deltas: DeltaTriple) -> CountResult:
    result = CountResult()
    (counts, cells, stats) = (result.counts, result.cells, result.stats)
    scratch = PrefixScratch()
    (d13, d12, d23) = deltas.as_tuple()
    (times, values) = (index.times, index.time_values)
    for tri in iter_source_triangles(dag, sources):
        stats.triangles += 1
        (u, v, w) = tri
        # bounds of the six directed sequences, in slot order
        spans = [index.span(a, b) for (a, b) in ((u, v), (v, u), (u, w), (w, u), (v, w), (w, v))]
        for (role_slots, group) in _CELL_GROUPS:
            if any(spans[k][0] == spans[k][1] for k in role_slots):
                stats.cells_skipped += len(group)
                continue
            for cell in group:
                bounds = [spans[k] for k in cell.slots]
                first = (values[bounds[0][0]], values[bounds[1][0]], values[bounds[2][0]])
                last = (values[bounds[0][1] - 1], values[bounds[1][1] - 1], values[bounds[2][1] - 1])
                if not _may_interact(first, last, d13, d12, d23):
                    stats.cells_skipped += 1
                    continue
                stats.cells_evaluated += 1
                sizes = [stop - start for (start, stop) in bounds]
                stats.scan_touches += sizes[cell.scanned[0]] + sizes[cell.scanned[1]]
                source = values if (max(sizes) <= SHORT_SEQUENCE) else times
                triple = [source[start:stop] for (start, stop) in bounds]
                cnt = _COUNTERS[cell.vw_position](*triple, deltas, scratch)
                if cnt:
                    counts.add(cell.type_code, cnt)
                    row = cells[cell.ordering - 1]
                    row[cell.orientation] = checked_add(row[cell.orientation], cnt)
    return result

def count_all_detailed(graph: TemporalGraph, index: PairIndex, dag: OrientedGraph, deltas: DeltaTriple, threads: int = 1) -> CountResult:
    """Counts the temporal triangles of every type, also reporting per-cell counts and instrumentation.

    With `threads > 1`, source vertices are dealt round-robin into shards counted concurrently; each shard owns its counters and scratch buffers, and the shard results are summed with overflow checks.

    Args:
        graph: Temporal graph
        index: Pair index of the graph
        dag: Degeneracy-oriented static graph
        deltas: Time constraints (normalized before counting)
        threads: Number of worker threads

    Returns:
        A `CountResult`

    Raises:
        CountOverflowError: If any counter exceeds the unsigned 64-bit range"""
    if threads < 1:
        raise ValueError(f'threads must be positive, got {threads}')
    deltas = deltas.normalized()
    with log_duration('count temporal triangles'):
        if threads == 1:
            result = _count_shard(None, index, dag, deltas)
        else:
            shards = [range(k, dag.n, threads) for k in range(threads)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                partials = list(pool.map(lambda shard: _count_shard(shard, index, dag, deltas), shards))
            result = CountResult()
            for partial in partials:
                result.merge(partial)
    logger.info('counted %d temporal triangles over %d static triangles (m = %d, deltas = %s)', result.counts.total, result.stats.triangles, graph.m, deltas.as_tuple())
    return result

def count_all(graph: TemporalGraph, index: PairIndex, dag: OrientedGraph, deltas: DeltaTriple, threads: int = 1) -> TypeCounts:
    """Counts the temporal triangles of each of the eight types.

    Every static triangle is visited once from its source vertex, and each of its 48 (ordering, orientation) cells is counted by the routine matching the time position of `{v, w}`.

    Args:
        graph: Temporal graph
        index: Pair index of the graph
        dag: Degeneracy-oriented static graph
        deltas: Time constraints (normalized before counting)
        threads: Number of worker threads

    Returns:
        `TypeCounts` indexed by `TypeCode`"""
    return count_all_detailed(graph, index, dag, deltas, threads=threads).counts
