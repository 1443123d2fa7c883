"""Temporal edge-list ingestion, the ordered-pair timestamp index, and the underlying static graph."""

from dataclasses import dataclass, field
from functools import cached_property
import gzip
import logging
from pathlib import Path
from typing import IO, Dict, Iterator, List, Optional, Set, Tuple, Union
import zlib

from fancy_dataclass import JSONDataclass
import numpy as np
from numpy.typing import NDArray

from tempotri.utils import INT64_MAX, INT64_MIN, CapacityError, EdgeListParseError, TimeArray, log_duration


logger = logging.getLogger(__name__)

IdArray = NDArray[np.int64]

GZIP_MAGIC = b'\x1f\x8b'
# dense ids are stored as 32-bit integers
MAX_VERTICES = 2 ** 32

_EMPTY_TIMES: TimeArray = np.zeros(0, dtype=np.int64)
_EMPTY_TIMES.flags.writeable = False


def pair_key(a: int, b: int) -> int:
    """Packs an unordered vertex pair into a single integer key.

    Args:
        a: First vertex id
        b: Second vertex id

    Returns:
        Key `(min << 32) | max`"""
    return ((a << 32) | b) if (a < b) else ((b << 32) | a)


##########
# CONFIG #
##########

@dataclass
class IngestOptions:
    """Options controlling how a temporal edge list is parsed.

    - `comment`: lines starting with this prefix are skipped
    - `delimiter`: field separator (`None` splits on any whitespace)
    - `max_vertices`: capacity limit for the number of distinct vertex labels
    - `record_timing`: whether to store the parse time in the diagnostics"""
    comment: str = '#'
    delimiter: Optional[str] = None
    max_vertices: int = MAX_VERTICES
    record_timing: bool = False


@dataclass
class IngestDiagnostics(JSONDataclass, suppress_defaults=False, suppress_none=True):
    """Summary of an ingestion run."""
    lines_read: int = 0
    edges_kept: int = 0
    self_loops_dropped: int = 0
    # wall time of parsing in milliseconds (None when not measured)
    parse_ms: Optional[float] = field(default=None, compare=False)


##################
# TEMPORAL GRAPH #
##################

@dataclass(frozen=True)
class TemporalEdge:
    """A directed temporal edge `(src, dst, timestamp)`, with its position in input order."""
    src: int
    dst: int
    timestamp: int
    index: int


@dataclass
class TemporalGraph:
    """A directed temporal multigraph stored as three parallel columns in input order.

    Vertices are dense ids `0, ..., n - 1`; `labels[i]` is the original label of vertex `i`."""
    n: int
    src: IdArray
    dst: IdArray
    times: TimeArray
    labels: List[str] = field(default_factory=list)
    diagnostics: IngestDiagnostics = field(default_factory=IngestDiagnostics)

    def __post_init__(self) -> None:
        if not (len(self.src) == len(self.dst) == len(self.times)):
            raise ValueError('edge columns must have equal length')
        if len(self.src) and (max(int(self.src.max()), int(self.dst.max())) >= self.n):
            raise ValueError(f'vertex id out of range for n = {self.n}')

    @classmethod
    def from_edges(cls, edges: List[Tuple[int, int, int]], n: Optional[int] = None) -> 'TemporalGraph':
        """Constructs a graph directly from `(src, dst, timestamp)` triples of dense ids.

        Self-loops are dropped, as in [`parse_edge_list`][tempotri.graph.parse_edge_list].

        Args:
            edges: Edge triples
            n: Number of vertices (by default, one more than the largest id)

        Returns:
            A new `TemporalGraph`"""
        if n is None:
            n = max((max(u, v) for (u, v, _) in edges), default=-1) + 1
        kept = [(u, v, t) for (u, v, t) in edges if (u != v)]
        arr = np.array(kept, dtype=np.int64).reshape(-1, 3)
        diagnostics = IngestDiagnostics(lines_read=len(edges), edges_kept=len(kept), self_loops_dropped=len(edges) - len(kept))
        return cls(n, arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), [str(i) for i in range(n)], diagnostics)

    @property
    def m(self) -> int:
        """Number of temporal edges."""
        return len(self.times)

    @property
    def time_span(self) -> Optional[Tuple[int, int]]:
        """Gets the (minimum, maximum) timestamp, or `None` for an empty graph."""
        if self.m == 0:
            return None
        return (int(self.times.min()), int(self.times.max()))

    @property
    def label_map(self) -> Dict[str, int]:
        """Gets the mapping from original vertex label to dense id."""
        return {label: i for (i, label) in enumerate(self.labels)}

    def iter_edges(self) -> Iterator[TemporalEdge]:
        """Iterates through the temporal edges in input order."""
        for (i, (u, v, t)) in enumerate(zip(self.src.tolist(), self.dst.tolist(), self.times.tolist())):
            yield TemporalEdge(u, v, t, i)

    @property
    def edges(self) -> List[TemporalEdge]:
        """Gets the list of temporal edges in input order."""
        return list(self.iter_edges())


def _read_bytes(source: Union[bytes, IO[bytes]]) -> bytes:
    data = source if isinstance(source, bytes) else source.read()
    if data[:2] == GZIP_MAGIC:
        try:
            data = gzip.decompress(data)
        except (EOFError, zlib.error) as e:
            raise OSError(f'invalid gzip data: {e}') from e
    return data

def parse_edge_list(source: Union[bytes, IO[bytes]], options: Optional[IngestOptions] = None) -> TemporalGraph:
    """Parses a temporal edge list of `src dst timestamp` lines.

    Labels are arbitrary tokens, relabeled to dense ids in order of first appearance. Self-loops are dropped and tallied in the diagnostics. Edges need not be sorted by time. Gzip-compressed input is detected by its magic bytes.

    Args:
        source: Raw bytes or a binary stream
        options: Ingestion options

    Returns:
        The parsed `TemporalGraph`

    Raises:
        EdgeListParseError: If a line has the wrong number of fields or an unparsable timestamp
        CapacityError: If there are more distinct labels than `options.max_vertices`
        OSError: If gzip-compressed input is truncated or corrupt"""
    options = options or IngestOptions()
    comment = options.comment.encode()
    delimiter = None if (options.delimiter is None) else options.delimiter.encode()
    ids: Dict[bytes, int] = {}
    src: List[int] = []
    dst: List[int] = []
    times: List[int] = []
    diagnostics = IngestDiagnostics()
    with log_duration('parse edge list') as timing:
        data = _read_bytes(source)
        for (line_no, line) in enumerate(data.splitlines(), start=1):
            diagnostics.lines_read += 1
            line = line.strip()
            if (not line) or line.startswith(comment):
                continue
            toks = line.split(delimiter)
            if len(toks) != 3:
                raise EdgeListParseError(line_no, f'expected 3 fields, got {len(toks)}')
            try:
                t = int(toks[2])
            except ValueError:
                raise EdgeListParseError(line_no, f'invalid timestamp {toks[2].decode(errors="replace")!r}') from None
            if not (INT64_MIN <= t <= INT64_MAX):
                raise EdgeListParseError(line_no, 'timestamp out of 64-bit range')
            (u, v) = (ids.setdefault(toks[0], len(ids)), ids.setdefault(toks[1], len(ids)))
            if len(ids) > options.max_vertices:
                raise CapacityError(f'more than {options.max_vertices} distinct vertices')
            if u == v:
                diagnostics.self_loops_dropped += 1
                continue
            src.append(u)
            dst.append(v)
            times.append(t)
    diagnostics.edges_kept = len(times)
    if options.record_timing:
        diagnostics.parse_ms = timing['ms']
    # undecodable bytes map to lone surrogates, so distinct labels stay distinct
    labels = [label.decode(errors='surrogateescape') for label in ids]
    logger.info('parsed %d temporal edges on %d vertices (%d self-loops dropped)', len(times), len(ids), diagnostics.self_loops_dropped)
    return TemporalGraph(
        n=len(ids),
        src=np.array(src, dtype=np.int64),
        dst=np.array(dst, dtype=np.int64),
        times=np.array(times, dtype=np.int64),
        labels=labels,
        diagnostics=diagnostics,
    )

def load_edge_list(path: Union[str, Path], options: Optional[IngestOptions] = None) -> TemporalGraph:
    """Loads a temporal edge list from a (possibly gzipped) file.

    Args:
        path: Path to the edge list
        options: Ingestion options

    Returns:
        The parsed `TemporalGraph`"""
    with open(path, 'rb') as fp:
        return parse_edge_list(fp, options)


##############
# PAIR INDEX #
##############

@dataclass
class PairIndex:
    """CSR-style index from each ordered vertex pair `(a, b)` to its timestamp-sorted sequence of `a -> b` edge times.

    Pair slot `k` covers `times[ptr[k]:ptr[k + 1]]`; `span(a, b)` finds those bounds in constant time."""
    n: int
    pair_src: IdArray
    pair_dst: IdArray
    ptr: IdArray
    times: TimeArray
    _spans: Dict[Tuple[int, int], Tuple[int, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._spans:
            bounds = self.ptr.tolist()
            self._spans = {pair: (bounds[k], bounds[k + 1]) for (k, pair) in enumerate(zip(self.pair_src.tolist(), self.pair_dst.tolist()))}
        self.times.flags.writeable = False

    @property
    def m(self) -> int:
        """Total number of stored timestamps."""
        return len(self.times)

    @property
    def num_pairs(self) -> int:
        """Number of ordered pairs with at least one temporal edge."""
        return len(self.pair_src)

    @cached_property
    def time_values(self) -> List[int]:
        """Gets the stored timestamps as Python integers, in slot order."""
        return self.times.tolist()

    def span(self, a: int, b: int) -> Tuple[int, int]:
        """Gets the bounds `(start, stop)` of the ordered pair `(a, b)` in `times` (`(0, 0)` if it has no temporal edges)."""
        return self._spans.get((a, b), (0, 0))

    def seq(self, a: int, b: int) -> TimeArray:
        """Gets the ascending timestamps of the edges `a -> b` (a read-only view; empty if none)."""
        bounds = self._spans.get((a, b))
        if bounds is None:
            return _EMPTY_TIMES
        return self.times[bounds[0]:bounds[1]]

    def sigma(self, a: int, b: int) -> int:
        """Gets the temporal multiplicity of the ordered pair `(a, b)`."""
        (start, stop) = self.span(a, b)
        return stop - start

    @property
    def multiplicities(self) -> IdArray:
        """Gets the multiplicity of every stored pair, in slot order."""
        return np.diff(self.ptr)

    @property
    def max_multiplicity(self) -> int:
        """Gets the largest multiplicity over all ordered pairs (0 if empty)."""
        return int(self.multiplicities.max()) if self.num_pairs else 0


def build_pair_index(graph: TemporalGraph) -> PairIndex:
    """Groups the temporal edges by ordered pair, sorting each pair's timestamps.

    The sort is stable, so equal timestamps within a pair keep their input order.

    Args:
        graph: Input temporal graph

    Returns:
        The `PairIndex` of the graph"""
    with log_duration('build pair index'):
        # lexsort is stable; last key is primary
        order = np.lexsort((graph.times, graph.dst, graph.src))
        src = graph.src[order]
        dst = graph.dst[order]
        times = graph.times[order]
        if len(order):
            starts = np.flatnonzero(np.concatenate(([True], (src[1:] != src[:-1]) | (dst[1:] != dst[:-1]))))
        else:
            starts = np.zeros(0, dtype=np.int64)
        ptr = np.append(starts, len(order)).astype(np.int64)
    index = PairIndex(graph.n, src[starts], dst[starts], ptr, times)
    logger.debug('pair index: %d ordered pairs, max multiplicity %d', index.num_pairs, index.max_multiplicity)
    return index


################
# STATIC GRAPH #
################

@dataclass
class StaticGraph:
    """The underlying undirected simple graph, as sorted CSR adjacency plus a hash set of edges.

    The neighbors of vertex `v` are `indices[indptr[v]:indptr[v + 1]]`."""
    n: int
    indptr: IdArray
    indices: IdArray
    edge_keys: Set[int] = field(default_factory=set, repr=False)

    @property
    def m_s(self) -> int:
        """Number of static edges."""
        return len(self.indices) // 2

    @property
    def degrees(self) -> IdArray:
        """Gets the degree of every vertex."""
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> IdArray:
        """Gets the sorted neighbors of a vertex."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, a: int, b: int) -> bool:
        """Checks whether `{a, b}` is a static edge (expected constant time)."""
        return pair_key(a, b) in self.edge_keys

    def iter_edges(self) -> Iterator[Tuple[int, int]]:
        """Iterates through the static edges as `(a, b)` with `a < b`."""
        for key in sorted(self.edge_keys):
            yield (key >> 32, key & 0xFFFFFFFF)


def extract_static_graph(index: PairIndex) -> StaticGraph:
    """Collapses the ordered pairs of a `PairIndex` into undirected static edges.

    Args:
        index: Pair index of a temporal graph

    Returns:
        The underlying `StaticGraph`"""
    lo = np.minimum(index.pair_src, index.pair_dst)
    hi = np.maximum(index.pair_src, index.pair_dst)
    order = np.lexsort((hi, lo))
    (lo, hi) = (lo[order], hi[order])
    if len(lo):
        keep = np.concatenate(([True], (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])))
        (lo, hi) = (lo[keep], hi[keep])
    rows = np.concatenate((lo, hi))
    cols = np.concatenate((hi, lo))
    order = np.lexsort((cols, rows))
    indptr = np.zeros(index.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=index.n), out=indptr[1:])
    keys = (lo.astype(np.uint64) << np.uint64(32)) | hi.astype(np.uint64)
    graph = StaticGraph(index.n, indptr, cols[order].astype(np.int64), set(keys.tolist()))
    logger.debug('static graph: %d vertices, %d edges', graph.n, graph.m_s)
    return graph
