from functools import partial
from itertools import product
import time

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from tempotri import count as count_module
from tempotri.count import PrefixScratch, Window, WindowKind, build_prefix, count_all, count_all_detailed, count_cell, count_vw1, count_vw2, count_vw3, edge_count, resolve_sequences
from tempotri.graph import TemporalGraph, load_edge_list
from tempotri.motif import CLASSIFICATION_TABLE, DeltaTriple, Ordering, Orientation, TypeCode
from tempotri.oracle import oracle_count, oracle_count_sequences
from tempotri.triangles import iter_source_triangles, prepare_graph
from tempotri.utils import INT64_MAX, INT64_MIN, UINT64_MAX, CountOverflowError

from .generators import clique_copies, dataset_path, dense_graph, random_deltas, random_graph, random_sequence


COUNTERS = [count_vw3, count_vw2, count_vw1]

# every pair carries an edge in each direction
BIDIRECTED_TRIANGLE = [(1, 2, 10), (2, 3, 20), (3, 1, 30), (2, 1, 12), (3, 2, 22), (1, 3, 32)]

PROPERTY_SETTINGS = settings(
    max_examples=300,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

_SEQUENCE = st.lists(st.integers(0, 60), max_size=12).map(lambda vals: np.array(sorted(vals), dtype=np.int64))
_DELTA = st.integers(0, 40)


def arr(*vals):
    return np.array(vals, dtype=np.int64)

def run_count(edges, deltas, threads=1):
    prepared = prepare_graph(TemporalGraph.from_edges(edges))
    return count_all(prepared.graph, prepared.index, prepared.dag, deltas, threads=threads)

def assert_matches_oracle(graph, deltas):
    prepared = prepare_graph(graph)
    counts = count_all(graph, prepared.index, prepared.dag, deltas)
    expected = oracle_count(graph, prepared.index, prepared.dag, deltas)
    assert list(counts) == list(expected)


##################
# RANGE COUNTING #
##################

def test_edge_count():
    """Tests counting timestamps in a window."""
    seq = arr(1, 3, 5, 7)
    assert edge_count(Window.closed(2, 6), seq) == 2
    assert edge_count(Window.closed(8, 9), seq) == 0
    assert edge_count(Window(3, 7, lo_closed=False), seq) == 2
    assert edge_count(Window.closed(3, 3), seq) == 1
    assert edge_count(Window.closed(6, 2), seq) == 0
    assert edge_count(Window.after(5), seq) == 2
    assert edge_count(Window.after(5, strict=True), seq) == 1
    assert edge_count(Window.before(5), seq) == 3
    assert edge_count(Window.before(5, strict=True), seq) == 2
    assert edge_count(Window(None, None), seq) == 4
    assert edge_count(Window.closed(0, 10), arr()) == 0

def test_build_prefix():
    """Tests cumulative window counts for each window kind."""
    (seq_i, seq_j) = (arr(1, 3), arr(2, 3, 4))
    assert build_prefix(seq_i, seq_j, WindowKind.PLUS_DELTA, 1).values.tolist() == [0, 1, 3]
    assert build_prefix(seq_i, seq_j, WindowKind.PLUS_DELTA, 1, strict=True).values.tolist() == [0, 1, 2]
    assert build_prefix(seq_i, seq_j, WindowKind.INF).values.tolist() == [0, 3, 5]
    assert build_prefix(seq_i, seq_j, WindowKind.INF, strict=True).values.tolist() == [0, 3, 4]
    assert build_prefix(seq_i, seq_j, WindowKind.MINUS_DELTA, 1).values.tolist() == [0, 0, 2]
    assert build_prefix(seq_i, seq_j, WindowKind.MINUS_DELTA, 1, strict=True).values.tolist() == [0, 0, 1]
    assert build_prefix(seq_i, seq_j, WindowKind.MINUS_INF).values.tolist() == [0, 0, 2]
    assert build_prefix(seq_i, seq_j, WindowKind.MINUS_INF, strict=True).values.tolist() == [0, 0, 1]
    # window [t, t + 0] holds only equal timestamps
    assert build_prefix(arr(0, 1), arr(0, 1), WindowKind.PLUS_DELTA, 0).values.tolist() == [0, 1, 2]
    assert build_prefix(arr(), seq_j, WindowKind.INF).values.tolist() == [0]

@pytest.mark.parametrize('kind', list(WindowKind))
@pytest.mark.parametrize('strict', [False, True])
def test_build_prefix_matches_edge_count(kind, strict):
    """Tests that cumulative counts agree with per-window binary searches."""
    rng = np.random.default_rng(123)
    for _ in range(50):
        (seq_i, seq_j) = (random_sequence(rng), random_sequence(rng))
        delta = int(rng.integers(0, 20))
        windows = {
            WindowKind.PLUS_DELTA: lambda t: Window(t, t + delta, lo_closed=not strict),
            WindowKind.INF: lambda t: Window(t, None, lo_closed=not strict),
            WindowKind.MINUS_DELTA: lambda t: Window(t - delta, t, hi_closed=not strict),
            WindowKind.MINUS_INF: lambda t: Window(None, t, hi_closed=not strict),
        }
        expected = np.cumsum([0] + [edge_count(windows[kind](t), seq_j) for t in seq_i.tolist()])
        assert build_prefix(seq_i, seq_j, kind, delta, strict).values.tolist() == expected.tolist()

def test_prefix_scratch():
    """Tests that scratch buffers grow and are reused."""
    scratch = PrefixScratch()
    buf = scratch.buffer(0, 10)
    assert len(buf) >= 10
    assert scratch.buffer(0, 5) is buf
    assert len(scratch.buffer(1, 3)) >= 3
    prefix = scratch.prefix(0, arr(1, 3), arr(2, 3, 4), WindowKind.INF)
    assert prefix.values.tolist() == [0, 3, 5]
    assert np.shares_memory(prefix.values, buf)


#########################
# PER-ORDERING COUNTERS #
#########################

def test_vw3_examples():
    """Tests the counter for orderings with the {v, w} edge last."""
    deltas = DeltaTriple(15, 10, 10)
    assert count_vw3(arr(10), arr(15), arr(20), deltas) == 1
    assert count_vw3(arr(10), arr(15), arr(40), deltas) == 0
    # third edge must be strictly after the second
    assert count_vw3(arr(10), arr(15), arr(15), deltas) == 0
    assert count_vw3(arr(10, 12), arr(15), arr(20, 22, 25), DeltaTriple(12, 10, 10)) == 4
    assert count_vw3(arr(10, 12), arr(15), arr(20, 22, 25), deltas) == 6

def test_vw2_examples():
    """Tests the counter for orderings with the {v, w} edge second."""
    assert count_vw2(arr(10), arr(15), arr(20), DeltaTriple(10, 6, 5)) == 1
    assert count_vw2(arr(10), arr(15), arr(20), DeltaTriple(10, 4, 5).normalized()) == 0
    assert count_vw2(arr(10), arr(10), arr(20), DeltaTriple(10, 6, 5)) == 0

def test_vw1_examples():
    """Tests the counter for orderings with the {v, w} edge first."""
    assert count_vw1(arr(10), arr(15), arr(20), DeltaTriple(10, 6, 5)) == 1
    assert count_vw1(arr(), arr(15), arr(20), DeltaTriple(10, 6, 5)) == 0
    assert count_vw1(arr(10), arr(15), arr(21), DeltaTriple(10, 6, 5)) == 0

@pytest.mark.parametrize('counter', COUNTERS)
def test_counters_empty(counter):
    """Tests that any empty sequence gives zero."""
    deltas = DeltaTriple(10, 5, 5)
    for (s1, s2, s3) in [(arr(), arr(1), arr(2)), (arr(0), arr(), arr(2)), (arr(0), arr(1), arr())]:
        assert counter(s1, s2, s3, deltas) == 0

@pytest.mark.parametrize('counter', COUNTERS)
@pytest.mark.parametrize('seed', range(40))
def test_counters_random(counter, seed):
    """Tests each counter against the triple loop on random sequences with ties."""
    rng = np.random.default_rng(seed)
    scratch = PrefixScratch()
    for _ in range(25):
        (s1, s2, s3) = (random_sequence(rng) for _ in range(3))
        deltas = DeltaTriple(*rng.integers(0, 40, 3).tolist()).normalized()
        expected = oracle_count_sequences(s1.tolist(), s2.tolist(), s3.tolist(), deltas)
        assert counter(s1, s2, s3, deltas, scratch) == expected

@pytest.mark.parametrize('counter', COUNTERS)
@PROPERTY_SETTINGS
@given(s1=_SEQUENCE, s2=_SEQUENCE, s3=_SEQUENCE, d12=_DELTA, d23=_DELTA, d13=_DELTA)
def test_counters_property(counter, s1, s2, s3, d12, d23, d13):
    """Tests each counter against the triple loop, covering d12 < d23, d12 > d23, and d12 = d23."""
    deltas = DeltaTriple(d13, d12, d23).normalized()
    expected = oracle_count_sequences(s1.tolist(), s2.tolist(), s3.tolist(), deltas)
    assert counter(s1, s2, s3, deltas) == expected

@pytest.mark.parametrize('counter', COUNTERS)
@PROPERTY_SETTINGS
@given(s1=_SEQUENCE, s2=_SEQUENCE, s3=_SEQUENCE, d=_DELTA, extra=_DELTA)
def test_counters_equal_gaps(counter, s1, s2, s3, d, extra):
    """Tests each counter when both gaps are equal."""
    deltas = DeltaTriple(d + extra, d, d).normalized()
    assert counter(s1, s2, s3, deltas) == oracle_count_sequences(s1.tolist(), s2.tolist(), s3.tolist(), deltas)

@pytest.mark.parametrize('counter', COUNTERS)
@pytest.mark.parametrize('seed', range(20))
def test_counters_array_path(monkeypatch, counter, seed):
    """Tests the numpy path of each counter on short sequences against the triple loop."""
    monkeypatch.setattr(count_module, 'SHORT_SEQUENCE', 0)
    rng = np.random.default_rng(seed)
    scratch = PrefixScratch()
    for _ in range(25):
        (s1, s2, s3) = (random_sequence(rng) for _ in range(3))
        deltas = DeltaTriple(*rng.integers(0, 40, 3).tolist()).normalized()
        expected = oracle_count_sequences(s1.tolist(), s2.tolist(), s3.tolist(), deltas)
        assert counter(s1, s2, s3, deltas, scratch) == expected

@pytest.mark.parametrize('counter', COUNTERS)
@pytest.mark.parametrize('seed', range(10))
def test_counters_long_sequences(monkeypatch, counter, seed):
    """Tests that the list and numpy paths agree on sequences longer than the short-sequence limit."""
    rng = np.random.default_rng(seed)
    (s1, s2, s3) = (random_sequence(rng, max_len=200, max_time=2000) for _ in range(3))
    deltas = DeltaTriple(*rng.integers(0, 300, 3).tolist()).normalized()
    monkeypatch.setattr(count_module, 'SHORT_SEQUENCE', 0)
    by_array = counter(s1, s2, s3, deltas)
    monkeypatch.setattr(count_module, 'SHORT_SEQUENCE', 10**9)
    assert counter(s1, s2, s3, deltas) == by_array
    assert counter(s1.tolist(), s2.tolist(), s3.tolist(), deltas) == by_array

@pytest.mark.parametrize('counter', COUNTERS)
def test_counters_accept_lists(counter):
    """Tests that plain lists of timestamps are counted like arrays."""
    deltas = DeltaTriple(20, 10, 10)
    assert counter([10], [15], [20], deltas) == counter(arr(10), arr(15), arr(20), deltas) == 1
    assert counter([], [15], [20], deltas) == 0


################
# PER-TRIANGLE #
################

def test_count_cell():
    """Tests counting a single (ordering, orientation) cell of a triangle."""
    graph = TemporalGraph.from_edges([(0, 1, 10), (1, 2, 20), (2, 0, 30), (1, 0, 12), (0, 2, 25)])
    prepared = prepare_graph(graph)
    (tri,) = list(iter_source_triangles(prepared.dag))
    deltas = DeltaTriple(30, 15, 15)
    total = 0
    for ordering in Ordering.all():
        for orientation in Orientation.all():
            seqs = resolve_sequences(tri, ordering, orientation, prepared.index)
            cnt = count_cell(tri, ordering, orientation, deltas, prepared.index)
            assert cnt == oracle_count_sequences(*(seq.tolist() for seq in seqs), deltas)
            total += cnt
    assert total == run_count(graph_edges(graph), deltas).total

def graph_edges(graph):
    return [(e.src, e.dst, e.timestamp) for e in graph.edges]


##############
# FULL COUNT #
##############

def test_count_all_examples():
    """Tests full counts on a single directed 3-cycle."""
    edges = [(1, 2, 10), (2, 3, 20), (3, 1, 30)]
    counts = run_count(edges, DeltaTriple(30, 15, 15))
    assert counts.total == counts.cyclic == 1
    assert counts[TypeCode.T001] == 1
    assert run_count(edges, DeltaTriple(15, 15, 15)).total == 0
    # a second first edge at t = 11
    counts = run_count(edges + [(1, 2, 11)], DeltaTriple(30, 15, 15))
    assert counts.total == counts[TypeCode.T001] == 2
    # no triangle
    assert run_count([(1, 2, 10), (2, 3, 20)], DeltaTriple(30, 15, 15)).total == 0
    assert run_count([], DeltaTriple(30, 15, 15)).total == 0

def test_count_simultaneous_edges():
    """Tests that edges at equal timestamps never form a temporal triangle."""
    edges = [(1, 2, 10), (2, 3, 10), (3, 1, 10), (3, 1, 20)]
    counts = run_count(edges, DeltaTriple.uniform(100))
    assert counts.total == 0

def test_count_saturation():
    """Tests time constraints and timestamps at the ends of the 64-bit range."""
    top = [(1, 2, INT64_MAX - 20), (2, 3, INT64_MAX - 10), (3, 1, INT64_MAX)]
    bottom = [(1, 2, INT64_MIN), (2, 3, INT64_MIN + 10), (3, 1, INT64_MIN + 20)]
    for edges in [top, bottom]:
        assert run_count(edges, DeltaTriple.uniform(INT64_MAX)).total == 1
        assert run_count(edges, DeltaTriple.uniform(20)).total == 1
        assert run_count(edges, DeltaTriple.uniform(15)).total == 0
        assert_matches_oracle(TemporalGraph.from_edges(edges), DeltaTriple.uniform(INT64_MAX))
    wide = [(1, 2, INT64_MIN), (2, 3, 0), (3, 1, INT64_MAX)]
    assert run_count(wide, DeltaTriple.uniform(INT64_MAX)).total == 0
    assert_matches_oracle(TemporalGraph.from_edges(wide), DeltaTriple.uniform(INT64_MAX))

@pytest.mark.parametrize('seed', range(60))
def test_matches_oracle(seed):
    """Tests the full count against brute force on small random graphs."""
    graph = random_graph(seed, max_n=15, max_m=80, max_time=1000)
    assert_matches_oracle(graph, random_deltas(seed, max_delta=600))

@pytest.mark.parametrize('seed', range(20))
def test_matches_oracle_dense(seed):
    """Tests the full count against brute force on graphs with high pair multiplicities."""
    graph = dense_graph(seed)
    assert_matches_oracle(graph, random_deltas(seed, max_delta=300))

@pytest.mark.slow
@pytest.mark.parametrize('seed', range(1000))
def test_matches_oracle_many(seed):
    """Tests the full count against brute force on many random graphs."""
    assert_matches_oracle(random_graph(seed), random_deltas(seed))


##############
# INVARIANTS #
##############

@pytest.mark.parametrize('seed', range(10))
def test_clamping(seed):
    """Tests that counts are unchanged by normalizing the time constraints."""
    graph = dense_graph(seed)
    prepared = prepare_graph(graph)
    for raw in [DeltaTriple(500, 20, 30), DeltaTriple(25, 100, 40), DeltaTriple(10, 50, 50)]:
        counts = count_all(graph, prepared.index, prepared.dag, raw)
        assert list(counts) == list(count_all(graph, prepared.index, prepared.dag, raw.normalized()))

@pytest.mark.parametrize('seed', range(10))
def test_monotonicity(seed):
    """Tests that loosening any constraint never lowers any count."""
    graph = dense_graph(seed)
    prepared = prepare_graph(graph)
    base = DeltaTriple(60, 30, 30)
    base_counts = list(count_all(graph, prepared.index, prepared.dag, base))
    for looser in [DeltaTriple(90, 30, 30), DeltaTriple(60, 45, 30), DeltaTriple(60, 30, 45)]:
        counts = list(count_all(graph, prepared.index, prepared.dag, looser))
        assert all(x >= y for (x, y) in zip(counts, base_counts))

@pytest.mark.parametrize('seed', range(5))
def test_zero_deltas(seed):
    """Tests that zero time constraints admit no temporal triangle."""
    graph = dense_graph(seed)
    prepared = prepare_graph(graph)
    assert count_all(graph, prepared.index, prepared.dag, DeltaTriple(0, 0, 0)).total == 0
    assert count_all(graph, prepared.index, prepared.dag, DeltaTriple(INT64_MAX, 0, INT64_MAX)).total == 0

@pytest.mark.parametrize('seed', range(10))
def test_detailed_result(seed):
    """Tests the per-cell counts and the scan statistics."""
    graph = random_graph(seed, max_n=20, max_m=200, max_time=1000)
    prepared = prepare_graph(graph)
    result = count_all_detailed(graph, prepared.index, prepared.dag, DeltaTriple(400, 200, 200))
    stats = result.stats
    assert stats.cells_evaluated + stats.cells_skipped == 48 * stats.triangles
    # the cells partition the counts by type
    for code in TypeCode:
        cell_sum = sum(result.cells[i - 1][o] for ((i, o), type_code) in CLASSIFICATION_TABLE.items() if type_code == code)
        assert cell_sum == result.counts[code]
    assert sum(map(sum, result.cells)) == result.counts.total
    # linear scans are bounded by the degeneracy
    assert stats.scan_touches <= 48 * max(prepared.dag.kappa, 1) * graph.m

@pytest.mark.parametrize('seed', range(10))
@pytest.mark.parametrize('threads', [2, 3, 8])
def test_threads(seed, threads):
    """Tests that sharded counting gives identical results."""
    graph = random_graph(seed, max_n=20, max_m=200, max_time=1000)
    prepared = prepare_graph(graph)
    deltas = DeltaTriple(400, 200, 300)
    serial = count_all_detailed(graph, prepared.index, prepared.dag, deltas)
    parallel = count_all_detailed(graph, prepared.index, prepared.dag, deltas, threads=threads)
    assert list(parallel.counts) == list(serial.counts)
    assert parallel.cells == serial.cells
    assert parallel.stats == serial.stats

def test_invalid_threads():
    """Tests rejection of a non-positive thread count."""
    prepared = prepare_graph(TemporalGraph.from_edges([]))
    with pytest.raises(ValueError, match='threads must be positive'):
        _ = count_all(prepared.graph, prepared.index, prepared.dag, DeltaTriple(1, 1, 1), threads=0)

def test_overflow(monkeypatch):
    """Tests that counter overflow is reported rather than wrapped."""
    for position in (1, 2, 3):
        monkeypatch.setitem(count_module._COUNTERS, position, lambda *args: UINT64_MAX)
    with pytest.raises(CountOverflowError, match='counter overflow'):
        _ = run_count(BIDIRECTED_TRIANGLE, DeltaTriple.uniform(100))

def test_cells_skipped_by_time_range():
    """Tests that cells whose time ranges cannot hold a temporal triangle are skipped without changing the counts."""
    early = [(1, 2, 10), (2, 3, 20), (3, 1, 30)]
    late = [(2, 1, 5000), (3, 2, 5010), (1, 3, 5020)]
    graph = TemporalGraph.from_edges(early + late)
    prepared = prepare_graph(graph)
    deltas = DeltaTriple.uniform(100)
    result = count_all_detailed(graph, prepared.index, prepared.dag, deltas)
    assert result.counts.total == result.counts.cyclic == 2
    assert result.stats.cells_evaluated == 2
    assert result.stats.cells_skipped == 46
    assert list(result.counts) == list(oracle_count(graph, prepared.index, prepared.dag, deltas))

@pytest.mark.parametrize('seed', range(20))
def test_saturated_deltas(seed):
    """Tests that constraints at least as wide as the time span admit every triple of distinct times on each static triangle."""
    graph = random_graph(seed, max_n=12, max_m=80, max_time=1000)
    prepared = prepare_graph(graph)
    (lo, hi) = graph.time_span or (0, 0)
    expected = 0
    for (u, v, w) in iter_source_triangles(prepared.dag):
        pairs = [prepared.index.seq(a, b).tolist() + prepared.index.seq(b, a).tolist() for (a, b) in ((u, v), (u, w), (v, w))]
        expected += sum(len({t1, t2, t3}) == 3 for (t1, t2, t3) in product(*pairs))
    for width in [hi - lo, hi - lo + 1, INT64_MAX]:
        deltas = DeltaTriple.uniform(width)
        counts = count_all(graph, prepared.index, prepared.dag, deltas)
        assert counts.total == expected
        assert list(counts) == list(oracle_count(graph, prepared.index, prepared.dag, deltas))

@pytest.mark.parametrize('seed', range(10))
def test_matches_oracle_array_path(monkeypatch, seed):
    """Tests the full count against brute force with every cell counted by numpy."""
    monkeypatch.setattr(count_module, 'SHORT_SEQUENCE', 0)
    assert_matches_oracle(dense_graph(seed), random_deltas(seed, max_delta=300))


###############
# PERFORMANCE #
###############

def best_time(func, repeat=3):
    """Gets the smallest wall time (seconds) of several calls."""
    elapsed = []
    for _ in range(repeat):
        start = time.perf_counter()
        func()
        elapsed.append(time.perf_counter() - start)
    return min(elapsed)

@pytest.mark.slow
def test_linear_scaling():
    """Tests that the work grows linearly with the number of edges at fixed degeneracy."""
    deltas = DeltaTriple(300, 150, 150)
    times = []
    for k in range(5):
        graph = clique_copies(50 * 2 ** k, seed=k)
        prepared = prepare_graph(graph)
        assert prepared.dag.kappa == 3
        result = count_all_detailed(graph, prepared.index, prepared.dag, deltas)
        assert result.stats.scan_touches <= 48 * prepared.dag.kappa * graph.m
        times.append(best_time(partial(count_all, graph, prepared.index, prepared.dag, deltas)))
    for (prev, cur) in zip(times, times[1:]):
        assert cur <= 2.5 * prev

@pytest.mark.dataset
def test_college_msg_speed():
    """Tests that counting the CollegeMsg dataset with one-hour windows takes under two seconds."""
    prepared = prepare_graph(load_edge_list(dataset_path('CollegeMsg.txt')))
    deltas = DeltaTriple.uniform(3600)
    counts = count_all(prepared.graph, prepared.index, prepared.dag, deltas)
    assert best_time(partial(count_all, prepared.graph, prepared.index, prepared.dag, deltas), repeat=1) < 2.0
    assert counts.total > 0
