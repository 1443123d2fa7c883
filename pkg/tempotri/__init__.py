# top-level exports
from .config import TempotriConfig
from .count import CountingStats, CountResult, count_all, count_all_detailed
from .graph import PairIndex, TemporalGraph, build_pair_index, extract_static_graph, load_edge_list, parse_edge_list
from .motif import DeltaTriple, Ordering, Orientation, TypeCode, TypeCounts, classify, normalize_deltas
from .oracle import oracle_count
from .stats import DatasetStats, compute_stats
from .sweep import SweepSpec, run_sweep
from .triangles import PreparedGraph, enumerate_source_triangles, prepare_graph


__version__ = '0.1.0'

__all__ = [
    'CountResult',
    'CountingStats',
    'DatasetStats',
    'DeltaTriple',
    'Ordering',
    'Orientation',
    'PairIndex',
    'PreparedGraph',
    'SweepSpec',
    'TemporalGraph',
    'TempotriConfig',
    'TypeCode',
    'TypeCounts',
    'build_pair_index',
    'classify',
    'compute_stats',
    'count_all',
    'count_all_detailed',
    'enumerate_source_triangles',
    'extract_static_graph',
    'load_edge_list',
    'normalize_deltas',
    'oracle_count',
    'parse_edge_list',
    'prepare_graph',
    'run_sweep',
]
