"""Dataset statistics: sizes of the temporal and static graphs, degeneracy, multiplicity, and time span."""

from dataclasses import dataclass, field, fields
import logging
from typing import Any, Iterator, Optional, Tuple

from fancy_dataclass import JSONDataclass

from tempotri.graph import IngestDiagnostics, TemporalGraph
from tempotri.triangles import PreparedGraph, enumerate_source_triangles, prepare_graph
from tempotri.utils import SECONDS_PER_YEAR, log_duration


logger = logging.getLogger(__name__)


@dataclass
class DatasetStats(JSONDataclass, suppress_defaults=False):
    """Summary statistics of a temporal graph."""
    vertices: int
    temporal_edges: int
    static_edges: int
    static_triangles: int
    degeneracy: int
    max_multiplicity: int
    # max minus min timestamp (0 for an empty graph)
    time_span_seconds: int
    time_span_years: float
    diagnostics: IngestDiagnostics = field(default_factory=IngestDiagnostics)

    def iter_rows(self) -> Iterator[Tuple[str, Any]]:
        """Iterates through `(name, value)` rows in field order, flattening the ingestion diagnostics."""
        for fld in fields(self):
            val = getattr(self, fld.name)
            if isinstance(val, IngestDiagnostics):
                for sub in fields(val):
                    sub_val = getattr(val, sub.name)
                    if sub_val is not None:
                        yield (f'{fld.name}.{sub.name}', sub_val)
            else:
                yield (fld.name, val)

    def to_tsv(self) -> str:
        """Renders the statistics as `name<TAB>value` lines."""
        return ''.join(f'{name}\t{val}\n' for (name, val) in self.iter_rows())


def compute_stats(graph: TemporalGraph, prepared: Optional[PreparedGraph] = None) -> DatasetStats:
    """Computes the statistics of a temporal graph, running the static pipeline if needed.

    Args:
        graph: Temporal graph
        prepared: Structures already built for `graph`

    Returns:
        `DatasetStats` of the graph"""
    with log_duration('dataset statistics'):
        prepared = prepared or prepare_graph(graph)
        num_triangles = enumerate_source_triangles(prepared.dag)
    span = graph.time_span
    span_seconds = 0 if (span is None) else span[1] - span[0]
    stats = DatasetStats(
        vertices=graph.n,
        temporal_edges=graph.m,
        static_edges=prepared.static.m_s,
        static_triangles=num_triangles,
        degeneracy=prepared.dag.kappa,
        max_multiplicity=prepared.index.max_multiplicity,
        time_span_seconds=span_seconds,
        time_span_years=span_seconds / SECONDS_PER_YEAR,
        diagnostics=graph.diagnostics,
    )
    logger.info('stats: %d static edges, %d static triangles, degeneracy %d', stats.static_edges, stats.static_triangles, stats.degeneracy)
    return stats
