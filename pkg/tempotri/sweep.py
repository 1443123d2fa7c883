"""Sweeps of one (or two) time constraints, emitting raw per-type counts at every point."""

import csv
from dataclasses import dataclass, replace
import logging
from typing import IO, Iterator, List, Optional, Tuple

from tempotri.count import count_all
from tempotri.motif import DeltaTriple, TypeCode, TypeCounts
from tempotri.triangles import PreparedGraph
from tempotri.utils import range_inclusive


logger = logging.getLogger(__name__)

DELTA_NAMES = ('d13', 'd12', 'd23')


@dataclass
class SweepSpec:
    """Specification of a sweep.

    The component named by `vary` takes the values `start, start + step, ...` up to `stop`, while the other components keep their values in `fixed`. An optional outer axis varies a second component in the same way, giving a grid of points."""
    vary: str
    start: int
    stop: int
    step: int
    fixed: DeltaTriple
    split: bool = False
    outer: Optional[str] = None
    outer_start: int = 0
    outer_stop: int = 0
    outer_step: int = 1

    def __post_init__(self) -> None:
        _check_axis(self.vary, self.start, self.stop, self.step)
        if self.outer is not None:
            if self.outer == self.vary:
                raise ValueError(f'outer axis must differ from the varied component {self.vary!r}')
            _check_axis(self.outer, self.outer_start, self.outer_stop, self.outer_step)

    @property
    def values(self) -> List[int]:
        """Gets the values of the varied component."""
        return range_inclusive(self.start, self.stop, self.step)

    @property
    def outer_values(self) -> List[Optional[int]]:
        """Gets the values of the outer component (`[None]` if there is no outer axis)."""
        if self.outer is None:
            return [None]
        return [val for val in range_inclusive(self.outer_start, self.outer_stop, self.outer_step)]

    def iter_points(self) -> Iterator[Tuple[Optional[int], int, DeltaTriple]]:
        """Iterates through `(outer value, varied value, deltas)` for every sweep point, outer axis first."""
        for outer_val in self.outer_values:
            base = self.fixed if (self.outer is None) else replace(self.fixed, **{self.outer: outer_val})
            for val in self.values:
                yield (outer_val, val, replace(base, **{self.vary: val}))


def _check_axis(name: str, start: int, stop: int, step: int) -> None:
    if name not in DELTA_NAMES:
        raise ValueError(f'invalid delta component {name!r}, must be one of {DELTA_NAMES}')
    if step <= 0:
        raise ValueError(f'sweep step must be positive, got {step}')
    if start > stop:
        raise ValueError(f'sweep start {start} exceeds stop {stop}')


@dataclass
class SweepRow:
    """Counts at one sweep point."""
    outer_value: Optional[int]
    value: int
    deltas: DeltaTriple
    counts: TypeCounts


def run_sweep(prepared: PreparedGraph, spec: SweepSpec, threads: int = 1) -> List[SweepRow]:
    """Counts temporal triangles at every point of a sweep.

    Args:
        prepared: Prepared temporal graph
        spec: Sweep specification
        threads: Number of worker threads per count

    Returns:
        One `SweepRow` per point, in sweep order"""
    rows = []
    for (outer_val, val, deltas) in spec.iter_points():
        counts = count_all(prepared.graph, prepared.index, prepared.dag, deltas, threads=threads)
        logger.debug('sweep %s = %d: total %d', spec.vary, val, counts.total)
        rows.append(SweepRow(outer_val, val, deltas, counts))
    return rows


def sweep_header(spec: SweepSpec) -> List[str]:
    """Gets the CSV header for a sweep."""
    header = ['delta_outer', 'outer_value'] if (spec.outer is not None) else []
    header += ['delta_varied', 'value', *(code.label for code in TypeCode), 'total']
    if spec.split:
        header += ['cyclic', 'acyclic']
    return header

def write_sweep_csv(rows: List[SweepRow], spec: SweepSpec, fp: IO[str]) -> None:
    """Writes sweep rows as CSV (one line per point, raw counts).

    Args:
        rows: Sweep results
        spec: Sweep specification that produced them
        fp: Writable text stream"""
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(sweep_header(spec))
    for row in rows:
        line: List[object] = [spec.outer, row.outer_value] if (spec.outer is not None) else []
        line += [spec.vary, row.value, *row.counts, row.counts.total]
        if spec.split:
            line += [row.counts.cyclic, row.counts.acyclic]
        writer.writerow(line)
