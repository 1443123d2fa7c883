"""Command-line interface: dataset statistics, counting, delta sweeps, brute-force validation, and the classification table.

Reports go to stdout (or `--output`), logs and errors to stderr."""

from dataclasses import asdict, dataclass, field
from io import StringIO
import logging
from pathlib import Path
import sys
from typing import Dict, List, Optional, Union

from fancy_dataclass import CLIDataclass, JSONDataclass

from tempotri import __version__
from tempotri.config import LOG_LEVELS, TempotriConfig, current_config
from tempotri.count import count_all_detailed
from tempotri.graph import IngestOptions, load_edge_list
from tempotri.motif import CLASSIFICATION_TABLE, DeltaTriple, Ordering, Orientation, TypeCounts
from tempotri.oracle import oracle_count
from tempotri.stats import compute_stats
from tempotri.sweep import DELTA_NAMES, SweepSpec, run_sweep, write_sweep_csv
from tempotri.triangles import PreparedGraph, prepare_graph
from tempotri.utils import TempotriError, configure_logging, log_duration, parse_duration


logger = logging.getLogger(__name__)

FORMATS = ['json', 'tsv']

# exit status for file system errors
EXIT_IO_ERROR = 5
# exit status for invalid arguments
EXIT_USAGE = 2


###########
# REPORTS #
###########

@dataclass
class CountReport(JSONDataclass, suppress_defaults=False, suppress_none=True):
    """Result of a counting run."""
    input_path: str
    # deltas as given, and as used after normalization
    deltas: Dict[str, int]
    normalized_deltas: Dict[str, int]
    counts: Dict[str, int]
    total: int
    cyclic: int
    acyclic: int
    oracle: bool = False
    # counts per (ordering, orientation), rows indexed by ordering 1-6, columns by orientation code
    cells: Optional[List[List[int]]] = None
    counting_stats: Optional[Dict[str, int]] = None
    wall_ms: Optional[float] = None

    @classmethod
    def from_counts(cls, input_path: str, deltas: DeltaTriple, counts: TypeCounts, oracle: bool = False) -> 'CountReport':
        """Constructs a report from the per-type counts."""
        return cls(
            input_path=input_path,
            deltas=_delta_dict(deltas),
            normalized_deltas=_delta_dict(deltas.normalized()),
            counts=counts.by_label(),
            total=counts.total,
            cyclic=counts.cyclic,
            acyclic=counts.acyclic,
            oracle=oracle,
        )

    def to_tsv(self) -> str:
        """Renders the report as `name<TAB>value` lines."""
        rows: List[str] = [f'input_path\t{self.input_path}', f'oracle\t{str(self.oracle).lower()}']
        rows += [f'{name}\t{val}' for (name, val) in self.deltas.items()]
        rows += [f'normalized_{name}\t{val}' for (name, val) in self.normalized_deltas.items()]
        rows += [f'{label}\t{val}' for (label, val) in self.counts.items()]
        rows += [f'total\t{self.total}', f'cyclic\t{self.cyclic}', f'acyclic\t{self.acyclic}']
        if self.wall_ms is not None:
            rows.append(f'wall_ms\t{self.wall_ms:.3f}')
        return '\n'.join(rows) + '\n'


def _delta_dict(deltas: DeltaTriple) -> Dict[str, int]:
    return dict(zip(DELTA_NAMES, deltas.as_tuple()))


@dataclass
class ClassificationEntry(JSONDataclass, suppress_defaults=False):
    """One cell of the classification table."""
    ordering: int
    orientation: int
    # pair roles in time order, each as "src->dst" over the source triangle <u, v, w>
    arcs: List[str]
    type_code: str
    cyclic: bool


@dataclass
class ClassificationTable(JSONDataclass, suppress_defaults=False):
    """The 48-entry table from (ordering, orientation) to triangle type."""
    entries: List[ClassificationEntry]

    @classmethod
    def build(cls) -> 'ClassificationTable':
        """Builds the table from the precomputed classification."""
        entries = []
        for ((ordering, code), type_code) in sorted(CLASSIFICATION_TABLE.items()):
            orientation = Orientation(code)
            arcs = ['->'.join(orientation.arc(role, ('u', 'v', 'w'))) for role in Ordering(ordering).roles]
            entries.append(ClassificationEntry(ordering, code, arcs, type_code.label, type_code.is_cyclic))
        return cls(entries)

    def to_tsv(self) -> str:
        """Renders the table as TSV with a header line."""
        lines = ['ordering\torientation\tarc1\tarc2\tarc3\ttype']
        for entry in self.entries:
            lines.append('\t'.join([str(entry.ordering), format(entry.orientation, '03b'), *entry.arcs, entry.type_code]))
        return '\n'.join(lines) + '\n'


############
# COMMANDS #
############

@dataclass
class _Command(CLIDataclass):
    """Options shared by every subcommand."""
    config: Optional[str] = field(default=None, metadata={'metavar': 'PATH', 'help': 'TOML or JSON configuration file', 'group': 'general'})
    log_level: Optional[str] = field(default=None, metadata={'choices': LOG_LEVELS, 'help': 'logging level (messages go to stderr)', 'group': 'general'})
    output: Optional[str] = field(default=None, metadata={'args': ['-o', '--output'], 'metavar': 'PATH', 'help': 'output file (default: stdout)', 'group': 'general'})

    def load_config(self) -> TempotriConfig:
        """Loads the configuration file (if given), then configures logging."""
        config = TempotriConfig.load_config(self.config) if self.config else current_config()
        configure_logging(self.log_level or config.log_level_number)
        return config

    def execute(self, config: TempotriConfig) -> str:
        """Performs the command and returns the text to emit."""
        raise NotImplementedError

    def emit(self, text: str) -> None:
        """Writes output text to the output file, or stdout."""
        if self.output is None:
            sys.stdout.write(text)
        else:
            Path(self.output).write_text(text)
            logger.info('wrote %s', self.output)

    def run(self) -> None:
        config = self.load_config()
        self.emit(self.execute(config))


@dataclass
class _GraphCommand(_Command):
    """Options for subcommands that read a temporal edge list."""
    input_path: str = field(default='', metadata={'args': ['-i', '--input'], 'required': True, 'metavar': 'PATH', 'help': 'temporal edge list (src dst timestamp per line, optionally gzipped)'})
    timing: bool = field(default=False, metadata={'help': 'include wall times (milliseconds) in the report'})

    def load_graph(self) -> PreparedGraph:
        """Loads the input and builds the counting structures."""
        return prepare_graph(load_edge_list(self.input_path, IngestOptions(record_timing=self.timing)))


@dataclass
class _DeltaCommand(_GraphCommand):
    """Options for subcommands that take time constraints."""
    d13: Optional[int] = field(default=None, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'max time between the first and third edge', 'group': 'time constraints'})
    d12: Optional[int] = field(default=None, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'max time between the first and second edge', 'group': 'time constraints'})
    d23: Optional[int] = field(default=None, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'max time between the second and third edge', 'group': 'time constraints'})
    window: Optional[int] = field(default=None, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'all three edges within DUR, i.e. (DUR, DUR, DUR)', 'exclusive_group': 'presets'})
    gap: Optional[int] = field(default=None, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'consecutive edges within DUR, i.e. (2 DUR, DUR, DUR)', 'exclusive_group': 'presets'})
    threads: Optional[int] = field(default=None, metadata={'metavar': 'N', 'help': 'number of counting threads'})
    output_format: str = field(default='json', metadata={'args': ['--format'], 'choices': FORMATS, 'help': 'report format'})

    def resolve_deltas(self, config: TempotriConfig) -> DeltaTriple:
        """Gets the time constraints from the flags, falling back on the configuration for any not given.

        Raises:
            ValueError: If a preset is combined with explicit constraints"""
        explicit = (self.d13, self.d12, self.d23)
        preset = self.window if (self.window is not None) else self.gap
        if preset is not None:
            if any(val is not None for val in explicit):
                raise ValueError('--window/--gap cannot be combined with --d13/--d12/--d23')
            return DeltaTriple.uniform(preset) if (self.window is not None) else DeltaTriple.consecutive(preset)
        defaults = config.deltas.as_tuple()
        (d13, d12, d23) = (default if (val is None) else val for (val, default) in zip(explicit, defaults))
        return DeltaTriple(d13, d12, d23)

    def resolve_threads(self, config: TempotriConfig) -> int:
        """Gets the number of counting threads."""
        threads = config.threads if (self.threads is None) else self.threads
        if threads < 1:
            raise ValueError(f'threads must be positive, got {threads}')
        return threads

    def render(self, report: CountReport) -> str:
        """Renders a count report in the requested format."""
        if self.output_format == 'tsv':
            return report.to_tsv()
        return report.to_json_string(indent=2, sort_keys=True) + '\n'


@dataclass
class StatsCmd(_GraphCommand, command_name='stats'):
    """Print dataset statistics."""
    output_format: str = field(default='json', metadata={'args': ['--format'], 'choices': FORMATS, 'help': 'report format'})

    def execute(self, config: TempotriConfig) -> str:
        prepared = self.load_graph()
        stats = compute_stats(prepared.graph, prepared)
        if self.output_format == 'tsv':
            return stats.to_tsv()
        return stats.to_json_string(indent=2, sort_keys=True) + '\n'


@dataclass
class CountCmd(_DeltaCommand, command_name='count'):
    """Count temporal triangles of each type."""
    cells: bool = field(default=False, metadata={'help': 'include per-(ordering, orientation) counts and scan statistics'})

    def execute(self, config: TempotriConfig) -> str:
        deltas = self.resolve_deltas(config)
        threads = self.resolve_threads(config)
        prepared = self.load_graph()
        with log_duration('count') as timing:
            result = count_all_detailed(prepared.graph, prepared.index, prepared.dag, deltas, threads=threads)
        report = CountReport.from_counts(self.input_path, deltas, result.counts)
        if self.cells:
            report.cells = result.cells
            report.counting_stats = asdict(result.stats)
        if self.timing:
            report.wall_ms = timing['ms']
        return self.render(report)


@dataclass
class OracleCmd(_DeltaCommand, command_name='oracle'):
    """Count temporal triangles by brute force (small inputs only)."""
    oracle_budget: Optional[int] = field(default=None, metadata={'metavar': 'N', 'help': 'maximum number of edge triples to examine'})

    def execute(self, config: TempotriConfig) -> str:
        deltas = self.resolve_deltas(config)
        budget = config.oracle_budget if (self.oracle_budget is None) else self.oracle_budget
        prepared = self.load_graph()
        with log_duration('oracle') as timing:
            counts = oracle_count(prepared.graph, prepared.index, prepared.dag, deltas, budget=budget)
        report = CountReport.from_counts(self.input_path, deltas, counts, oracle=True)
        if self.timing:
            report.wall_ms = timing['ms']
        return self.render(report)


@dataclass
class SweepCmd(_DeltaCommand, command_name='sweep'):
    """Count temporal triangles over a range of one (or two) time constraints, as CSV."""
    vary: str = field(default='d23', metadata={'choices': list(DELTA_NAMES), 'help': 'time constraint to vary', 'group': 'sweep'})
    start: int = field(default=0, metadata={'args': ['--from'], 'type': parse_duration, 'required': True, 'metavar': 'DUR', 'help': 'first value', 'group': 'sweep'})
    stop: int = field(default=0, metadata={'args': ['--to'], 'type': parse_duration, 'required': True, 'metavar': 'DUR', 'help': 'last value (inclusive)', 'group': 'sweep'})
    step: int = field(default=0, metadata={'type': parse_duration, 'required': True, 'metavar': 'DUR', 'help': 'increment', 'group': 'sweep'})
    split_cyclic: bool = field(default=False, metadata={'help': 'add cyclic and acyclic subtotal columns', 'group': 'sweep'})
    outer: Optional[str] = field(default=None, metadata={'choices': list(DELTA_NAMES), 'help': 'second time constraint to vary (outer loop)', 'group': 'outer sweep'})
    outer_start: int = field(default=0, metadata={'args': ['--outer-from'], 'type': parse_duration, 'metavar': 'DUR', 'help': 'first outer value', 'group': 'outer sweep'})
    outer_stop: int = field(default=0, metadata={'args': ['--outer-to'], 'type': parse_duration, 'metavar': 'DUR', 'help': 'last outer value (inclusive)', 'group': 'outer sweep'})
    outer_step: int = field(default=1, metadata={'type': parse_duration, 'metavar': 'DUR', 'help': 'outer increment', 'group': 'outer sweep'})

    def spec(self, config: TempotriConfig) -> SweepSpec:
        """Gets the sweep specification."""
        return SweepSpec(
            vary=self.vary,
            start=self.start,
            stop=self.stop,
            step=self.step,
            fixed=self.resolve_deltas(config),
            split=self.split_cyclic,
            outer=self.outer,
            outer_start=self.outer_start,
            outer_stop=self.outer_stop,
            outer_step=self.outer_step,
        )

    def execute(self, config: TempotriConfig) -> str:
        spec = self.spec(config)
        threads = self.resolve_threads(config)
        rows = run_sweep(self.load_graph(), spec, threads=threads)
        with StringIO() as stream:
            write_sweep_csv(rows, spec, stream)
            return stream.getvalue()


@dataclass
class TableCmd(_Command, command_name='table'):
    """Print the classification of every (ordering, orientation) into a triangle type."""
    output_format: str = field(default='tsv', metadata={'args': ['--format'], 'choices': FORMATS, 'help': 'table format'})

    def execute(self, config: TempotriConfig) -> str:
        table = ClassificationTable.build()
        if self.output_format == 'json':
            return table.to_json_string(indent=2, sort_keys=True) + '\n'
        return table.to_tsv()


Subcommand = Union[StatsCmd, CountCmd, SweepCmd, OracleCmd, TableCmd]


@dataclass
class TempotriCLI(CLIDataclass, version=f'%(prog)s {__version__}'):
    """Exact counting of temporal triangles in directed temporal multigraphs."""
    command: Subcommand = field(metadata={'subcommand': True, 'help': 'command to run'})


def main(arg_list: Optional[List[str]] = None) -> int:
    """Runs the command-line interface.

    Args:
        arg_list: Command-line arguments (if `None`, uses `sys.argv`)

    Returns:
        Exit status: 0 on success, otherwise the code of the error raised"""
    try:
        TempotriCLI.from_cli_args(arg_list).run()
    except TempotriError as e:
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_IO_ERROR
    except ValueError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == '__main__':
    sys.exit(main())
