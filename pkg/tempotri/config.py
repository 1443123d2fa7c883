"""Global configuration: default time constraints, oracle budget, threads, and log level."""

from dataclasses import dataclass
import logging

from fancy_dataclass import ConfigDataclass

from tempotri.motif import DeltaTriple
from tempotri.oracle import DEFAULT_ORACLE_BUDGET


# one hour in seconds
DEFAULT_DELTA = 3600

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']


@dataclass
class TempotriConfig(ConfigDataclass):
    """Defaults for counting runs, loadable from a TOML or JSON file.

    Command-line flags take precedence over these values."""
    d13: int = DEFAULT_DELTA
    d12: int = DEFAULT_DELTA
    d23: int = DEFAULT_DELTA
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    threads: int = 1
    log_level: str = 'WARNING'

    def __post_init__(self) -> None:
        # validates the deltas
        _ = self.deltas
        if self.oracle_budget < 0:
            raise ValueError(f'oracle_budget must be non-negative, got {self.oracle_budget}')
        if self.threads < 1:
            raise ValueError(f'threads must be positive, got {self.threads}')
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f'invalid log_level {self.log_level!r}')

    @property
    def deltas(self) -> DeltaTriple:
        """Gets the default time constraints."""
        return DeltaTriple(self.d13, self.d12, self.d23)

    @property
    def log_level_number(self) -> int:
        """Gets the numeric logging level."""
        return int(getattr(logging, self.log_level.upper()))


def current_config() -> TempotriConfig:
    """Gets the global configuration, or the built-in defaults if none has been loaded."""
    return TempotriConfig.get_config() or TempotriConfig()
