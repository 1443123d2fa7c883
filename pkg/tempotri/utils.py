"""Various utility functions and classes."""

from contextlib import contextmanager
import logging
import re
import sys
import time
from typing import Dict, Iterator, List, Union

import numpy as np
from numpy.typing import NDArray


logger = logging.getLogger(__name__)

TimeArray = NDArray[np.int64]

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1
UINT64_MAX = 2 ** 64 - 1

# seconds per unit for duration suffixes
DURATION_UNITS: Dict[str, int] = {'s': 1, 'm': 60, 'h': 3600, 'd': 86400}

SECONDS_PER_YEAR = 365.25 * 86400


##########
# ERRORS #
##########

class TempotriError(Exception):
    """Base class for errors raised by `tempotri`.

    Each subclass sets `exit_code`, the process exit status used by the command-line interface."""
    exit_code: int = 1


class EdgeListParseError(TempotriError, ValueError):
    """Error type for a malformed line in a temporal edge list."""
    exit_code = 2

    def __init__(self, line_no: int, msg: str) -> None:
        """Constructor for `EdgeListParseError`.

        Args:
            line_no: 1-based line number of the offending line
            msg: description of the problem"""
        self.line_no = line_no
        super().__init__(f'line {line_no}: {msg}')


class CapacityError(TempotriError):
    """Error type for inputs that exceed the supported vertex id range."""
    exit_code = 2


class CountOverflowError(TempotriError, OverflowError):
    """Error type for a temporal triangle counter exceeding the unsigned 64-bit range."""
    exit_code = 3


class BudgetExceededError(TempotriError):
    """Error type for brute-force work that would exceed the configured budget."""
    exit_code = 4

    def __init__(self, work: int, budget: int) -> None:
        self.work = work
        self.budget = budget
        super().__init__(f'brute-force work {work} exceeds budget {budget}')


####################
# HELPER FUNCTIONS #
####################

# ARITHMETIC

def checked_add(x: int, y: int) -> int:
    """Adds two non-negative counters, failing loudly past the unsigned 64-bit maximum.

    Args:
        x: First counter
        y: Second counter

    Returns:
        The sum `x + y`

    Raises:
        CountOverflowError: If the sum does not fit in 64 unsigned bits"""
    total = x + y
    if total > UINT64_MAX:
        raise CountOverflowError(f'counter overflow: {x} + {y} exceeds {UINT64_MAX}')
    return total

def saturating_add(x: int, y: int) -> int:
    """Adds two integers, clamping the result into the signed 64-bit range.

    Args:
        x: First operand
        y: Second operand

    Returns:
        `x + y`, saturated at `INT64_MIN` / `INT64_MAX`"""
    return max(INT64_MIN, min(INT64_MAX, x + y))

def shift_times(times: TimeArray, delta: int) -> TimeArray:
    """Adds `delta` to every timestamp of an array, saturating instead of wrapping around.

    Args:
        times: int64 array of timestamps
        delta: Offset to add (may be negative; must lie within the signed 64-bit range)

    Returns:
        New int64 array of shifted timestamps"""
    if delta == 0:
        return times
    with np.errstate(over='ignore'):
        shifted = times + np.int64(delta)
    if delta > 0:
        return np.where(times > INT64_MAX - delta, np.int64(INT64_MAX), shifted)
    return np.where(times < INT64_MIN - delta, np.int64(INT64_MIN), shifted)

# DURATIONS

_DURATION_REGEX = re.compile(r'^\s*(-?\d+)\s*([smhd]?)\s*$')

def parse_duration(text: str) -> int:
    """Parses a duration string into an integer number of time units.

    A bare integer is taken as-is (the dataset's native unit); a suffix `s`, `m`, `h`, or `d` converts minutes, hours, or days to seconds.

    Args:
        text: Duration such as `3600`, `90m`, or `2h`

    Returns:
        Duration as a non-negative integer

    Raises:
        ValueError: If the string is not a valid non-negative duration"""
    match = _DURATION_REGEX.match(text)
    if match is None:
        raise ValueError(f'invalid duration {text!r}')
    (value, unit) = match.groups()
    duration = int(value) * DURATION_UNITS.get(unit, 1)
    if duration < 0:
        raise ValueError(f'duration must be non-negative, got {text!r}')
    if duration > INT64_MAX:
        raise ValueError(f'duration {text!r} exceeds the 64-bit time range')
    return duration

def range_inclusive(start: int, stop: int, step: int) -> List[int]:
    """Gets the values `start, start + step, ...` up to and including `stop` (if hit exactly).

    Args:
        start: First value
        stop: Upper bound (inclusive)
        step: Positive increment

    Returns:
        List of values"""
    return list(range(start, stop + 1, step))

###########
# LOGGING #
###########

def configure_logging(level: Union[int, str] = logging.WARNING) -> None:
    """Configures the root logger to write `tempotri` messages to stderr.

    Args:
        level: Logging level name or number"""
    if isinstance(level, str):
        level = level.upper()
    logging.basicConfig(stream=sys.stderr, level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s', force=True)

@contextmanager
def log_duration(name: str) -> Iterator[Dict[str, float]]:
    """Context manager which logs (at DEBUG level) the wall time of the enclosed block.

    Yields a dict whose `ms` entry holds the elapsed milliseconds once the block exits.

    Args:
        name: Description of the timed phase"""
    result: Dict[str, float] = {}
    start = time.perf_counter()
    try:
        yield result
    finally:
        result['ms'] = (time.perf_counter() - start) * 1000
        logger.debug('%s took %.1f ms', name, result['ms'])
