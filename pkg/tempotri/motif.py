"""Time constraints, temporal orderings and orientations of a triangle, and the eight directed temporal triangle types."""

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple, TypeVar

from tempotri.utils import INT64_MAX, checked_add, saturating_add


T = TypeVar('T')
Arc = Tuple[T, T]


##########
# DELTAS #
##########

@dataclass(frozen=True)
class DeltaTriple:
    """Time constraints `(d13, d12, d23)` of a temporal triangle with edge times `t1 < t2 < t3`:

    - `t2 - t1 <= d12`
    - `t3 - t2 <= d23`
    - `t3 - t1 <= d13`

    All components are non-negative integers in the same units as the timestamps."""
    d13: int
    d12: int
    d23: int

    def __post_init__(self) -> None:
        for (name, val) in [('d13', self.d13), ('d12', self.d12), ('d23', self.d23)]:
            if not (0 <= val <= INT64_MAX):
                raise ValueError(f'{name} must be a non-negative 64-bit integer, got {val}')

    @classmethod
    def uniform(cls, window: int) -> 'DeltaTriple':
        """Constructs `(window, window, window)`: all three edges occur within one window."""
        return cls(window, window, window)

    @classmethod
    def consecutive(cls, gap: int) -> 'DeltaTriple':
        """Constructs `(2 * gap, gap, gap)`: only consecutive edges are constrained, each by `gap`."""
        return cls(saturating_add(gap, gap), gap, gap)

    @property
    def is_normalized(self) -> bool:
        """Returns `True` if `d12 <= d13`, `d23 <= d13`, and `d13 <= d12 + d23`."""
        return (self.d12 <= self.d13) and (self.d23 <= self.d13) and (self.d13 <= self.d12 + self.d23)

    def normalized(self) -> 'DeltaTriple':
        """Equivalent to [`normalize_deltas`][tempotri.motif.normalize_deltas]."""
        return normalize_deltas(self)

    def as_tuple(self) -> Tuple[int, int, int]:
        """Gets the components as `(d13, d12, d23)`."""
        return (self.d13, self.d12, self.d23)


def normalize_deltas(raw: DeltaTriple) -> DeltaTriple:
    """Tightens each constraint to what the other two already imply.

    The triangle counts are unchanged: a gap cannot exceed the whole span, and the span cannot exceed the sum of the gaps.

    Args:
        raw: Time constraints

    Returns:
        Constraints satisfying `d12 <= d13`, `d23 <= d13`, `d13 <= d12 + d23`"""
    d12 = min(raw.d12, raw.d13)
    d23 = min(raw.d23, raw.d13)
    d13 = min(raw.d13, saturating_add(d12, d23))
    return DeltaTriple(d13, d12, d23)


###########################
# ORDERINGS, ORIENTATIONS #
###########################

class PairRole(IntEnum):
    """The three vertex pairs of a source triangle `<u, v, w>`."""
    UV = 0
    UW = 1
    VW = 2

    @property
    def endpoints(self) -> Tuple[int, int]:
        """Gets the positions (0 = u, 1 = v, 2 = w) of the pair's lower- and higher-ranked vertex."""
        return _ROLE_ENDPOINTS[self]


_ROLE_ENDPOINTS = {PairRole.UV: (0, 1), PairRole.UW: (0, 2), PairRole.VW: (1, 2)}

# pair roles at time positions 1, 2, 3; odd indices put UV before UW
_ORDERING_ROLES: Dict[int, Tuple[PairRole, PairRole, PairRole]] = {
    1: (PairRole.UV, PairRole.UW, PairRole.VW),
    2: (PairRole.UW, PairRole.UV, PairRole.VW),
    3: (PairRole.UV, PairRole.VW, PairRole.UW),
    4: (PairRole.UW, PairRole.VW, PairRole.UV),
    5: (PairRole.VW, PairRole.UV, PairRole.UW),
    6: (PairRole.VW, PairRole.UW, PairRole.UV),
}


@dataclass(frozen=True)
class Ordering:
    """A temporal ordering: which pair role holds the first, second, and third edge in time.

    Orderings 1-2 put `VW` third, 3-4 put it second, and 5-6 put it first."""
    index: int

    def __post_init__(self) -> None:
        if self.index not in _ORDERING_ROLES:
            raise ValueError(f'ordering index must be in 1..6, got {self.index}')

    @property
    def roles(self) -> Tuple[PairRole, PairRole, PairRole]:
        """Gets the pair roles at time positions 1, 2, 3."""
        return _ORDERING_ROLES[self.index]

    @property
    def vw_position(self) -> int:
        """Gets the time position (1, 2, or 3) of the `VW` pair."""
        return self.roles.index(PairRole.VW) + 1

    @classmethod
    def all(cls) -> List['Ordering']:
        """Gets all six orderings."""
        return [cls(i) for i in range(1, 7)]


@dataclass(frozen=True)
class Orientation:
    """An orientation: one direction bit per pair role (bit 0: `UV`, bit 1: `UW`, bit 2: `VW`).

    A zero bit directs the pair from its lower-ranked to its higher-ranked vertex."""
    code: int

    def __post_init__(self) -> None:
        if not (0 <= self.code < 8):
            raise ValueError(f'orientation code must be in 0..7, got {self.code}')

    def reversed(self, role: PairRole) -> bool:
        """Returns `True` if the pair is directed from its higher- to its lower-ranked vertex."""
        return bool((self.code >> role) & 1)

    def arc(self, role: PairRole, vertices: Sequence[T]) -> Arc[T]:
        """Gets the directed pair `(source, target)` for a role, given the triangle's vertices `(u, v, w)`."""
        (i, j) = role.endpoints
        return (vertices[j], vertices[i]) if self.reversed(role) else (vertices[i], vertices[j])

    @property
    def is_cyclic(self) -> bool:
        """Returns `True` if the three arcs form a directed 3-cycle."""
        return self.code in (0b010, 0b101)

    @classmethod
    def all(cls) -> List['Orientation']:
        """Gets all eight orientations."""
        return [cls(code) for code in range(8)]


##################
# TRIANGLE TYPES #
##################

class TypeCode(IntEnum):
    """Canonical code of a directed temporal triangle type.

    Let the time-ordered edges be `e1 = (a -> b)`, `e2`, `e3`, and let `c` be the vertex not on `e1`:

    - bit 2: `e2` lies on the pair `{a, c}`
    - bit 1: `e2` points away from `c`
    - bit 0: `e3` points away from `c`

    Exactly two codes (`001` and `110`) are directed 3-cycles."""
    T000 = 0b000
    T001 = 0b001
    T010 = 0b010
    T011 = 0b011
    T100 = 0b100
    T101 = 0b101
    T110 = 0b110
    T111 = 0b111

    @property
    def is_cyclic(self) -> bool:
        """Returns `True` if the type is a directed 3-cycle."""
        return self in (TypeCode.T001, TypeCode.T110)

    @property
    def label(self) -> str:
        """Gets the output key for this type, e.g. `t001_cyclic`."""
        return f'{self.name.lower()}_{"cyclic" if self.is_cyclic else "acyclic"}'


def encode_type(e1: Arc[T], e2: Arc[T], e3: Arc[T]) -> TypeCode:
    """Computes the canonical type code of three time-ordered arcs forming a triangle.

    Args:
        e1: First arc in time order
        e2: Second arc in time order
        e3: Third arc in time order

    Returns:
        `TypeCode` of the temporal triangle"""
    (a, b) = e1
    (c,) = {*e2, *e3} - {a, b}
    bit2 = {*e2} == {a, c}
    bit1 = e2[0] == c
    bit0 = e3[0] == c
    return TypeCode((bit2 << 2) | (bit1 << 1) | bit0)

def classify(ordering: Ordering, orientation: Orientation) -> TypeCode:
    """Determines the triangle type produced by a temporal ordering and an orientation.

    Args:
        ordering: Temporal ordering
        orientation: Orientation

    Returns:
        `TypeCode` of every temporal triangle with this ordering and orientation"""
    arcs = [orientation.arc(role, ('u', 'v', 'w')) for role in ordering.roles]
    return encode_type(*arcs)


# precomputed (ordering index, orientation code) -> TypeCode
CLASSIFICATION_TABLE: Dict[Tuple[int, int], TypeCode] = {
    (ordering.index, orientation.code): classify(ordering, orientation)
    for (ordering, orientation) in product(Ordering.all(), Orientation.all())
}


################
# COUNT VECTOR #
################

@dataclass
class TypeCounts:
    """Eight unsigned 64-bit counters indexed by `TypeCode`.

    Every addition is overflow-checked (see [`checked_add`][tempotri.utils.checked_add])."""
    counts: List[int] = field(default_factory=lambda: [0] * 8)

    def __post_init__(self) -> None:
        if len(self.counts) != 8:
            raise ValueError(f'expected 8 counters, got {len(self.counts)}')

    def __getitem__(self, code: int) -> int:
        return self.counts[code]

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def add(self, code: int, value: int) -> None:
        """Adds `value` to the counter of the given type."""
        if value:
            self.counts[code] = checked_add(self.counts[code], value)

    def merge(self, other: 'TypeCounts') -> None:
        """Adds another count vector into this one, in-place."""
        for code in TypeCode:
            self.add(code, other[code])

    @property
    def total(self) -> int:
        """Sum of all eight counters."""
        total = 0
        for val in self.counts:
            total = checked_add(total, val)
        return total

    @property
    def cyclic(self) -> int:
        """Sum of the counters of the two cyclic types."""
        return sum(self.counts[code] for code in TypeCode if code.is_cyclic)

    @property
    def acyclic(self) -> int:
        """Sum of the counters of the six acyclic types."""
        return sum(self.counts[code] for code in TypeCode if not code.is_cyclic)

    def by_label(self) -> Dict[str, int]:
        """Gets the counts keyed by [`TypeCode.label`][tempotri.motif.TypeCode.label], in code order."""
        return {code.label: self.counts[code] for code in TypeCode}
