"""Classification of 4-vertex 3-hypertournaments and 4-constrained classes.

Every hole-free 3-hypertournament on four vertices is isomorphic to exactly
one of three structures:

* H4 -- the homogeneous one (automorphism group Alt(4)); under the natural
  order its hat hypergraph has hyperedge set {123, 134} or {124, 234},
* O4 -- the odd one: an odd number of hyperedges under every order,
* C4 -- the cyclic one: induced by a cyclic order; even hyperedge count,
  never in the H4 pattern.

A 4-constrained class is given by a nonempty subset of {H4, O4, C4}: it
contains the structures all of whose 4-vertex substructures have a type in
the subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .core import (
    HOLE,
    MINUS,
    PLUS,
    HoleyHT,
    HoleyInput,
    InputError,
    quad_triple_ranks,
    quads,
)


class FourType(Enum):
    H4 = "H4"
    O4 = "O4"
    C4 = "C4"

    def __str__(self) -> str:
        return self.value


def _type_of_mask(mask: int) -> FourType:
    # mask bit i = 1 iff the i-th triple of the 4-subset, in the order
    # ({123}, {124}, {134}, {234}) after relabeling to 1..4, is PLUS.
    if bin(mask).count("1") & 1:
        return FourType.O4
    if mask in (0b0101, 0b1010):  # {123,134} and {124,234}: the H4 patterns
        return FourType.H4
    return FourType.C4


TYPE_BY_MASK = tuple(_type_of_mask(m) for m in range(16))


def mask_of(v0: int, v1: int, v2: int, v3: int) -> int:
    """Plus-pattern bitmask of a fully assigned 4-subset; inputs are the
    table values of its triples {abc}, {abd}, {acd}, {bcd} in that order."""
    return (
        (v0 == PLUS)
        | (v1 == PLUS) << 1
        | (v2 == PLUS) << 2
        | (v3 == PLUS) << 3
    )


@dataclass(frozen=True)
class ConstraintSet:
    """A nonempty set of allowed 4-vertex types."""

    allowed: frozenset

    def __post_init__(self) -> None:
        if not self.allowed:
            raise InputError("constraint set must be nonempty")
        for t in self.allowed:
            if not isinstance(t, FourType):
                raise InputError(f"not a FourType: {t!r}")

    @classmethod
    def of(cls, *types: FourType) -> ConstraintSet:
        return cls(frozenset(types))

    @classmethod
    def coerce(cls, value) -> ConstraintSet:
        if isinstance(value, ConstraintSet):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(frozenset(value))

    @classmethod
    def parse(cls, text: str) -> ConstraintSet:
        """Parse a comma-separated list such as "C4,O4"."""
        names = [p.strip().upper() for p in text.split(",") if p.strip()]
        try:
            return cls(frozenset(FourType[name] for name in names))
        except KeyError as exc:
            raise InputError(f"unknown 4-vertex type in {text!r}") from exc

    def __contains__(self, t: FourType) -> bool:
        return t in self.allowed

    def __iter__(self):
        return iter(sorted(self.allowed, key=lambda t: t.value))

    @property
    def is_amalgamation_class(self) -> bool:
        """True exactly for {C4}, {C4,H4}, {C4,O4} and {C4,O4,H4} (a recorded
        fact about which 4-constrained classes amalgamate strongly)."""
        return FourType.C4 in self.allowed

    def mask_bits(self) -> int:
        """Bitset over the 16 plus-patterns whose type is allowed."""
        bits = 0
        for m in range(16):
            if TYPE_BY_MASK[m] in self.allowed:
                bits |= 1 << m
        return bits

    def label(self) -> str:
        return ",".join(t.value for t in self)

    def __str__(self) -> str:
        return self.label()


CYCLIC = ConstraintSet.of(FourType.C4)
EVEN = ConstraintSet.of(FourType.C4, FourType.H4)
H4_FREE = ConstraintSet.of(FourType.C4, FourType.O4)
ALL_TYPES = ConstraintSet.of(FourType.C4, FourType.O4, FourType.H4)


def four_type(structure: HoleyHT) -> FourType:
    """Isomorphism type of a hole-free 4-vertex structure.

    Decided from the hat hypergraph under the natural order 1<2<3<4: odd
    hyperedge count is O4, the two crossing two-edge patterns are H4,
    everything else is C4.
    """
    if structure.n != 4:
        raise InputError(f"four_type needs exactly 4 vertices, got {structure.n}")
    if not structure.is_complete():
        raise HoleyInput("four_type needs a hole-free structure")
    t = structure.table
    return TYPE_BY_MASK[mask_of(t[0], t[1], t[2], t[3])]


def census4() -> dict:
    """Counts of all 16 labeled 4-vertex structures per type."""
    counts = {t: 0 for t in FourType}
    for values in itertools.product((PLUS, MINUS), repeat=4):
        counts[four_type(HoleyHT(4, bytes(values)))] += 1
    return counts


@dataclass(frozen=True)
class Membership:
    """Result of a 4-constrained class test; falsy when a witness exists."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def class_member(structure: HoleyHT, allowed) -> Membership:
    """Does every fully assigned 4-subset have a type in `allowed`?

    4-subsets containing a hole are not judged.  On failure the witness is
    the lexicographically least offending 4-subset.
    """
    allowed = ConstraintSet.coerce(allowed)
    bits = allowed.mask_bits()
    table = structure.table
    for qi, ranks in enumerate(quad_triple_ranks(structure.n)):
        v0 = table[ranks[0]]
        v1 = table[ranks[1]]
        v2 = table[ranks[2]]
        v3 = table[ranks[3]]
        if HOLE in (v0, v1, v2, v3):
            continue
        if not (bits >> mask_of(v0, v1, v2, v3)) & 1:
            return Membership(False, quads(structure.n)[qi])
    return Membership(True)
