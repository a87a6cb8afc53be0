"""Generators for the named structures: forcing gadgets, chain structures,
their glued obstruction, cyclic structures, and parity-defined even ones.

The forcing gadgets are 4-vertex holey structures with two assigned triples
and two holes, built so that inside the H4-free class one orientation of the
first hole forces an orientation of the second.  Chains of overlapping
gadget embeddings yield the families on(n) and onneg(n), whose completions
pin down the orientation of {1, 2, 3}; gluing the two over {1, 2, 3} gives
bn(n), which has no completion at all.  For n >= 7 every vertex-deleted
substructure of bn(n) completes, making it a minimal obstruction; at n = 6
wrap-around overlaps between the links defeat that (see the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from .core import (
    HOLE,
    MINUS,
    PLUS,
    HoleyHT,
    InputError,
    tuple_parity,
    triple_rank,
    triples,
    complete_hypergraph,
    unhat,
    validate,
    Hypergraph3,
    check_order,
)


class LinkKind(Enum):
    """The four gadget embeddings usable as chain links.

    FWD:        xyz forces yzw        (gadget G)
    FWD_NEG:    xyz forces not-xzw    (gadget G-negative)
    CO_FWD:     not-xyz forces not-yzw (complement of G)
    CO_FWD_NEG: not-xyz forces xzw    (complement of G-negative)
    """

    FWD = "fwd"
    FWD_NEG = "fwdneg"
    CO_FWD = "cofwd"
    CO_FWD_NEG = "cofwdneg"


class ChainInconsistent(InputError):
    """Two links asked for contradictory orientations or an assigned hole."""


_GADGET_TUPLES = {
    LinkKind.FWD: ((1, 3, 4), (1, 4, 2)),
    LinkKind.FWD_NEG: ((2, 4, 3), (1, 4, 2)),
    LinkKind.CO_FWD: ((1, 4, 3), (1, 2, 4)),
    LinkKind.CO_FWD_NEG: ((2, 3, 4), (1, 2, 4)),
}

_GADGET_HOLES = {
    LinkKind.FWD: ((1, 2, 3), (2, 3, 4)),
    LinkKind.FWD_NEG: ((1, 2, 3), (1, 3, 4)),
    LinkKind.CO_FWD: ((1, 2, 3), (2, 3, 4)),
    LinkKind.CO_FWD_NEG: ((1, 2, 3), (1, 3, 4)),
}


def gadget(kind: LinkKind) -> HoleyHT:
    """The 4-vertex holey structure of a link kind: two assigned triples,
    two holes."""
    return validate(_GADGET_TUPLES[kind], 4)


class ChainBuilder:
    """Accumulates gadget embeddings into one holey structure.

    Keeps the gadget hole triples as must-stay-holes while building, so
    inconsistent chains are rejected mechanically; the finished structure
    records them as plain holes.
    """

    def __init__(self, n: int) -> None:
        if n < 4:
            raise InputError("chains need at least 4 vertices")
        self.n = n
        self.table = bytearray(comb(n, 3))
        self.must_hole: set[int] = set()

    def apply_link(self, kind: LinkKind, verts) -> ChainBuilder:
        """Embed the gadget of `kind` along (x, y, z, w) -> gadget 1..4."""
        x, y, z, w = verts
        if len({x, y, z, w}) != 4:
            raise InputError(f"link vertices must be distinct: {verts}")
        for v in (x, y, z, w):
            if not 1 <= v <= self.n:
                raise InputError(f"vertex {v} out of range 1..{self.n}")
        image = {1: x, 2: y, 3: z, 4: w}
        for t in _GADGET_TUPLES[kind]:
            p, q, r = (image[i] for i in t)
            a, b, c = sorted((p, q, r))
            value = MINUS if tuple_parity(p, q, r) else PLUS
            rank = triple_rank(a, b, c)
            if rank in self.must_hole:
                raise ChainInconsistent(
                    f"link {kind.value}@{verts} assigns required hole {(a, b, c)}"
                )
            if self.table[rank] == HOLE:
                self.table[rank] = value
            elif self.table[rank] != value:
                raise ChainInconsistent(
                    f"link {kind.value}@{verts} contradicts {(a, b, c)}"
                )
        for t in _GADGET_HOLES[kind]:
            a, b, c = sorted(image[i] for i in t)
            rank = triple_rank(a, b, c)
            if self.table[rank] != HOLE:
                raise ChainInconsistent(
                    f"link {kind.value}@{verts} needs {(a, b, c)} to be a hole"
                )
            self.must_hole.add(rank)
        return self

    def build(self) -> HoleyHT:
        return HoleyHT(self.n, bytes(self.table))


def apply_link(builder: ChainBuilder, kind: LinkKind, verts) -> ChainBuilder:
    """Function form of ChainBuilder.apply_link."""
    return builder.apply_link(kind, verts)


@dataclass(frozen=True)
class ChainSpec:
    """A chain as data: the vertex count and the ordered link list.

    build() checks link-overlap consistency mechanically (ChainInconsistent
    on any contradiction or violated hole requirement).
    """

    n: int
    links: tuple

    def build(self) -> HoleyHT:
        builder = ChainBuilder(self.n)
        for kind, verts in self.links:
            builder.apply_link(kind, verts)
        return builder.build()


def on_links(n: int) -> list[tuple[LinkKind, tuple[int, int, int, int]]]:
    """The link sequence of on(n): a forward run followed by the three
    wrap-around links that force {1, 2, 3} negative."""
    if n < 6:
        raise InputError(f"on(n) needs n >= 6, got {n}")
    links = [(LinkKind.FWD, (i, i + 1, i + 2, i + 3)) for i in range(1, n - 2)]
    links.append((LinkKind.FWD_NEG, (n - 2, n - 1, n, 1)))
    links.append((LinkKind.CO_FWD, (n - 2, n, 1, 2)))
    links.append((LinkKind.CO_FWD, (n, 1, 2, 3)))
    return links


def onneg_links(n: int) -> list[tuple[LinkKind, tuple[int, int, int, int]]]:
    """The complemented link sequence: forces {1, 2, 3} positive."""
    if n < 6:
        raise InputError(f"onneg(n) needs n >= 6, got {n}")
    links = [(LinkKind.CO_FWD, (i, i + 1, i + 2, i + 3)) for i in range(1, n - 2)]
    links.append((LinkKind.CO_FWD_NEG, (n - 2, n - 1, n, 1)))
    links.append((LinkKind.FWD, (n - 2, n, 1, 2)))
    links.append((LinkKind.FWD, (n, 1, 2, 3)))
    return links


def gen_on(n: int) -> HoleyHT:
    """Chain structure on 1..n whose completions all have {1, 2, 3} MINUS."""
    return ChainSpec(n, tuple(on_links(n))).build()


def gen_onneg(n: int) -> HoleyHT:
    """Complement chain: completions all have {1, 2, 3} PLUS."""
    return ChainSpec(n, tuple(onneg_links(n))).build()


def gen_bn(n: int) -> HoleyHT:
    """Gluing of on(n) and onneg(n) over the vertices {1, 2, 3}.

    The result has 2n-3 vertices: 1..n carry on(n) and {1, 2, 3} together
    with n+1..2n-3 carry onneg(n) (vertex j >= 4 relabeled to n+j-3).  All
    cross triples are holes, as is {1, 2, 3} itself.
    """
    if n < 6:
        raise InputError(f"bn(n) needs n >= 6, got {n}")
    first = gen_on(n)
    second = gen_onneg(n)
    total = 2 * n - 3
    table = bytearray(comb(total, 3))
    for t, v in zip(triples(n), first.table):
        if v != HOLE:
            table[triple_rank(*t)] = v
    # the relabeling 1,2,3 -> 1,2,3 and j -> n+j-3 is monotone, so stored
    # values carry over unchanged
    relabel = {1: 1, 2: 2, 3: 3}
    for j in range(4, n + 1):
        relabel[j] = n + j - 3
    for (a, b, c), v in zip(triples(n), second.table):
        if v != HOLE:
            table[triple_rank(relabel[a], relabel[b], relabel[c])] = v
    return HoleyHT(total, bytes(table))


def gen_cyclic(n: int, order=None) -> HoleyHT:
    """Full structure oriented along a cyclic order: each 3-subset gets the
    increasing-in-order tuple; every 4-subset then has type C4."""
    if order is None:
        order = range(1, n + 1)
    return unhat(complete_hypergraph(n), check_order(order, n))


def gen_even(n: int, edges, order=None) -> HoleyHT:
    """Full structure from a graph and an order: the 3-subsets spanning an
    even number of edges get the increasing-in-order tuple, the rest its
    transposition.  Every 4-subset has type C4 or H4."""
    if order is None:
        order = range(1, n + 1)
    edge_set = normalize_edges(n, edges)
    hyper = []
    for a, b, c in triples(n):
        inside = (
            ((a, b) in edge_set)
            + ((a, c) in edge_set)
            + ((b, c) in edge_set)
        )
        if inside % 2 == 0:
            hyper.append((a, b, c))
    return unhat(Hypergraph3(n, frozenset(hyper)), check_order(order, n))


def normalize_edges(n: int, edges) -> frozenset:
    """Undirected edges as a frozenset of sorted pairs over 1..n."""
    out = set()
    for e in edges:
        x, y = e
        if x == y:
            raise InputError(f"loop edge {e}")
        a, b = (x, y) if x < y else (y, x)
        if not 1 <= a <= n or not b <= n:
            raise InputError(f"edge {e} out of range 1..{n}")
        out.add((a, b))
    return frozenset(out)


def on_deletion_tuples(n: int, v: int) -> list[tuple[int, int, int]]:
    """The explicit relation tuples that, merged into on(n) with vertex v
    deleted, extend to a completion having {1, 2, 3} PLUS.

    The family is: the run (i, i+1, i+2) for i <= v-3, the transposed run
    (j, j+2, j+1) for j >= v+1, and the wrap tuples (n-2, n, 1), (n, 1, 2);
    members touching v itself are dropped (they only occur for v close
    to n).
    """
    if n < 6:
        raise InputError(f"on(n) needs n >= 6, got {n}")
    if not 4 <= v <= n:
        raise InputError(f"deleted vertex must be in 4..{n}, got {v}")
    out = [(i, i + 1, i + 2) for i in range(1, v - 2)]
    out += [(j, j + 2, j + 1) for j in range(v + 1, n - 1)]
    out += [(n - 2, n, 1), (n, 1, 2)]
    return [t for t in out if v not in t]


def onneg_deletion_tuples(n: int, v: int) -> list[tuple[int, int, int]]:
    """Complement family for onneg(n): completion with {1, 2, 3} MINUS."""
    return [(a, c, b) for (a, b, c) in on_deletion_tuples(n, v)]
