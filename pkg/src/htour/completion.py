"""Completion of holey 3-hypertournaments inside a 4-constrained class.

A completion assigns PLUS or MINUS to every hole so that all 4-vertex
substructures stay inside the allowed type set.  The solver is a
deterministic backtracking search over hole triples with unit propagation
at the 4-subset level: whenever a 4-subset has a single unassigned triple,
any orientation that would push it outside the class is excluded; if both
are excluded the 4-subset is a conflict.

Everything here is deterministic: branching always picks the hole occurring
in the most one-hole 4-subsets (ties broken by triple rank), tries PLUS
first, and propagation worklists are FIFO.  Identical inputs give identical
results.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import sys
from collections import deque
from dataclasses import dataclass, field

from .classify import ConstraintSet, class_member, mask_of
from .core import (
    HOLE,
    MINUS,
    PLUS,
    GuardExceeded,
    HoleyHT,
    InputError,
    quad_triple_ranks,
    quads,
    triple_quad_ids,
    triples,
    validate,
)

ENUMERATION_HOLE_GUARD = 30


def _ensure_recursion_room(structure: HoleyHT) -> None:
    # the search recurses at most once per hole, plus interpreter slack
    needed = 2 * structure.hole_count() + 500
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)


@dataclass(frozen=True)
class CompletionProblem:
    """A holey structure together with the allowed set of 4-vertex types."""

    structure: HoleyHT
    allowed: ConstraintSet

    def solve(self) -> SolveResult:
        return complete(self.structure, self.allowed)

    def enumerate(self, cap: int | None = None) -> list[HoleyHT]:
        return all_completions(self.structure, self.allowed, cap=cap)


@dataclass(frozen=True)
class SolveResult:
    """Verdict of a completion search.

    For Sat, `completion` extends the input and lies in the class.  For
    Unsat, `conflicts` lists the 4-subsets (vertex tuples) that produced
    conflicts along the exhausted search tree, deduplicated and sorted; no
    minimality is promised.
    """

    sat: bool
    completion: HoleyHT | None = None
    conflicts: tuple = ()
    nodes: int = 0

    @property
    def verdict(self) -> str:
        return "Sat" if self.sat else "Unsat"


@dataclass(frozen=True)
class PropagationResult:
    """Fixpoint of unit propagation, or the 4-subset where it conflicted."""

    ok: bool
    structure: HoleyHT | None = None
    forced: tuple = ()
    conflict: tuple | None = None


@dataclass(frozen=True)
class MinimalityReport:
    """is_minimal_obstruction verdict with its per-vertex witnesses."""

    is_minimal: bool
    whole: SolveResult
    deletions: dict = field(hash=False, default_factory=dict)

    def __bool__(self) -> bool:
        return self.is_minimal


class _Engine:
    """Search state over a mutable copy of the orientation table."""

    __slots__ = (
        "n",
        "table",
        "qt",
        "tq",
        "quad_verts",
        "bits",
        "hole_cnt",
        "trail",
        "conflicts",
        "nodes",
    )

    def __init__(self, structure: HoleyHT, allowed: ConstraintSet) -> None:
        self.n = structure.n
        self.table = bytearray(structure.table)
        self.qt = quad_triple_ranks(self.n)
        self.tq = triple_quad_ids(self.n)
        self.quad_verts = quads(self.n)
        self.bits = allowed.mask_bits()
        self.hole_cnt = [
            sum(1 for r in ranks if self.table[r] == HOLE) for ranks in self.qt
        ]
        self.trail: list[int] = []
        self.conflicts: set = set()
        self.nodes = 0

    def seed_worklist(self) -> deque:
        return deque(
            qi for qi, cnt in enumerate(self.hole_cnt) if cnt <= 1
        )

    def assign(self, rank: int, value: int, worklist: deque) -> None:
        self.table[rank] = value
        self.trail.append(rank)
        for qi in self.tq[rank]:
            self.hole_cnt[qi] -= 1
            if self.hole_cnt[qi] <= 1:
                worklist.append(qi)

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            rank = self.trail.pop()
            self.table[rank] = HOLE
            for qi in self.tq[rank]:
                self.hole_cnt[qi] += 1

    def propagate(self, worklist: deque) -> int | None:
        """Run unit propagation to fixpoint; return a conflicting quad id
        or None.  Forced assignments extend the trail."""
        table = self.table
        qt = self.qt
        bits = self.bits
        while worklist:
            qi = worklist.popleft()
            cnt = self.hole_cnt[qi]
            if cnt >= 2:
                continue
            r0, r1, r2, r3 = qt[qi]
            v0, v1, v2, v3 = table[r0], table[r1], table[r2], table[r3]
            if cnt == 0:
                if not (bits >> mask_of(v0, v1, v2, v3)) & 1:
                    return qi
                continue
            # exactly one hole: find it and test both orientations
            if v0 == HOLE:
                hole_rank, pos, base = r0, 0, mask_of(MINUS, v1, v2, v3)
            elif v1 == HOLE:
                hole_rank, pos, base = r1, 1, mask_of(v0, MINUS, v2, v3)
            elif v2 == HOLE:
                hole_rank, pos, base = r2, 2, mask_of(v0, v1, MINUS, v3)
            else:
                hole_rank, pos, base = r3, 3, mask_of(v0, v1, v2, MINUS)
            ok_minus = (bits >> base) & 1
            ok_plus = (bits >> (base | (1 << pos))) & 1
            if ok_plus and ok_minus:
                continue
            if not ok_plus and not ok_minus:
                return qi
            self.assign(hole_rank, PLUS if ok_plus else MINUS, worklist)
        return None

    def pick_branch(self) -> int | None:
        """Hole occurring in the most one-hole 4-subsets; ties by rank."""
        best_rank = None
        best_score = -1
        hole_cnt = self.hole_cnt
        for rank, v in enumerate(self.table):
            if v != HOLE:
                continue
            score = sum(1 for qi in self.tq[rank] if hole_cnt[qi] == 1)
            if score > best_score:
                best_rank, best_score = rank, score
        return best_rank

    def record_conflict(self, qi: int) -> None:
        self.conflicts.add(self.quad_verts[qi])

    # -- searches ------------------------------------------------------------

    def solve_first(self) -> bytes | None:
        return self._dfs_first(self.seed_worklist())

    def _dfs_first(self, worklist: deque) -> bytes | None:
        self.nodes += 1
        qi = self.propagate(worklist)
        if qi is not None:
            self.record_conflict(qi)
            return None
        rank = self.pick_branch()
        if rank is None:
            return bytes(self.table)
        for value in (PLUS, MINUS):
            mark = len(self.trail)
            child = deque()
            self.assign(rank, value, child)
            found = self._dfs_first(child)
            if found is not None:
                return found
            self.undo_to(mark)
        return None

    def solve_all(self, cap: int | None) -> list[bytes]:
        found: list[bytes] = []

        def rec(worklist: deque) -> bool:
            self.nodes += 1
            qi = self.propagate(worklist)
            if qi is not None:
                self.record_conflict(qi)
                return True
            # branch on the least-rank hole so results come out in
            # lexicographic (rank-ordered, PLUS-first) order
            rank = next(
                (r for r, v in enumerate(self.table) if v == HOLE), None
            )
            if rank is None:
                found.append(bytes(self.table))
                return cap is None or len(found) < cap
            for value in (PLUS, MINUS):
                mark = len(self.trail)
                child = deque()
                self.assign(rank, value, child)
                keep_going = rec(child)
                self.undo_to(mark)
                if not keep_going:
                    return False
            return True

        rec(self.seed_worklist())
        return found


def _finish_sat(structure: HoleyHT, allowed: ConstraintSet, engine: _Engine,
                table: bytes) -> SolveResult:
    completed = HoleyHT(structure.n, table)
    # soundness is asserted on every run: extends the input, no holes,
    # all 4-subsets in class
    if (
        not completed.extends(structure)
        or not completed.is_complete()
        or not class_member(completed, allowed)
    ):
        raise RuntimeError("solver produced an unsound completion")
    return SolveResult(
        sat=True,
        completion=completed,
        conflicts=tuple(sorted(engine.conflicts)),
        nodes=engine.nodes,
    )


def propagate(structure: HoleyHT, allowed) -> PropagationResult:
    """Unit propagation to fixpoint, without search.

    Every forced orientation is sound: the discarded one would put some
    4-subset outside the class, so it appears in no completion.
    """
    allowed = ConstraintSet.coerce(allowed)
    engine = _Engine(structure, allowed)
    qi = engine.propagate(engine.seed_worklist())
    if qi is not None:
        return PropagationResult(ok=False, conflict=engine.quad_verts[qi])
    ts = triples(structure.n)
    forced = tuple((ts[r], engine.table[r]) for r in engine.trail)
    return PropagationResult(
        ok=True,
        structure=HoleyHT(structure.n, bytes(engine.table)),
        forced=forced,
    )


def complete(structure: HoleyHT, allowed) -> SolveResult:
    """Decide whether a completion exists; return one if so.

    Complete and sound: Sat iff some hole assignment stays in the class.
    Deterministic branching: most-constrained hole, rank tie-break, PLUS
    branch first.
    """
    allowed = ConstraintSet.coerce(allowed)
    _ensure_recursion_room(structure)
    engine = _Engine(structure, allowed)
    table = engine.solve_first()
    if table is None:
        return SolveResult(
            sat=False,
            conflicts=tuple(sorted(engine.conflicts)),
            nodes=engine.nodes,
        )
    return _finish_sat(structure, allowed, engine, table)


def all_completions(structure: HoleyHT, allowed, cap: int | None = None) -> list[HoleyHT]:
    """Every completion (or the first `cap` of them), in lexicographic order
    by the hole assignment vector (holes by rank, PLUS before MINUS)."""
    allowed = ConstraintSet.coerce(allowed)
    if cap is None and structure.hole_count() > ENUMERATION_HOLE_GUARD:
        raise GuardExceeded(
            f"enumeration over {structure.hole_count()} holes refused; "
            f"set a cap or stay at <= {ENUMERATION_HOLE_GUARD} holes"
        )
    _ensure_recursion_room(structure)
    engine = _Engine(structure, allowed)
    tables = engine.solve_all(cap)
    out = []
    for table in tables:
        res = _finish_sat(structure, allowed, engine, table)
        out.append(res.completion)
    return out


def _deletion_job(args) -> tuple[int, SolveResult]:
    structure, allowed, vertex = args
    sub = structure.induced([v for v in structure.vertices if v != vertex])
    return vertex, complete(sub, allowed)


def is_minimal_obstruction(structure: HoleyHT, allowed, jobs: int = 1) -> MinimalityReport:
    """No completion, but deleting any single vertex leaves a completable
    structure.

    Single-vertex deletions suffice: restricting a completion of a
    substructure yields completions of all deeper substructures.
    """
    allowed = ConstraintSet.coerce(allowed)
    whole = complete(structure, allowed)
    deletions: dict[int, SolveResult] = {}
    if whole.sat:
        return MinimalityReport(False, whole, deletions)
    args = [(structure, allowed, v) for v in structure.vertices]
    if jobs > 1 and structure.n > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_deletion_job, args))
    else:
        results = [_deletion_job(a) for a in args]
    for vertex, res in results:
        deletions[vertex] = res
    return MinimalityReport(
        all(r.sat for r in deletions.values()), whole, deletions
    )


def amalgamate(first: HoleyHT, second: HoleyHT, base, allowed) -> SolveResult:
    """Free gluing over a shared vertex set, then completion.

    Vertices in `base` are identified across the two structures by equal id;
    both must induce the same table on them.  The glued structure keeps the
    first factor's ids 1..n1 and relabels the second factor's remaining
    vertices to n1+1, ... in ascending order.  Cross triples start as holes
    (strong amalgamation adds no identifications), and the result is
    completed inside the class.
    """
    allowed = ConstraintSet.coerce(allowed)
    base_ids = sorted(set(base))
    for v in base_ids:
        if not (1 <= v <= first.n and 1 <= v <= second.n):
            raise InputError(f"base vertex {v} missing from a factor")
    if not class_member(first, allowed) or not class_member(second, allowed):
        raise InputError("amalgamation factors must lie in the class")
    for t in itertools.combinations(base_ids, 3):
        if first.triple_value(*t) != second.triple_value(*t):
            raise InputError(f"factors disagree on base triple {t}")

    base_set = set(base_ids)
    extra = [v for v in second.vertices if v not in base_set]
    relabel = {v: v for v in base_ids}
    for i, v in enumerate(extra):
        relabel[v] = first.n + 1 + i
    total = first.n + len(extra)

    # collect the in-relation tuple of every assigned triple; the second
    # factor's relabeling need not be monotone, so orientations travel as
    # ordered tuples, not table values
    asserted = []
    for (a, b, c), v in zip(triples(first.n), first.table):
        if v != HOLE:
            asserted.append((a, b, c) if v == PLUS else (a, c, b))
    for (a, b, c), v in zip(triples(second.n), second.table):
        if v != HOLE:
            x, y, z = relabel[a], relabel[b], relabel[c]
            asserted.append((x, y, z) if v == PLUS else (x, z, y))
    return complete(validate(asserted, total), allowed)
