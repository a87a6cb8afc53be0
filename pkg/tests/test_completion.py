import random

import pytest

from htour.classify import ALL_TYPES, CYCLIC, H4_FREE, class_member
from htour.completion import (
    CompletionProblem,
    all_completions,
    amalgamate,
    complete,
    is_minimal_obstruction,
    propagate,
)
from htour.core import (
    HOLE,
    MINUS,
    PLUS,
    GuardExceeded,
    HoleyHT,
    InputError,
    validate,
)
from htour.families import LinkKind, gadget, gen_bn, gen_cyclic, gen_on, gen_onneg
from htour.oracles import enumerate_completions
from htour.rand import random_holey_ht


def test_propagate_forcing_examples():
    g = gadget(LinkKind.FWD)
    r = propagate(g.with_value(1, 2, 3, PLUS), H4_FREE)
    assert r.ok and r.structure.triple_value(2, 3, 4) == PLUS
    assert r.forced == (((2, 3, 4), PLUS),)

    gn = gadget(LinkKind.FWD_NEG)
    r = propagate(gn.with_value(1, 2, 3, PLUS), H4_FREE)
    assert r.ok and r.structure.triple_value(1, 3, 4) == MINUS


def test_propagate_gadget_is_fixpoint():
    g = gadget(LinkKind.FWD)
    r = propagate(g, H4_FREE)
    assert r.ok and r.structure == g and r.forced == ()


def test_propagate_conflict():
    # an H4 already fully present conflicts immediately
    h4 = HoleyHT(4, bytes([PLUS, MINUS, PLUS, MINUS]))
    r = propagate(h4, H4_FREE)
    assert not r.ok and r.conflict == (1, 2, 3, 4)


def test_complete_chain_and_gluing():
    assert complete(gen_on(6), H4_FREE).sat
    assert not complete(gen_bn(6), H4_FREE).sat


def test_complete_all_types_always_sat():
    rng = random.Random(21)
    for _ in range(60):
        A = random_holey_ht(rng, rng.randint(1, 7), rng.randint(0, 12))
        assert complete(A, ALL_TYPES).sat


def test_complete_small_structures_filled_plus():
    res = complete(HoleyHT.empty(3), H4_FREE)
    assert res.sat and res.completion.triple_value(1, 2, 3) == PLUS


def test_complete_survives_deep_branching():
    # 1140 holes and nothing to propagate: one branch level per hole
    res = complete(HoleyHT.empty(20), ALL_TYPES)
    assert res.sat and res.completion.is_complete()


def test_completion_problem_wrapper():
    problem = CompletionProblem(gadget(LinkKind.FWD), H4_FREE)
    assert problem.solve().sat
    assert len(problem.enumerate()) == 3


def test_all_completions_gadget():
    g = gadget(LinkKind.FWD)
    comps = all_completions(g, H4_FREE)
    assert len(comps) == 3
    banned = g.with_value(1, 2, 3, PLUS).with_value(2, 3, 4, MINUS)
    assert banned not in comps
    # lexicographic: first completion takes PLUS on the least-rank hole
    assert comps[0].triple_value(1, 2, 3) == PLUS


def test_all_completions_chain_forces_123():
    comps = all_completions(gen_on(6), H4_FREE)
    assert len(comps) == 9
    assert all(c.triple_value(1, 2, 3) == MINUS for c in comps)
    dual = all_completions(gen_onneg(6), H4_FREE)
    assert all(c.triple_value(1, 2, 3) == PLUS for c in dual)


def test_all_completions_cap_is_prefix():
    g = gen_on(6)
    full = all_completions(g, H4_FREE)
    assert all_completions(g, H4_FREE, cap=4) == full[:4]


def test_all_completions_guard():
    with pytest.raises(GuardExceeded):
        all_completions(HoleyHT.empty(9), H4_FREE)  # 84 holes
    assert len(all_completions(HoleyHT.empty(9), H4_FREE, cap=2)) == 2


def test_sat_results_extend_and_belong():
    rng = random.Random(22)
    for _ in range(80):
        A = random_holey_ht(rng, rng.randint(4, 7), rng.randint(0, 12))
        res = complete(A, H4_FREE)
        if res.sat:
            assert res.completion.extends(A)
            assert res.completion.is_complete()
            assert class_member(res.completion, H4_FREE)


def test_solver_matches_oracle():
    rng = random.Random(23)
    for _ in range(150):
        A = random_holey_ht(rng, rng.randint(4, 7), rng.randint(0, 10))
        comps = enumerate_completions(A, H4_FREE)
        res = complete(A, H4_FREE)
        assert res.sat == bool(comps)
        assert all_completions(A, H4_FREE) == comps


def test_forced_values_in_every_completion():
    rng = random.Random(24)
    checked = 0
    while checked < 60:
        A = random_holey_ht(rng, rng.randint(4, 6), rng.randint(0, 10))
        r = propagate(A, H4_FREE)
        comps = enumerate_completions(A, H4_FREE)
        if not r.ok or not comps or not r.forced:
            continue
        checked += 1
        for (a, b, c), v in r.forced:
            assert all(comp.triple_value(a, b, c) == v for comp in comps)


def test_determinism():
    A = gen_bn(6)
    first = complete(A, H4_FREE)
    second = complete(A, H4_FREE)
    assert first == second
    assert [r.table for r in all_completions(gen_on(6), H4_FREE)] == [
        r.table for r in all_completions(gen_on(6), H4_FREE)
    ]


def test_minimal_obstruction_examples():
    assert not is_minimal_obstruction(gen_on(6), H4_FREE)  # completable
    # a bare forbidden structure with no holes is minimal: substructures
    # have at most 3 vertices
    h4 = HoleyHT(4, bytes([PLUS, MINUS, PLUS, MINUS]))
    rep = is_minimal_obstruction(h4, H4_FREE)
    assert rep.is_minimal and not rep.whole.sat
    assert is_minimal_obstruction(gen_bn(7), H4_FREE).is_minimal


def test_bn6_boundary_behavior():
    # bn(6) is an obstruction but not a minimal one: the deletions of
    # vertex 5 (and its mirror 8) are themselves uncompletable
    rep = is_minimal_obstruction(gen_bn(6), H4_FREE)
    assert not rep.whole.sat
    bad = sorted(v for v, r in rep.deletions.items() if not r.sat)
    assert bad == [5, 8]
    assert not rep.is_minimal
    # the deletion named in the gluing example stays completable
    assert rep.deletions[9].sat


def test_minimal_obstruction_jobs_agree():
    seq = is_minimal_obstruction(gen_bn(6), H4_FREE, jobs=1)
    par = is_minimal_obstruction(gen_bn(6), H4_FREE, jobs=4)
    assert seq.is_minimal == par.is_minimal
    assert {v: r.verdict for v, r in seq.deletions.items()} == {
        v: r.verdict for v, r in par.deletions.items()
    }


def test_restriction_lemma():
    rng = random.Random(25)
    done = 0
    while done < 60:
        n = rng.randint(4, 7)
        A = random_holey_ht(rng, n, rng.randint(0, 10))
        res = complete(A, H4_FREE)
        if not res.sat:
            continue
        done += 1
        subset = sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
        inner = res.completion.induced(subset)
        assert inner.extends(A.induced(subset))
        assert class_member(inner, H4_FREE)


def test_amalgamate_self_gluing():
    A = gen_cyclic(5)
    res = amalgamate(A, A, range(1, 6), H4_FREE)
    assert res.sat and res.completion == A


def test_amalgamate_disjoint_triangles():
    tri = gen_cyclic(3)
    res = amalgamate(tri, tri, [], CYCLIC)
    assert res.sat
    assert class_member(res.completion, CYCLIC)
    assert res.completion.n == 6


def test_amalgamate_chain_factors_over_shared_pair():
    left = complete(gen_on(6).induced([1, 2, 4, 5, 6]), H4_FREE).completion
    right = complete(gen_onneg(6).induced([1, 2, 4, 5, 6]), H4_FREE).completion
    res = amalgamate(left, right, [1, 2], H4_FREE)
    assert res.sat and res.completion.n == 8


def test_amalgamate_interleaved_base_preserves_orientations():
    # base ids {2, 4} interleave with the fresh ids 6..8, so the second
    # factor's relabeling is not monotone; orientations must survive as
    # ordered tuples, not raw table values
    from htour.core import triples

    rng = random.Random(77)
    checked = 0
    while checked < 15:
        first = random_holey_ht(rng, 5, rng.randint(0, 6))
        second = random_holey_ht(rng, 5, rng.randint(0, 6))
        if not class_member(first, H4_FREE) or not class_member(second, H4_FREE):
            continue
        res = amalgamate(first, second, [2, 4], H4_FREE)
        if not res.sat:
            continue
        checked += 1
        image = {1: 6, 2: 2, 3: 7, 4: 4, 5: 8}
        for a, b, c in triples(5):
            got = res.completion.orientation_of(image[a], image[b], image[c])
            want = second.orientation_of(a, b, c)
            if want != HOLE:
                assert got == want
        assert res.completion.induced(range(1, 6)).extends(first)


def test_amalgamate_base_disagreement():
    plus = validate([(1, 2, 3)], 3)
    minus = validate([(1, 3, 2)], 3)
    with pytest.raises(InputError):
        amalgamate(plus, minus, [1, 2, 3], H4_FREE)


def test_amalgamate_rejects_nonmembers():
    h4 = HoleyHT(4, bytes([PLUS, MINUS, PLUS, MINUS]))
    with pytest.raises(InputError):
        amalgamate(h4, h4, [1, 2], H4_FREE)


def test_unsat_certificate_names_quads():
    res = complete(gen_bn(6), H4_FREE)
    assert res.conflicts  # at least one 4-subset witnessed
    for quad in res.conflicts:
        assert len(quad) == 4 and all(1 <= v <= 9 for v in quad)
