import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conjforge.composite import perm_cycles
from conjforge.core import (DIGRAPH, FiniteStructure, automorphisms, brute_force_isomorphism, c3,
                            compose, cycle_graph, embeds_tournament, inverse, is_In_free,
                            isomorphism_types, transitive_tournament, verify_automorphism,
                            verify_conjugacy_witness)
from conjforge.errors import InputError
from conjforge.generic_digraphs import (build_hat, build_reduction_forbidden, build_reduction_In_free,
                                        build_reduction_multipartite, build_reduction_tournament,
                                        build_tournament_delta0, extend_tournament_level,
                                        family_from_json, family_to_json, hat_lift, hat_swap,
                                        is_complete_multipartite, parts_of, recover_base_digraph,
                                        recovery_set_digraph)
from conjforge.layered import transport

from strategies import permutations_of

POINT = transitive_tournament(1)
ARROW = transitive_tournament(2)


def small_tournaments(k):
    return [t for m in range(k + 1) for t in isomorphism_types("tournament", m)]


def pairs_oriented_once(s):
    return all((s.adjacent(u, v)) and ((u, v) in s.edges) != ((v, u) in s.edges)
               for u, v in itertools.combinations(s.vertices, 2))


# -- generic tournament


def test_delta0_examples():
    ds = build_tournament_delta0(POINT)
    assert brute_force_isomorphism(ds.structure, c3()) is not None
    assert ds.phi == {0: 1, 1: 2, 2: 0}
    ds = build_tournament_delta0(ARROW)
    assert len(ds) == 6 and len(ds.structure.edges) == 15
    xs = [v for v in ds.vertices if ds.origins[v].letter == 0]
    ys = [v for v in ds.vertices if ds.origins[v].letter == 1]
    assert all((x, y) in ds.structure.edges for x in xs for y in ys)
    assert ds.verify()
    with pytest.raises(InputError):
        build_tournament_delta0(cycle_graph(3))


def test_one_level_from_a_point():
    ds = build_reduction_tournament(POINT, 1, 1)
    assert len(ds) == 7
    new = list(ds.levels[1])
    fixed = [v for v in new if ds.phi[v] == v]
    assert len(fixed) == 1 and ds.origins[fixed[0]].subset == ()
    orbit = [v for v in new if v not in fixed]
    assert len(orbit) == 3
    assert all((ds.phi[x], x) in ds.structure.edges for x in orbit)
    assert pairs_oriented_once(ds.structure)
    assert sorted(recovery_set_digraph(ds.structure, ds.phi)) == sorted(ds.levels[0])


def test_levels_zero():
    assert len(build_reduction_tournament(ARROW, 0)) == 6


@pytest.mark.parametrize("T", small_tournaments(4), ids=lambda t: f"t{len(t)}-{len(automorphisms(t))}")
def test_tournament_round_trip(T):
    ds = build_reduction_tournament(T, 1, 1)
    for k in range(len(ds.levels)):
        assert pairs_oriented_once(ds.level_structure(k))
    s, phi = ds.structure, ds.phi
    for v in s.vertices:
        if ds.level_of(v) == 0:
            assert (v, phi[v]) in s.edges
        elif phi[v] != v:
            assert (phi[v], v) in s.edges
    assert sorted(recovery_set_digraph(s, phi)) == sorted(ds.levels[0])
    assert brute_force_isomorphism(recover_base_digraph(ds), T) is not None


def test_two_levels_stay_tournaments():
    ds = extend_tournament_level(build_reduction_tournament(ARROW, 1, 1), 1)
    assert pairs_oriented_once(ds.structure) and ds.verify()
    assert brute_force_isomorphism(recover_base_digraph(ds), ARROW) is not None


def test_recovery_separates_tournaments():
    ts = small_tournaments(4)
    outs = [recover_base_digraph(build_reduction_tournament(t, 1, 1)) for t in ts]
    for (i, a), (j, b) in itertools.product(enumerate(outs), repeat=2):
        assert (brute_force_isomorphism(a, b) is not None) == (i == j)


def test_identity_recovers_nothing():
    s = FiniteStructure.digraph(range(3), [(0, 1)])
    assert len(recover_base_digraph(s, {v: v for v in range(3)})) == 0


@settings(max_examples=20)
@given(st.data())
def test_isomorphism_transport(data):
    T = data.draw(st.sampled_from(small_tournaments(3)))
    alpha0 = data.draw(permutations_of(T.vertices))
    src = build_reduction_tournament(T, 1, 1)
    dst = build_reduction_tournament(T.relabel(alpha0), 1, 1)
    alpha = transport(src, dst, alpha0)
    assert alpha is not None
    assert {(alpha[u], alpha[v]) for u, v in src.structure.edges} == dst.structure.edges
    assert all(alpha[src.phi[v]] == dst.phi[alpha[v]] for v in src.vertices)


# -- I_n-free


def test_in_free_n2_matches_tournament_extension():
    a = build_reduction_In_free(ARROW, 2, 1, 1)
    b = build_reduction_tournament(ARROW, 1, 1)
    assert a.structure.edges == b.structure.edges


@pytest.mark.parametrize("T", [POINT, ARROW])
def test_in_free_signatures(T):
    ds = build_reduction_In_free(T, 3, 1, 1)
    s = ds.structure
    level0 = sorted(ds.levels[0])
    assert is_In_free(ds.level_structure(0), 3) and is_In_free(s, 3)
    assert sorted(recovery_set_digraph(s, ds.phi)) == level0
    candidates = [((), ())] + [((v,), ()) for v in level0] + [((), (v,)) for v in level0]
    for S, Sp in candidates:
        x = ds.vertex_for(1, S, Sp)
        assert x is not None
        for a in level0:
            if a in S:
                want = (a, x)
            elif a in Sp:
                want = None
            else:
                want = (x, a)
            got = [e for e in ((a, x), (x, a)) if e in s.edges]
            assert got == ([want] if want else [])
    assert brute_force_isomorphism(recover_base_digraph(ds), T) is not None


def test_in_free_point_has_nonadjacent_witness():
    ds = build_reduction_In_free(POINT, 3, 1, 1)
    assert not ds.structure.adjacent(0, ds.vertex_for(1, (), (0,)))
    assert len(ds) == 3 + 1 + 3 + 3


def test_in_free_rejects_small_n():
    with pytest.raises(InputError):
        build_reduction_In_free(POINT, 1)


# -- forbidden tournaments


def test_forbidden_c3_example():
    G = FiniteStructure.digraph([0, 1], [(0, 1)])
    ds0 = build_reduction_forbidden(G, [c3()], 0)
    assert len(ds0) == 8 and not embeds_tournament(c3(), ds0.structure)
    ds = build_reduction_forbidden(G, [c3()], 1, 2)
    assert not embeds_tournament(c3(), ds.structure)
    assert ds.skipped
    assert ds.verify()
    assert brute_force_isomorphism(recover_base_digraph(ds), G.relabel({0: 0, 1: 1})) is not None


def test_forbidden_skips_adjacent_pair():
    G = FiniteStructure.digraph([0], [])
    ds = build_reduction_forbidden(G, [c3()], 1, 2)
    # level 0 is the 4-cycle 0->1->2->3->0; S = {0, 1} would give 0->x, 1->x? no: s->x then x->2,3
    # {1} with 0->1: x from {1} gives 1->x and x->0, closing 0->1->x->0
    assert (1, (1,)) in {(k, s) for k, s in ds.skipped} or (1, (0, 1)) in {(k, s) for k, s in ds.skipped}
    assert ds.vertex_for(1, (1,)) is None


def test_empty_family_never_skips():
    G = FiniteStructure.digraph([0, 1], [(0, 1)])
    ds = build_reduction_forbidden(G, [], 1, 1)
    assert not ds.skipped and len(ds) == 8 + 9


def test_forbidden_rejects_bad_input():
    with pytest.raises(InputError):
        build_reduction_forbidden(c3(), [c3()])
    with pytest.raises(InputError):
        build_reduction_forbidden(POINT, [ARROW])


def test_family_json():
    F = (c3(), transitive_tournament(3))
    assert family_from_json(family_to_json(F)) == F


# -- multipartite


def test_multipartite_point():
    ds = build_reduction_multipartite(POINT, 2, 0)
    assert brute_force_isomorphism(ds.structure, FiniteStructure.digraph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])) is not None
    assert parts_of(ds) == [[0, 2], [1, 3]]
    assert ds.phi == {0: 1, 1: 2, 2: 3, 3: 0}


def test_multipartite_arrow():
    ds = build_reduction_multipartite(ARROW, 2, 0)
    parts = parts_of(ds)
    assert len(ds) == 8 and [len(p) for p in parts] == [4, 4]
    assert is_complete_multipartite(ds.structure, parts)
    assert len(ds.structure.edges) == 16
    assert brute_force_isomorphism(recover_base_digraph(ds), ARROW) is not None


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("T", [POINT, ARROW])
def test_multipartite_levels(T, n):
    ds = build_reduction_multipartite(T, n, 1, 2)
    parts = parts_of(ds)
    for k in range(len(ds.levels)):
        sub = ds.level_structure(k)
        assert is_complete_multipartite(sub, [[v for v in p if v in sub.vertices] for p in parts])
    where = {v: i for i, p in enumerate(parts) for v in p}
    for v in ds.vertices:
        want = {0: 1, 1: 0}.get(where[v], where[v])
        assert where[ds.phi[v]] == want
    assert brute_force_isomorphism(recover_base_digraph(ds), T) is not None


def test_multipartite_rejects_small_n():
    with pytest.raises(InputError):
        build_reduction_multipartite(POINT, 1)


# -- hat


def test_hat_empty():
    h = build_hat(transitive_tournament(0))
    assert len(h) == 2 and not h.edges


def test_hat_point():
    h = build_hat(POINT)
    assert len(h) == 4
    # a=0, p=1, a-bar=2, p-bar=3
    assert {(0, 1), (2, 3), (3, 0), (1, 2)} == set(h.edges)
    assert verify_automorphism(h, hat_swap(POINT))


def test_hat_cross_rule():
    T = c3()
    h = build_hat(T)
    t = len(T)
    ext = {v: v + 1 for v in range(t)}
    first = [0] + [ext[v] for v in range(t)]
    for x in first:
        for y in first:
            if x != y:
                assert ((x, y + t + 1) in h.edges) == ((y, x) in h.edges)


def test_hat_lift_examples():
    T = c3()
    ident = {v: v for v in T.vertices}
    assert hat_lift(T, ident) == {v: v for v in range(8)}
    assert hat_lift(T, ident, True) == hat_swap(T)
    with pytest.raises(InputError):
        hat_lift(T, {0: 1, 1: 0, 2: 2})


@pytest.mark.parametrize("T", [c3(), transitive_tournament(3)])
def test_hat_lift_preserves_conjugacy(T):
    h = build_hat(T)
    auts = automorphisms(T)
    for phi, psi, delta in itertools.product(auts, repeat=3):
        if verify_conjugacy_witness(phi, psi, delta):
            for swap in (False, True):
                lp, lq, ld = hat_lift(T, phi, swap), hat_lift(T, psi, swap), hat_lift(T, delta)
                assert verify_automorphism(h, lp)
                assert verify_conjugacy_witness(lp, lq, ld)


@settings(max_examples=15)
@given(st.data())
def test_transport_in_free_and_multipartite(data):
    T = data.draw(st.sampled_from(small_tournaments(3)))
    alpha0 = data.draw(permutations_of(T.vertices))
    T2 = T.relabel(alpha0)
    for build in (lambda t: build_reduction_In_free(t, 3, 1, 1),
                  lambda t: build_reduction_multipartite(t, 3, 1, 1)):
        src, dst = build(T), build(T2)
        alpha = transport(src, dst, alpha0)
        assert alpha is not None
        assert {(alpha[u], alpha[v]) for u, v in src.structure.edges} == dst.structure.edges
        assert all(alpha[src.phi[v]] == dst.phi[alpha[v]] for v in src.vertices)


def test_base_symmetries_lift_to_automorphisms():
    ds = build_reduction_tournament(c3(), 1, 1)
    for sigma in automorphisms(c3()):
        lifted = transport(ds, ds, sigma)
        assert verify_automorphism(ds.structure, lifted)
        assert compose(lifted, ds.phi) == compose(ds.phi, lifted)
