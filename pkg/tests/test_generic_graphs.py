import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conjforge.core import (FiniteStructure, brute_force_isomorphism, check_one_point_extension,
                            complete_graph, edgeless, is_Kn_free, isomorphism_types,
                            verify_automorphism)
from conjforge.errors import InputError, InvariantViolation
from conjforge.generic_graphs import (admissible_subsets, build_delta0_graph, build_reduction_graph,
                                      extend_level_graph, recover_base_graph, recovery_set_graph)
from conjforge.layered import (Origin, layered_from_json, layered_to_dot, layered_to_json,
                               quotient, transport)

from strategies import permutations_of

POINT = FiniteStructure.graph([0], [])
EDGE = FiniteStructure.graph([0, 1], [(0, 1)])
EMPTY = FiniteStructure.graph([], [])


def triangle_free_graphs(max_size):
    for k in range(max_size + 1):
        for g in isomorphism_types("graph", k):
            if is_Kn_free(g, 3):
                yield g


def test_delta0_examples():
    ds = build_delta0_graph(EMPTY)
    assert len(ds) == 0 and ds.phi == {}
    ds = build_delta0_graph(POINT)
    assert ds.structure == complete_graph(2)
    assert ds.phi == {0: 1, 1: 0}
    ds = build_delta0_graph(EDGE)
    assert len(ds) == 4 and is_Kn_free(ds.structure, 3)
    # letter-major ids: u0=0, u1=1, v0=2, v1=3
    assert ds.structure.edges == FiniteStructure.graph(range(4), [(0, 2), (1, 3), (0, 1), (2, 3)]).edges
    assert ds.phi == {0: 1, 1: 0, 2: 3, 3: 2}


def test_extension_counts():
    assert len(extend_level_graph(build_delta0_graph(POINT), 3, None)) == 5
    assert len(extend_level_graph(build_delta0_graph(EDGE), 3, None)) == 11
    one = extend_level_graph(build_delta0_graph(EMPTY), 3, None)
    assert len(one) == 1 and not one.structure.edges


def test_extension_rejects_negative_cap():
    with pytest.raises(InputError):
        extend_level_graph(build_delta0_graph(POINT), 3, -1)
    with pytest.raises(InputError):
        extend_level_graph(build_delta0_graph(POINT), 2, 1)


def test_reduction_examples():
    ds = build_reduction_graph(EDGE, 3, 1, 3)
    assert len(ds) == 11 and is_Kn_free(ds.structure, 3) and ds.verify()
    assert len(build_reduction_graph(EDGE, 3, 0)) == 4
    with pytest.raises(InputError):
        build_reduction_graph(complete_graph(3), 3)


def test_recover_examples():
    assert brute_force_isomorphism(recover_base_graph(build_reduction_graph(EDGE, 3, 1, 3)), EDGE) is not None
    ident = {v: v for v in range(3)}
    assert len(recover_base_graph(edgeless("graph", 3), ident)) == 0
    with pytest.raises(InputError):
        recover_base_graph(EDGE, {0: 0, 1: 0})


def test_new_vertex_adjacent_exactly_to_subset():
    ds = build_reduction_graph(FiniteStructure.graph(range(3), [(0, 1)]), 3, 1, 2)
    for v in ds.levels[1]:
        assert set(ds.structure.out_neighbors(v)) == set(ds.origins[v].subset)


def test_unbounded_clique_size():
    ds = build_reduction_graph(complete_graph(3), None, 1, 2)
    assert ds.verify()
    assert len(ds.levels[1]) == 1 + 6 + 15


@pytest.mark.parametrize("g", list(triangle_free_graphs(5)), ids=lambda g: f"v{len(g)}e{len(g.edges) // 2}")
def test_round_trip_and_orbit_edges(g):
    levels = 1 if len(g) <= 4 else 0
    ds = build_reduction_graph(g, 3, levels, 3 if len(g) <= 4 else 2)
    if len(g) > 4:
        ds = extend_level_graph(ds, 3, 2)
    s, phi = ds.structure, ds.phi
    assert is_Kn_free(s, 3)
    for v in s.vertices:
        assert s.adjacent(v, phi[v]) == (ds.level_of(v) == 0)
    for block in ds.levels:
        assert sorted(phi[v] for v in block) == sorted(block)
    assert all(phi[phi[v]] == v for v in ds.levels[0])
    assert sorted(recovery_set_graph(s, phi)) == sorted(ds.levels[0])
    assert brute_force_isomorphism(recover_base_graph(ds), g) is not None


def test_every_capped_extension_has_a_witness():
    g = FiniteStructure.graph(range(3), [(0, 1), (1, 2)])
    ds = build_reduction_graph(g, 3, 1, 3)
    level0 = list(ds.levels[0])
    d0 = ds.level_structure(0)
    for s in admissible_subsets(d0, 3, 3):
        spec = {u: "adjacent" if u in s else "none" for u in level0}
        w = check_one_point_extension(ds.structure, level0, spec)
        assert w is not None and ds.origins[w].subset == s


def test_level_structure_is_induced():
    ds = build_reduction_graph(EDGE, 3, 2, 1)
    assert ds.level_structure(0) == build_delta0_graph(EDGE).structure
    assert len(ds.level_structure(1)) == len(ds.levels[0]) + len(ds.levels[1])


@settings(max_examples=25)
@given(st.data())
def test_functoriality(data):
    k = data.draw(st.integers(0, 4))
    g = data.draw(st.sampled_from([h for h in isomorphism_types("graph", k) if is_Kn_free(h, 3)]))
    alpha0 = data.draw(permutations_of(g.vertices))
    h = g.relabel(alpha0)
    src = build_reduction_graph(g, 3, 1, 2)
    dst = build_reduction_graph(h, 3, 1, 2)
    alpha = transport(src, dst, alpha0)
    assert alpha is not None
    assert {(alpha[u], alpha[v]) for u, v in src.structure.edges} == dst.structure.edges
    assert all(alpha[src.phi[v]] == dst.phi[alpha[v]] for v in src.vertices)


def test_recovery_separates_types():
    gs = list(triangle_free_graphs(4))
    outs = [recover_base_graph(build_reduction_graph(g, 3, 1, 3)) for g in gs]
    for (i, a), (j, b) in itertools.product(enumerate(outs), repeat=2):
        assert (brute_force_isomorphism(a, b) is not None) == (i == j)


def test_quotient_rejects_ambiguous_edge_rule():
    s = FiniteStructure.graph(range(4), [(0, 2)])
    phi = {0: 1, 1: 0, 2: 3, 3: 2}
    assert verify_automorphism(FiniteStructure.graph(range(4), [(0, 2), (1, 3)]), phi)
    with pytest.raises(InvariantViolation, match="ambiguous"):
        quotient(s, phi, range(4), "graph")


def test_json_and_dot():
    ds = build_reduction_graph(EDGE, 3, 1, 2)
    data = layered_to_json(ds)
    assert data["levels"][1]["created_from"][0] == []
    back = layered_from_json(data)
    assert back == ds
    assert "fillcolor=palegreen" in layered_to_dot(ds)
    with pytest.raises(InputError):
        layered_from_json({"mode": "nope"})


def test_origin_json_round_trip():
    for o in (Origin(0, letter=3, copy=1), Origin(2, subset=(1, 4), nonadjacent=(2,), part=1, twin=1)):
        assert Origin.from_json(o.to_json()) == o
