"""Layered copies of the generic K_n-free graph with an automorphism coding a base graph.

Level 0 is two copies of ``G`` joined by a perfect matching, with ``phi``
swapping the copies.  Each later level adds, for every small subset ``S``
spanning no ``K_{n-1}``, a vertex adjacent exactly to ``S``.  The base graph
comes back as the quotient of ``{x : x ~ phi(x)}`` by the orbits of ``phi``.
"""
from __future__ import annotations

import itertools

from .core import GRAPH, FiniteStructure, clique_free, is_Kn_free
from .errors import InputError, InvariantViolation
from .layered import Builder, LayeredStructure, Origin, check_map, quotient


def _check_n(n):
    if n is not None and (not isinstance(n, int) or n < 3):
        raise InputError("n must be an integer >= 3 (or None for no clique bound)")


def build_delta0_graph(G: FiniteStructure) -> LayeredStructure:
    if G.kind != GRAPH:
        raise InputError("expected a graph")
    b = Builder("graph", G, GRAPH)
    ids = b.add_level0(2, sorted(G.vertices), lambda c: 1 - c)
    for u, v in G.edges:
        for c in (0, 1):
            b.add_edge(ids[(u, c)], ids[(v, c)])
    for x in G.vertices:
        b.add_edge(ids[(x, 0)], ids[(x, 1)])
    return b.freeze()


def admissible_subsets(g: FiniteStructure, n, cap):
    """Subsets of ``g`` with at most ``cap`` elements and no ``K_{n-1}``, smallest first."""
    vs = sorted(g.vertices)
    top = len(vs) if cap is None else min(cap, len(vs))
    for size in range(top + 1):
        for s in itertools.combinations(vs, size):
            if n is None or size < n - 1 or clique_free(g, s, n - 1):
                yield s


def extend_level_graph(ds: LayeredStructure, n, cap) -> LayeredStructure:
    _check_n(n)
    if cap is not None and cap < 0:
        raise InputError("cap must be nonnegative")
    b = Builder.resume(ds)
    level = len(b.levels)
    found = [Origin(level, subset=s) for s in admissible_subsets(ds.structure, n, cap)]
    block = b.add_level(found, lambda o: Origin(level, subset=b.map_set(o.subset)))
    for v in block:
        for s in b.origins[v].subset:
            b.add_edge(v, s)
    return b.freeze()


def build_reduction_graph(G: FiniteStructure, n=3, levels: int = 1, cap=3) -> LayeredStructure:
    _check_n(n)
    if G.kind != GRAPH:
        raise InputError("expected a graph")
    if n is not None and not is_Kn_free(G, n):
        raise InputError(f"base graph contains K_{n}")
    if levels < 0:
        raise InputError("levels must be nonnegative")
    ds = build_delta0_graph(G)
    for _ in range(levels):
        ds = extend_level_graph(ds, n, cap)
    if not ds.verify():
        raise InvariantViolation("propagated map is not an automorphism")
    if n is not None and len(ds) and not is_Kn_free(ds.structure, n):
        raise InvariantViolation(f"construction produced a K_{n}")
    return ds


def recovery_set_graph(s: FiniteStructure, phi: dict) -> list:
    return [x for x in s.vertices if (x, phi[x]) in s.edges]


def recover_base_graph(s, phi: dict | None = None) -> FiniteStructure:
    """Quotient of ``{x : x ~ phi(x)}`` by the phi-orbits."""
    if isinstance(s, LayeredStructure):
        s, phi = s.structure, s.phi if phi is None else phi
    if s.kind != GRAPH:
        raise InputError("expected a graph")
    check_map(s, phi)
    return quotient(s, phi, recovery_set_graph(s, phi), GRAPH)
