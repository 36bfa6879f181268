"""Layered constructions for the generic tournament, I_n-free digraphs,
forbidden-tournament digraphs and generic complete n-partite digraphs,
plus the hat tournaments ``T^``.

Level 0 satisfies ``x -> phi(x)`` everywhere while every nontrivial new
orbit is closed into a cycle with ``phi(x) -> x``.  That asymmetry is what
lets :func:`recover_base_digraph` find level 0 again.
"""
from __future__ import annotations

import itertools

from .core import (DIGRAPH, TOURNAMENT, FiniteStructure, canonical_order, embeds_tournament,
                   embeds_tournament_through, independent_set_free, is_In_free,
                   structure_from_json, structure_to_json, verify_automorphism)
from .errors import InputError, InvariantViolation
from .layered import Builder, LayeredStructure, Origin, check_map, quotient


def _check_tournament(T):
    if T.kind != TOURNAMENT:
        raise InputError("expected a tournament")


def _check_levels(levels, cap):
    if levels < 0:
        raise InputError("levels must be nonnegative")
    if cap is not None and cap < 0:
        raise InputError("cap must be nonnegative")


def _subsets(vs, cap):
    top = len(vs) if cap is None else min(cap, len(vs))
    for size in range(top + 1):
        yield from itertools.combinations(vs, size)


def _cyclic_delta0(mode, base, copies, kind, cross, part_of=None):
    b = Builder(mode, base, kind)
    ids = b.add_level0(copies, canonical_order(base), lambda c: (c + 1) % copies, part_of)
    for x in base.vertices:
        for c in range(copies):
            b.add_edge(ids[(x, c)], ids[(x, (c + 1) % copies)])
    for x, y in base.edges:
        for i, j in cross:
            b.add_edge(ids[(x, i)], ids[(y, j)])
    return b


def _old_edges(b, block, outside):
    """``s -> x`` for ``s`` in the creating subset, ``x -> a`` for the rest of ``outside(x)``."""
    for v in block:
        o = b.origins[v]
        for s in o.subset:
            b.add_edge(s, v)
        for a in outside(o):
            b.add_edge(v, a)


def _close_orbits_and_order(b, block):
    """Cycles ``phi(x) -> x`` inside orbits; orbits oriented by :meth:`Builder.orientation`."""
    orbs = b.orbits_of(block)
    for orb in orbs:
        if len(orb) > 1:
            for x in orb:
                b.add_edge(b.phi[x], x)
    for i, j in b.orientation(orbs):
        for x in orbs[i]:
            for y in orbs[j]:
                b.add_edge(x, y)


def _finish(b: Builder, kind=None) -> LayeredStructure:
    ds = b.freeze()
    if kind:
        ds = LayeredStructure(ds.mode, ds.base, FiniteStructure(kind, ds.structure.vertices, ds.structure.edges),
                              ds.phi, ds.origins, ds.levels, ds.parts, ds.skipped)
    if not ds.verify():
        raise InvariantViolation("propagated map is not an automorphism")
    return ds


# -- generic tournament -----------------------------------------------------------

_NINE = [(i, j) for i in range(3) for j in range(3)]


def build_tournament_delta0(T: FiniteStructure) -> LayeredStructure:
    _check_tournament(T)
    return _finish(_cyclic_delta0("tournament", T, 3, TOURNAMENT, _NINE))


def extend_tournament_level(ds: LayeredStructure, cap=1) -> LayeredStructure:
    if ds.mode not in ("tournament", "inFree"):
        raise InputError("tournament extension needs a tournament-mode structure")
    return extend_In_free_level(ds, None, cap)


def build_reduction_tournament(T: FiniteStructure, levels: int = 1, cap=1) -> LayeredStructure:
    _check_levels(levels, cap)
    ds = build_tournament_delta0(T)
    for _ in range(levels):
        ds = extend_tournament_level(ds, cap)
    return ds


# -- I_n-free digraphs ----------------------------------------------------------------

def extend_In_free_level(ds: LayeredStructure, n, cap) -> LayeredStructure:
    """One level of pairs ``(S, S')``: ``S -> x``, ``x`` unrelated to ``S'``, ``x -> a`` otherwise.

    ``n=None`` admits only ``S' = {}`` (the tournament case).  ``S'`` must
    span no independent set of size ``n - 1`` and ``|S| + |S'| <= cap``.
    """
    _check_levels(0, cap)
    b = Builder.resume(ds)
    level = len(b.levels)
    host = ds.structure
    vs = sorted(host.vertices)
    found = []
    for total in _subsets(vs, cap):
        if n is None:
            found.append(Origin(level, subset=total))
            continue
        for r in range(len(total) + 1):
            for s_prime in itertools.combinations(total, r):
                if r >= n - 1 and not independent_set_free(host, s_prime, n - 1):
                    continue
                s = tuple(v for v in total if v not in s_prime)
                found.append(Origin(level, subset=s, nonadjacent=s_prime))
    block = b.add_level(found, lambda o: Origin(level, subset=b.map_set(o.subset),
                                                nonadjacent=b.map_set(o.nonadjacent)))
    _old_edges(b, block, lambda o: [a for a in vs if a not in o.subset and a not in o.nonadjacent])
    _close_orbits_and_order(b, block)
    return _finish(b, DIGRAPH if n is not None else TOURNAMENT)


def build_reduction_In_free(T: FiniteStructure, n: int, levels: int = 1, cap=1) -> LayeredStructure:
    _check_tournament(T)
    if not isinstance(n, int) or n < 2:
        raise InputError("n must be an integer >= 2")
    _check_levels(levels, cap)
    b = _cyclic_delta0("inFree", T, 3, DIGRAPH, _NINE)
    ds = _finish(b)
    for _ in range(levels):
        ds = extend_In_free_level(ds, n, cap)
        if not is_In_free(ds.structure, n):
            raise InvariantViolation(f"construction produced I_{n}")
    return ds


# -- forbidden tournaments ---------------------------------------------------------

def check_family(F) -> tuple:
    F = tuple(F)
    for P in F:
        if P.kind != TOURNAMENT or len(P) < 3:
            raise InputError("forbidden family members must be tournaments on >= 3 vertices")
    return F


def family_to_json(F) -> list:
    return [structure_to_json(P) for P in F]


def family_from_json(data) -> tuple:
    return check_family(structure_from_json(d) for d in data)


def _creates_copy(F, host, v) -> bool:
    return any(embeds_tournament_through(P, host, v) for P in F)


def extend_forbidden_level(ds: LayeredStructure, F, cap) -> LayeredStructure:
    """Provisional ``S -> x``, ``x -> a`` otherwise; skipped when ``x`` would complete a member of ``F``.

    Orbits of size 4 are closed into ``C_4`` with ``phi(x) -> x`` when that
    completes no member of ``F``; other new pairs stay non-adjacent.
    """
    F = check_family(F)
    _check_levels(0, cap)
    b = Builder.resume(ds)
    level = len(b.levels)
    host = ds.structure
    vs = sorted(host.vertices)
    probe = len(vs)
    found = []
    for s in _subsets(vs, cap):
        edges = set(host.edges)
        edges.update((u, probe) for u in s)
        edges.update((probe, a) for a in vs if a not in s)
        trial = FiniteStructure(DIGRAPH, tuple(vs) + (probe,), frozenset(edges))
        if F and _creates_copy(F, trial, probe):
            b.skipped.append((level, s))
            continue
        found.append(Origin(level, subset=s))
    block = b.add_level(found, lambda o: Origin(level, subset=b.map_set(o.subset)))
    _old_edges(b, block, lambda o: [a for a in vs if a not in o.subset])
    for orb in b.orbits_of(block):
        if len(orb) != 4:
            continue
        cycle = [(b.phi[x], x) for x in orb]
        b.edges.update(cycle)
        if F and _creates_copy(F, b.structure(), orb[0]):
            b.edges.difference_update(cycle)
    return _finish(b)


def build_reduction_forbidden(G: FiniteStructure, F, levels: int = 1, cap=2) -> LayeredStructure:
    if G.kind not in (DIGRAPH, TOURNAMENT):
        raise InputError("expected a digraph")
    F = check_family(F)
    _check_levels(levels, cap)
    G = FiniteStructure(DIGRAPH, G.vertices, G.edges)
    if any(embeds_tournament(P, G) for P in F):
        raise InputError("base digraph already embeds a forbidden tournament")
    ds = _finish(_cyclic_delta0("forbidden", G, 4, DIGRAPH, [(i, i) for i in range(4)]))
    for _ in range(levels):
        ds = extend_forbidden_level(ds, F, cap)
    if any(embeds_tournament(P, ds.structure) for P in F):
        raise InvariantViolation("construction embeds a forbidden tournament")
    return ds


# -- complete n-partite ------------------------------------------------------------

_EIGHT = [(2 * i, 2 * j + 1) for i in range(2) for j in range(2)] + \
         [(2 * i + 1, 2 * j) for i in range(2) for j in range(2)]


def _sigma(i: int) -> int:
    return 1 - i if i < 2 else i


def extend_multipartite_level(ds: LayeredStructure, cap) -> LayeredStructure:
    """New points of part ``i`` for each ``S`` missing ``A_i``: ``S -> x``, ``x -> a`` off ``S`` and ``A_i``.

    Keys of period 2 under phi (a swap between ``A_0`` and ``A_1``) get two
    twins so that their orbit has size 4 and can carry ``phi(x) -> x``.
    """
    _check_levels(0, cap)
    n = ds.parts
    b = Builder.resume(ds)
    level = len(b.levels)
    host = ds.structure
    vs = sorted(host.vertices)
    part = {v: o.part for v, o in enumerate(ds.origins)}
    found = []
    for i in range(n):
        allowed = [v for v in vs if part[v] != i]
        for s in _subsets(allowed, cap):
            o = Origin(level, subset=s, part=i)
            if i < 2 and b.map_set(b.map_set(s)) == s:
                found += [o, Origin(level, subset=s, part=i, twin=1)]
            else:
                found.append(o)

    def image(o):
        s = b.map_set(o.subset)
        twin = o.twin
        if o.part < 2 and b.map_set(s) == o.subset and o.part == 1:
            twin = 1 - twin
        return Origin(level, subset=s, part=_sigma(o.part), twin=twin)

    block = b.add_level(found, image)
    by_vertex = b.origins
    _old_edges(b, block, lambda o: [a for a in vs if a not in o.subset and part[a] != o.part])
    orbs = b.orbits_of(block)
    for orb in orbs:
        if len(orb) > 1 and by_vertex[orb[0]].part < 2:
            for x in orb:
                b.add_edge(b.phi[x], x)
    for i, j in b.orientation(orbs):
        for x in orbs[i]:
            px = by_vertex[x].part
            for y in orbs[j]:
                py = by_vertex[y].part
                if px == py:
                    continue
                if px < 2 and py < 2:
                    b.add_edge(x, y)
                elif px < py:
                    b.add_edge(x, y)
                else:
                    b.add_edge(y, x)
    return _finish(b)


def build_reduction_multipartite(T: FiniteStructure, n: int = 2, levels: int = 1, cap=2) -> LayeredStructure:
    _check_tournament(T)
    if not isinstance(n, int) or n < 2:
        raise InputError("n must be an integer >= 2")
    _check_levels(levels, cap)
    b = _cyclic_delta0("multipartite", T, 4, DIGRAPH, _EIGHT, part_of=lambda c: c % 2)
    b.parts = n
    ds = _finish(b)
    for _ in range(levels):
        ds = extend_multipartite_level(ds, cap)
    return ds


def parts_of(ds: LayeredStructure) -> list:
    out = [[] for _ in range(ds.parts)]
    for v, o in enumerate(ds.origins):
        out[o.part].append(v)
    return out


def is_complete_multipartite(s: FiniteStructure, parts) -> bool:
    """Parts independent and every cross-part pair adjacent."""
    where = {v: i for i, p in enumerate(parts) for v in p}
    if sorted(where) != sorted(s.vertices):
        return False
    for u, v in itertools.combinations(s.vertices, 2):
        if (where[u] == where[v]) == s.adjacent(u, v):
            return False
    return True


# -- hat tournaments -------------------------------------------------------------------

def build_hat(T: FiniteStructure) -> FiniteStructure:
    """Two copies of ``a -> T`` with reversed cross edges; ``x`` and ``x-bar`` unrelated.

    Ids: ``a = 0``, ``T`` at ``1..t`` (sorted), ``a-bar = t+1``, ``T-bar`` at ``t+2..2t+1``.
    """
    _check_tournament(T)
    ext, bar = hat_ids(T)
    t = len(T)
    inner = set()
    for u, v in T.edges:
        inner.add((ext[u], ext[v]))
    for v in T.vertices:
        inner.add((0, ext[v]))
    edges = set()
    for x, y in inner:
        edges.update({(x, y), (bar[x], bar[y]), (bar[y], x), (y, bar[x])})
    return FiniteStructure(DIGRAPH, tuple(range(2 * t + 2)), frozenset(edges))


def hat_ids(T: FiniteStructure):
    """``(ext, bar)``: ids of ``T u {a}`` in the first copy, and the bar map on those ids."""
    order = sorted(T.vertices)
    t = len(order)
    ext = {v: i + 1 for i, v in enumerate(order)}
    bar = {i: i + t + 1 for i in range(t + 1)}
    return ext, bar


def hat_swap(T: FiniteStructure) -> dict:
    t = len(T)
    return {v: (v + t + 1) % (2 * t + 2) for v in range(2 * t + 2)}


def hat_lift(T: FiniteStructure, phi: dict, with_swap: bool = False) -> dict:
    """``phi`` acting on both copies (fixing ``a`` and ``a-bar``), composed with the swap if asked."""
    if not verify_automorphism(T, phi):
        raise InputError("phi is not an automorphism of T")
    ext, bar = hat_ids(T)
    t = len(T)
    lifted = {0: 0, t + 1: t + 1}
    for v, w in phi.items():
        lifted[ext[v]] = ext[w]
        lifted[bar[ext[v]]] = bar[ext[w]]
    if with_swap:
        swap = hat_swap(T)
        lifted = {v: swap[lifted[v]] for v in lifted}
    return lifted


# -- recovery ----------------------------------------------------------------------------

def recovery_set_digraph(s: FiniteStructure, phi: dict) -> list:
    return [x for x in s.vertices if (x, phi[x]) in s.edges]


def recover_base_digraph(s, phi: dict | None = None) -> FiniteStructure:
    """Quotient of ``{x : x -> phi(x)}`` by the phi-orbits.

    A layered input recovers to the kind of its base; a bare digraph comes
    back as a tournament whenever the quotient is total.
    """
    kind = TOURNAMENT
    if isinstance(s, LayeredStructure):
        kind = s.base.kind
        s, phi = s.structure, s.phi if phi is None else phi
    if s.kind not in (DIGRAPH, TOURNAMENT):
        raise InputError("expected a digraph")
    check_map(s, phi)
    return quotient(s, phi, recovery_set_digraph(s, phi), kind)
