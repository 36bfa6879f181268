"""Finite relational structures and the exhaustive oracles built on them.

A :class:`FiniteStructure` is a finite graph, digraph, tournament or linear
order on an explicit, ordered vertex domain.  Vertex maps (isomorphisms,
automorphisms, conjugators) are plain ``dict[int, int]``.  All searches
walk the domain in its stored order, so witnesses are reproducible.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import search
from .errors import InputError, InvariantViolation

GRAPH = "graph"
DIGRAPH = "digraph"
TOURNAMENT = "tournament"
LINEAR_ORDER = "linearOrder"
KINDS = (GRAPH, DIGRAPH, TOURNAMENT, LINEAR_ORDER)

VertexMap = dict  # dict[int, int]

_SPEC_CHOICES = {
    GRAPH: {"adjacent", "none"},
    DIGRAPH: {"toward", "away", "none"},
    TOURNAMENT: {"toward", "away"},
    LINEAR_ORDER: {"toward", "away"},
}


@dataclass(frozen=True)
class FiniteStructure:
    kind: str
    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset((u, v) for u, v in self.edges))
        self._validate()

    def _validate(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown structure kind {self.kind!r}")
        vs = self.vertices
        if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in vs):
            raise InvariantViolation("vertex ids must be nonnegative integers")
        if len(set(vs)) != len(vs):
            raise InvariantViolation("duplicate vertex ids")
        dom = set(vs)
        for u, v in self.edges:
            if u not in dom or v not in dom:
                raise InvariantViolation(f"edge ({u}, {v}) leaves the domain")
            if u == v:
                raise InvariantViolation(f"irreflexive: loop at {u}")
        if self.kind == GRAPH:
            for u, v in self.edges:
                if (v, u) not in self.edges:
                    raise InvariantViolation(f"graph edges must be symmetric: ({u}, {v})")
            return
        for u, v in self.edges:
            if (v, u) in self.edges:
                raise InvariantViolation(f"antisymmetric: both ({u}, {v}) and ({v}, {u})")
        if self.kind in (TOURNAMENT, LINEAR_ORDER):
            for u, v in itertools.combinations(vs, 2):
                if (u, v) not in self.edges and (v, u) not in self.edges:
                    raise InvariantViolation(f"total: pair {{{u}, {v}}} is not oriented")
        if self.kind == LINEAR_ORDER:
            for u, v in self.edges:
                for w in vs:
                    if (v, w) in self.edges and (u, w) not in self.edges:
                        raise InvariantViolation(f"transitive: {u}<{v}<{w} but not {u}<{w}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def graph(cls, vertices: Iterable[int], edges: Iterable[tuple]) -> FiniteStructure:
        sym = set()
        for u, v in edges:
            sym.add((u, v))
            sym.add((v, u))
        return cls(GRAPH, tuple(vertices), frozenset(sym))

    @classmethod
    def digraph(cls, vertices, edges) -> FiniteStructure:
        return cls(DIGRAPH, tuple(vertices), frozenset(edges))

    @classmethod
    def tournament(cls, vertices, edges) -> FiniteStructure:
        return cls(TOURNAMENT, tuple(vertices), frozenset(edges))

    @classmethod
    def linear_order(cls, chain: Iterable[int]) -> FiniteStructure:
        """The order ``chain[0] < chain[1] < ...``, domain sorted by id."""
        chain = list(chain)
        edges = {(chain[i], chain[j]) for i in range(len(chain)) for j in range(i + 1, len(chain))}
        return cls(LINEAR_ORDER, tuple(sorted(chain)), frozenset(edges))

    # -- queries ------------------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def rows(self) -> list:
        """Bitmask rows of the edge relation, indexed by domain position."""
        idx = self.index
        rows = [0] * len(self.vertices)
        for u, v in self.edges:
            rows[idx[u]] |= 1 << idx[v]
        return rows

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edges

    def adjacent(self, u, v) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def out_neighbors(self, u) -> list:
        return [v for v in self.vertices if (u, v) in self.edges]

    def induced(self, subset: Iterable[int]) -> FiniteStructure:
        keep = set(subset)
        vs = tuple(v for v in self.vertices if v in keep)
        es = frozenset((u, v) for u, v in self.edges if u in keep and v in keep)
        return FiniteStructure(self.kind, vs, es)

    def relabel(self, mapping: Mapping[int, int]) -> FiniteStructure:
        """Image of the structure under the bijection ``mapping``; domain sorted."""
        return FiniteStructure(
            self.kind,
            tuple(sorted(mapping[v] for v in self.vertices)),
            frozenset((mapping[u], mapping[v]) for u, v in self.edges),
        )

    def order(self) -> list:
        """Vertices of a linear order from least to greatest."""
        if self.kind != LINEAR_ORDER:
            raise InputError("order() needs a linear order")
        below = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            below[v] += 1
        return sorted(self.vertices, key=below.__getitem__)


def relabel(s: FiniteStructure, p: Mapping[int, int]) -> FiniteStructure:
    return s.relabel(p)


# -- exhaustive isomorphism / conjugacy ---------------------------------------

def _map_from(a: FiniteStructure, b: FiniteStructure, image) -> dict:
    return {a.vertices[i]: b.vertices[j] for i, j in enumerate(image)}


def isomorphisms(a: FiniteStructure, b: FiniteStructure, limit: int = 0) -> list:
    """All isomorphisms ``a -> b`` in lexicographic search order."""
    if a.kind != b.kind:
        raise InputError(f"kind mismatch: {a.kind} vs {b.kind}")
    found = search.find_maps([a.rows], [b.rows], len(a), len(b), True, limit)
    return [_map_from(a, b, img) for img in found]


def brute_force_isomorphism(a: FiniteStructure, b: FiniteStructure) -> dict | None:
    """First isomorphism ``a -> b`` in lexicographic order, or ``None``."""
    found = isomorphisms(a, b, limit=1)
    return found[0] if found else None


def automorphisms(s: FiniteStructure) -> list:
    return isomorphisms(s, s)


def canonical_order(s: FiniteStructure) -> list:
    """Vertices listed so that isomorphic structures get identical adjacency codes.

    Orderings are restricted to ones sorted by (out-degree, in-degree), an
    isomorphism-invariant family, and the least row-major code wins.
    """
    indeg = {v: 0 for v in s.vertices}
    for _, v in s.edges:
        indeg[v] += 1
    deg = {v: (len(s.out_neighbors(v)), indeg[v]) for v in s.vertices}
    ranked = sorted(s.vertices, key=lambda v: (deg[v], v))
    classes = [list(g) for _, g in itertools.groupby(ranked, key=deg.get)]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for p in parts for v in p]
        code = tuple((u, v) in s.edges for u in order for v in order)
        if best is None or code < best[0]:
            best = (code, order)
    return best[1] if best else []


def _graph_rows(s: FiniteStructure, f: Mapping[int, int]) -> list:
    idx = s.index
    rows = [0] * len(s)
    for u, v in f.items():
        rows[idx[u]] |= 1 << idx[v]
    return rows


def conjugators(s: FiniteStructure, phi: Mapping, psi: Mapping, limit: int = 0) -> list:
    """Automorphisms ``d`` of ``s`` with ``d . phi = psi . d``.

    Searches isomorphisms between the expansions ``(s, graph(phi))`` and
    ``(s, graph(psi))``, which are exactly such conjugators.
    """
    a = [s.rows, _graph_rows(s, phi)]
    b = [s.rows, _graph_rows(s, psi)]
    found = search.find_maps(a, b, len(s), len(s), True, limit)
    return [_map_from(s, s, img) for img in found]


def brute_force_conjugacy(s: FiniteStructure, phi: Mapping, psi: Mapping) -> dict | None:
    found = conjugators(s, phi, psi, limit=1)
    return found[0] if found else None


# -- structural predicates ------------------------------------------------------

def _has_clique(rows: list, k: int, cand: int) -> bool:
    if k == 0:
        return True
    if bin(cand).count("1") < k:
        return False
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _has_clique(rows, k - 1, cand & rows[v]):
            return True
        if bin(cand).count("1") < k:
            return False
    return False


def _adjacency_rows(s: FiniteStructure) -> list:
    rows = list(s.rows)
    for i, r in enumerate(s.rows):
        x = r
        while x:
            low = x & -x
            rows[low.bit_length() - 1] |= 1 << i
            x ^= low
    return rows


def is_Kn_free(g: FiniteStructure, n: int) -> bool:
    """True iff no ``n`` vertices of the graph are pairwise adjacent."""
    if g.kind != GRAPH:
        raise InputError("is_Kn_free needs a graph")
    if n < 2:
        raise InputError("n must be at least 2")
    return not _has_clique(g.rows, n, (1 << len(g)) - 1)


def is_In_free(d: FiniteStructure, n: int) -> bool:
    """True iff no ``n`` vertices are pairwise non-adjacent (in either direction)."""
    if d.kind not in (DIGRAPH, TOURNAMENT):
        raise InputError("is_In_free needs a digraph or tournament")
    if n < 2:
        raise InputError("n must be at least 2")
    full = (1 << len(d)) - 1
    comp = [full & ~r & ~(1 << i) for i, r in enumerate(_adjacency_rows(d))]
    return not _has_clique(comp, n, full)


def independent_set_free(d: FiniteStructure, vertices: Iterable[int], size: int) -> bool:
    """True iff ``vertices`` contains no ``size`` pairwise non-adjacent vertices."""
    if size <= 0:
        return False
    idx = d.index
    full = (1 << len(d)) - 1
    comp = [full & ~r & ~(1 << i) for i, r in enumerate(_adjacency_rows(d))]
    cand = 0
    for v in vertices:
        cand |= 1 << idx[v]
    return not _has_clique(comp, size, cand)


def clique_free(g: FiniteStructure, vertices: Iterable[int], size: int) -> bool:
    """True iff ``vertices`` spans no clique on ``size`` vertices (``size <= 0``: never)."""
    if size <= 0:
        return False
    idx = g.index
    cand = 0
    for v in vertices:
        cand |= 1 << idx[v]
    return not _has_clique(g.rows, size, cand)


def _check_tournament_pattern(pattern, host):
    if pattern.kind != TOURNAMENT:
        raise InputError("pattern must be a tournament")
    if host.kind not in (DIGRAPH, TOURNAMENT):
        raise InputError("host must be a digraph or tournament")


def embeds_tournament(pattern: FiniteStructure, host: FiniteStructure) -> bool:
    """True iff some injection of ``pattern`` into ``host`` preserves every edge."""
    _check_tournament_pattern(pattern, host)
    return bool(search.find_maps([pattern.rows], [host.rows], len(pattern), len(host), False, 1))


def embeds_tournament_through(pattern: FiniteStructure, host: FiniteStructure, v: int) -> bool:
    """Like :func:`embeds_tournament` but only copies whose image contains ``v``."""
    _check_tournament_pattern(pattern, host)
    j = host.index[v]
    for i in range(len(pattern)):
        if search.find_maps([pattern.rows], [host.rows], len(pattern), len(host), False, 1,
                            forced=(i, j)):
            return True
    return False


def _relation(host: FiniteStructure, s, a) -> str:
    if host.kind == GRAPH:
        return "adjacent" if (s, a) in host.edges else "none"
    if (s, a) in host.edges:
        return "toward"
    if (a, s) in host.edges:
        return "away"
    return "none"


def check_one_point_extension(host: FiniteStructure, s: Iterable[int],
                              extension_spec: Mapping[int, str]) -> int | None:
    """First vertex outside ``s`` whose relation to each ``x`` in ``s`` is ``extension_spec[x]``.

    Relations are ``"toward"`` (``x -> a``), ``"away"`` (``a -> x``),
    ``"adjacent"`` (graphs) and ``"none"`` (non-adjacent).
    """
    s = list(s)
    dom = set(host.vertices)
    if not set(s) <= dom:
        raise InputError("extension base must be a subset of the host domain")
    if set(extension_spec) != set(s):
        raise InputError("extension spec must assign a relation to every element of s")
    allowed = _SPEC_CHOICES[host.kind]
    for x, rel in extension_spec.items():
        if rel not in allowed:
            raise InputError(f"relation {rel!r} is not available in a {host.kind}")
    base = set(s)
    for a in host.vertices:
        if a in base:
            continue
        if all(_relation(host, x, a) == extension_spec[x] for x in s):
            return a
    return None


def verify_automorphism(s: FiniteStructure, f: Mapping[int, int]) -> bool:
    dom = set(s.vertices)
    if set(f) != dom or set(f.values()) != dom:
        return False
    return {(f[u], f[v]) for u, v in s.edges} == s.edges


def verify_conjugacy_witness(phi: Mapping, psi: Mapping, delta: Mapping) -> bool:
    """True iff ``delta . phi == psi . delta`` pointwise."""
    if not (set(phi) == set(psi) == set(delta)):
        raise InputError("conjugacy witness maps must share one domain")
    try:
        return all(delta[phi[x]] == psi[delta[x]] for x in phi)
    except KeyError:
        return False


def compose(f: Mapping, g: Mapping) -> dict:
    """``f . g`` (apply ``g`` first)."""
    return {x: f[g[x]] for x in g}


def inverse(f: Mapping) -> dict:
    return {v: k for k, v in f.items()}


def cycle_type(f: Mapping) -> tuple:
    """Cycle lengths of a permutation, sorted in decreasing order."""
    seen = set()
    lengths = []
    for x in f:
        if x in seen:
            continue
        k = 0
        y = x
        while y not in seen:
            seen.add(y)
            y = f[y]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def orbits(f: Mapping, domain: Iterable[int] | None = None) -> list:
    """Orbits of ``f`` restricted to ``domain``, each sorted, ordered by least element."""
    dom = sorted(f if domain is None else domain)
    keep = set(dom)
    seen = set()
    out = []
    for x in dom:
        if x in seen:
            continue
        orb = []
        y = x
        while y not in seen:
            if y not in keep:
                raise InputError("orbit leaves the given domain")
            seen.add(y)
            orb.append(y)
            y = f[y]
        out.append(sorted(orb))
    return out


# -- small catalogs -------------------------------------------------------------

def complete_graph(n: int) -> FiniteStructure:
    return FiniteStructure.graph(range(n), itertools.combinations(range(n), 2))


def edgeless(kind: str, n: int) -> FiniteStructure:
    return FiniteStructure(kind, tuple(range(n)), frozenset())


def cycle_graph(n: int) -> FiniteStructure:
    return FiniteStructure.graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def c3() -> FiniteStructure:
    return FiniteStructure.tournament(range(3), [(0, 1), (1, 2), (2, 0)])


def transitive_tournament(n: int) -> FiniteStructure:
    return FiniteStructure.tournament(range(n), itertools.combinations(range(n), 2))


def all_labeled(kind: str, n: int) -> Iterator[FiniteStructure]:
    """Every structure of ``kind`` on domain ``0..n-1`` (graphs, digraphs, tournaments)."""
    pairs = list(itertools.combinations(range(n), 2))
    if kind == GRAPH:
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            yield FiniteStructure.graph(range(n), [p for p, b in zip(pairs, bits) if b])
    elif kind == TOURNAMENT:
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            yield FiniteStructure.tournament(
                range(n), [(u, v) if b else (v, u) for (u, v), b in zip(pairs, bits)])
    elif kind == DIGRAPH:
        for states in itertools.product((0, 1, 2), repeat=len(pairs)):
            es = [(u, v) if t == 1 else (v, u) for (u, v), t in zip(pairs, states) if t]
            yield FiniteStructure.digraph(range(n), es)
    else:
        raise InputError(f"cannot enumerate {kind}")


def isomorphism_types(kind: str, n: int) -> list:
    """One representative per isomorphism class, first in enumeration order."""
    reps = []
    for s in all_labeled(kind, n):
        if not any(len(r.edges) == len(s.edges) and brute_force_isomorphism(r, s) is not None
                   for r in reps):
            reps.append(s)
    return reps


# -- serialization ----------------------------------------------------------------

def structure_to_json(s: FiniteStructure) -> dict:
    if s.kind == GRAPH:
        es = sorted((u, v) for u, v in s.edges if u < v)
    else:
        es = sorted(s.edges)
    return {"kind": s.kind, "vertices": list(s.vertices), "edges": [list(e) for e in es]}


def structure_from_json(data: Mapping) -> FiniteStructure:
    try:
        kind = data["kind"]
        vertices = [int(v) for v in data["vertices"]]
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed structure JSON: {exc}") from exc
    if kind == GRAPH:
        return FiniteStructure.graph(vertices, edges)
    return FiniteStructure(kind, tuple(vertices), frozenset(edges))


def map_to_json(f: Mapping) -> list:
    return [[k, f[k]] for k in sorted(f)]


def map_from_json(pairs) -> dict:
    try:
        return {int(a): int(b) for a, b in pairs}
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed map JSON: {exc}") from exc


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def to_dot(s: FiniteStructure, name: str = "G", vertex_attrs: Mapping | None = None) -> str:
    undirected = s.kind == GRAPH
    arrow = "--" if undirected else "->"
    lines = [f"{'graph' if undirected else 'digraph'} {name} {{"]
    for v in s.vertices:
        attrs = (vertex_attrs or {}).get(v)
        lines.append(f"  {v}" + (f" [{attrs}]" if attrs else "") + ";")
    for u, v in sorted(s.edges):
        if undirected and u > v:
            continue
        lines.append(f"  {u} {arrow} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
