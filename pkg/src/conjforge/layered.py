"""Level-by-level constructions carrying a propagated automorphism.

Every construction in :mod:`generic_graphs` and :mod:`generic_digraphs`
starts from a few copies of a base structure (level 0) and repeatedly adds
one vertex per admissible creation key.  The automorphism ``phi`` acts on
keys, so ``phi(x_key) = x_{phi(key)}`` defines its extension uniquely.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .core import (DIGRAPH, GRAPH, TOURNAMENT, FiniteStructure, automorphisms, map_from_json,
                   map_to_json, orbits, structure_from_json, structure_to_json,
                   to_dot, verify_automorphism)
from .errors import InputError, InvariantViolation

MODES = ("graph", "tournament", "inFree", "forbidden", "multipartite")
LEVEL_COLORS = ("lightblue", "palegreen", "khaki", "lightsalmon", "plum", "lightgray")


@dataclass(frozen=True)
class Origin:
    """Provenance of one vertex.

    Level-0 vertices record the base vertex (``letter``) and ``copy`` index;
    later vertices record the creating ``subset`` (and, where the mode uses
    them, the non-adjacent set, the part index and a twin index).
    """

    level: int
    subset: tuple = ()
    letter: int | None = None
    copy: int | None = None
    nonadjacent: tuple = ()
    part: int | None = None
    twin: int = 0

    def key(self) -> tuple:
        if self.level == 0:
            return (0, -1, (self.letter, self.copy), (), 0)
        return (self.level, self.part if self.part is not None else -1,
                self.subset, self.nonadjacent, self.twin)

    def to_json(self) -> dict:
        out = {"level": self.level}
        if self.level == 0:
            out.update(letter=self.letter, copy=self.copy)
        else:
            out["subset"] = list(self.subset)
        if self.nonadjacent:
            out["nonadjacent"] = list(self.nonadjacent)
        if self.part is not None:
            out["part"] = self.part
        if self.twin:
            out["twin"] = self.twin
        return out

    @classmethod
    def from_json(cls, data) -> Origin:
        return cls(level=int(data["level"]), subset=tuple(data.get("subset", ())),
                   letter=data.get("letter"), copy=data.get("copy"),
                   nonadjacent=tuple(data.get("nonadjacent", ())),
                   part=data.get("part"), twin=int(data.get("twin", 0)))


@dataclass(frozen=True)
class LayeredStructure:
    mode: str
    base: FiniteStructure
    structure: FiniteStructure
    phi: dict
    origins: tuple
    levels: tuple
    parts: int = 0
    skipped: tuple = field(default=())

    @property
    def vertices(self) -> tuple:
        return self.structure.vertices

    def __len__(self):
        return len(self.structure)

    def level_of(self, v: int) -> int:
        return self.origins[v].level

    def level_structure(self, k: int) -> FiniteStructure:
        """The induced structure on levels ``0..k``."""
        return self.structure.induced(v for lvl in self.levels[:k + 1] for v in lvl)

    def part_of(self, v: int) -> int | None:
        return self.origins[v].part

    @cached_property
    def by_key(self) -> dict:
        return {o.key(): v for v, o in enumerate(self.origins)}

    def vertex_for(self, level: int, subset=(), nonadjacent=(), part=None, twin=0):
        """Vertex created from the given key, or ``None`` if it was never added."""
        key = (level, part if part is not None else -1, tuple(sorted(subset)),
               tuple(sorted(nonadjacent)), twin)
        return self.by_key.get(key)

    def verify(self) -> bool:
        return verify_automorphism(self.structure, self.phi)


class Builder:
    """Mutable accumulator used while a construction runs."""

    def __init__(self, mode: str, base: FiniteStructure, kind: str):
        self.mode = mode
        self.base = base
        self.kind = kind
        self.origins: list[Origin] = []
        self.edges: set = set()
        self.phi: dict = {}
        self.levels: list[list[int]] = []
        self.parts = 0
        self.skipped: list = []

    @classmethod
    def resume(cls, ds: LayeredStructure) -> Builder:
        b = cls(ds.mode, ds.base, ds.structure.kind)
        b.origins = list(ds.origins)
        b.edges = set(ds.structure.edges)
        b.phi = dict(ds.phi)
        b.levels = [list(lvl) for lvl in ds.levels]
        b.parts = ds.parts
        b.skipped = list(ds.skipped)
        return b

    def add_level0(self, copies: int, letters, phi_copy, part_of=None) -> dict:
        """Letter-major ids ``i * copies + c``; returns ``(letter, copy) -> id``."""
        ids = {}
        block = []
        for i, x in enumerate(letters):
            for c in range(copies):
                v = len(self.origins)
                part = part_of(c) if part_of else None
                self.origins.append(Origin(0, letter=x, copy=c, part=part))
                ids[(x, c)] = v
                block.append(v)
        for (x, c), v in ids.items():
            self.phi[v] = ids[(x, phi_copy(c))]
        self.levels.append(block)
        return ids

    def add_level(self, origins: list, image) -> list:
        """Append one vertex per origin (sorted by key); ``image`` maps an origin to its phi-image."""
        origins = sorted(origins, key=Origin.key)
        start = len(self.origins)
        ids = {o.key(): start + i for i, o in enumerate(origins)}
        self.origins.extend(origins)
        for o in origins:
            target = ids.get(image(o).key())
            if target is None:
                raise InvariantViolation("phi-image of a creation key was not created")
            self.phi[ids[o.key()]] = target
        block = [ids[o.key()] for o in origins]
        self.levels.append(block)
        return block

    def map_set(self, s) -> tuple:
        return tuple(sorted(self.phi[v] for v in s))

    def add_edge(self, u, v):
        self.edges.add((u, v))
        if self.kind == GRAPH:
            self.edges.add((v, u))

    def structure(self, kind: str | None = None) -> FiniteStructure:
        return FiniteStructure(kind or self.kind, tuple(range(len(self.origins))), frozenset(self.edges))

    def orbits_of(self, block) -> list:
        """phi-orbits inside ``block``, ordered by least creation key."""
        orbs = orbits(self.phi, block)
        return sorted(orbs, key=lambda orb: min(self.origins[v].key() for v in orb))

    def symmetries(self) -> list:
        """Automorphisms of the base, lifted key by key to every vertex built so far."""
        index = {o.key(): v for v, o in enumerate(self.origins)}
        out = []
        for sigma in automorphisms(self.base):
            lifted = _lift(self.origins, index, sigma)
            if lifted is None:
                raise InvariantViolation("a base automorphism does not lift to the construction")
            out.append(lifted)
        return out

    def orientation(self, orbs) -> list:
        """Pairs ``(i, j)`` meaning orbit ``i`` beats orbit ``j``, one per pair.

        Orbit pairs are compared by least creation keys, minimized over the
        lifted base symmetries, so every symmetry preserves the choice.  With
        no symmetry this is the lexicographic order of least keys.
        """
        where = {v: i for i, orb in enumerate(orbs) for v in orb}
        least = [min(self.origins[v].key() for v in orb) for orb in orbs]
        acts = [[where[m[orb[0]]] for orb in orbs] for m in self.symmetries()]
        out = []
        for i, j in itertools.combinations(range(len(orbs)), 2):
            fwd = min((least[a[i]], least[a[j]]) for a in acts)
            bwd = min((least[a[j]], least[a[i]]) for a in acts)
            if fwd == bwd:
                raise InvariantViolation("a base symmetry swaps two orbits; no invariant orientation")
            out.append((i, j) if fwd < bwd else (j, i))
        return out

    def freeze(self) -> LayeredStructure:
        return LayeredStructure(self.mode, self.base, self.structure(), dict(self.phi),
                                tuple(self.origins), tuple(tuple(lv) for lv in self.levels),
                                self.parts, tuple(self.skipped))


# -- recovery -------------------------------------------------------------------

def quotient(s: FiniteStructure, phi: dict, keep, kind: str) -> FiniteStructure:
    """Quotient of ``s`` restricted to ``keep`` by the phi-orbits.

    An orbit pair is joined when some representative pair is; this is
    asserted to coincide with every representative of the source orbit
    having a neighbour in the target orbit.
    """
    orbs = orbits(phi, keep)
    edges = set()
    for i, src in enumerate(orbs):
        for j, dst in enumerate(orbs):
            if i == j:
                continue
            hits = [any((u, v) in s.edges for v in dst) for u in src]
            if any(hits) and not all(hits):
                raise InvariantViolation(
                    f"orbit edge rule ambiguous between orbits {i} and {j}: some representatives related, others not")
            if any(hits):
                edges.add((i, j))
    if kind == GRAPH:
        return FiniteStructure.graph(range(len(orbs)), edges)
    if kind == TOURNAMENT:
        total = all((i, j) in edges or (j, i) in edges
                    for i in range(len(orbs)) for j in range(i + 1, len(orbs)))
        if not total:
            kind = DIGRAPH
    return FiniteStructure(kind, tuple(range(len(orbs))), frozenset(edges))


def check_map(s: FiniteStructure, phi: dict):
    if not verify_automorphism(s, phi):
        raise InputError("phi is not an automorphism of the given structure")


# -- serialization --------------------------------------------------------------

def layered_to_json(ds: LayeredStructure) -> dict:
    levels = []
    for block in ds.levels:
        levels.append({"vertices": list(block),
                       "created_from": [list(ds.origins[v].subset) for v in block],
                       "provenance": [ds.origins[v].to_json() for v in block]})
    out = {"mode": ds.mode, "base": structure_to_json(ds.base),
           "structure": structure_to_json(ds.structure), "levels": levels,
           "phi": map_to_json(ds.phi)}
    if ds.parts:
        out["parts"] = ds.parts
    if ds.skipped:
        out["skipped"] = [[lvl, list(sub)] for lvl, sub in ds.skipped]
    return out


def layered_from_json(data) -> LayeredStructure:
    try:
        mode = data["mode"]
        if mode not in MODES:
            raise InputError(f"unknown construction mode {mode!r}")
        base = structure_from_json(data["base"])
        structure = structure_from_json(data["structure"])
        phi = map_from_json(data["phi"])
        origins, levels = [], []
        for lvl in data["levels"]:
            block = [int(v) for v in lvl["vertices"]]
            levels.append(tuple(block))
            origins.extend(Origin.from_json(p) for p in lvl["provenance"])
        skipped = tuple((int(k), tuple(s)) for k, s in data.get("skipped", ()))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed layered structure JSON: {exc}") from exc
    if [v for lvl in levels for v in lvl] != list(range(len(origins))):
        raise InputError("level blocks must list vertices 0..N-1 in order")
    return LayeredStructure(mode, base, structure, phi, tuple(origins), tuple(levels),
                            int(data.get("parts", 0)), skipped)


def layered_to_dot(ds: LayeredStructure, name: str = "Delta") -> str:
    attrs = {}
    for v, o in enumerate(ds.origins):
        color = LEVEL_COLORS[min(o.level, len(LEVEL_COLORS) - 1)]
        attrs[v] = f'style=filled, fillcolor={color}, label="{v}\\nL{o.level}"'
    return to_dot(ds.structure, name, attrs)


def transport(src: LayeredStructure, dst: LayeredStructure, alpha: dict) -> dict | None:
    """Level-wise map induced by a base isomorphism ``alpha``, or ``None`` if a key is missing."""
    return _lift(src.origins, dst.by_key, alpha)


def _lift(origins, index: dict, alpha: dict) -> dict | None:
    out = {}
    for v, o in enumerate(origins):
        if o.level == 0:
            key = (0, -1, (alpha[o.letter], o.copy), (), 0)
        else:
            key = (o.level, o.part if o.part is not None else -1,
                   tuple(sorted(out[s] for s in o.subset)),
                   tuple(sorted(out[s] for s in o.nonadjacent)), o.twin)
        w = index.get(key)
        if w is None:
            return None
        out[v] = w
    return out
