"""Automorphisms of disjoint unions of complete graphs and their conjugacy invariants.

An automorphism of ``m . K_n`` permutes the copies and maps each copy onto
its image copy.  Following a finite cycle of copies back to its start gives
a permutation of one copy whose cycle type is the *twist type* of the cycle.
The counts of ``(cycle length, twist type)`` classes decide conjugacy, and
matching cycles class by class yields an explicit conjugator.

Infinite ``m`` or ``n`` are handled through finite descriptions: explicit
data on finitely many copies and labels plus a tail convention for the
rest (all fixed, or infinitely many identity 2-cycles of copies).
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

from .core import (DIGRAPH, TOURNAMENT, FiniteStructure, c3, verify_automorphism)
from .errors import InputError, InvariantViolation

INF = math.inf
TAIL_IDENTITY = "identity"
TAIL_ID_2CYCLES = "id_2cycles"
TAILS = (TAIL_IDENTITY, TAIL_ID_2CYCLES)
K = "K"
C3 = "C3"
C3_BLOW = "C3blow"
GRAPHS = (K, C3, C3_BLOW)


def _count_json(x):
    return "inf" if x == INF else x


def _count_from_json(x):
    if x in ("inf", "∞"):
        return INF
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise InputError(f"bad count {x!r}")
    return x


# -- twist types --------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TwistType:
    """Cycle type of a permutation: lengths (descending) and whether the fixed part is cofinite."""

    lengths: tuple
    cofinite: bool = False

    def __post_init__(self):
        lengths = tuple(sorted((int(x) for x in self.lengths), reverse=True))
        if any(x < 1 for x in lengths):
            raise InvariantViolation("cycle lengths must be positive")
        if self.cofinite:
            lengths = tuple(x for x in lengths if x > 1)
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def identity(cls, n) -> TwistType:
        return cls((), True) if n == INF else cls((1,) * n)

    def is_identity(self) -> bool:
        return all(x == 1 for x in self.lengths)

    def __str__(self):
        body = ",".join(map(str, self.lengths))
        return "{" + body + "}" + ("+fix" if self.cofinite else "")

    def to_json(self):
        return {"lengths": list(self.lengths), "cofinite": self.cofinite}

    @classmethod
    def from_json(cls, data) -> TwistType:
        return cls(tuple(data["lengths"]), bool(data.get("cofinite", False)))


@dataclass(frozen=True, order=True)
class Rotation:
    """Twist of a copy of the directed triangle: rotation by ``amount`` steps."""

    amount: int

    def is_identity(self) -> bool:
        return self.amount % 3 == 0

    def __str__(self):
        return f"rot{self.amount}"

    def to_json(self):
        return {"rotation": self.amount}


def _twist_json(t):
    return t.to_json()


def _twist_from_json(data):
    if "rotation" in data:
        return Rotation(int(data["rotation"]))
    return TwistType.from_json(data)


def perm_cycles(perm: dict) -> list:
    """Nontrivial cycles of a finitely supported permutation, each starting at its least element."""
    seen, out = set(), []
    for x in sorted(perm):
        if x in seen or perm[x] == x:
            continue
        cyc = [x]
        seen.add(x)
        y = perm[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = perm[y]
        out.append(cyc)
    return out


def cycle_type_of(perm: dict, n) -> TwistType:
    lengths = [len(c) for c in perm_cycles(perm)]
    if n == INF:
        return TwistType(tuple(lengths), True)
    moved = sum(lengths)
    return TwistType(tuple(lengths) + (1,) * (n - moved))


def perm_from_cycles(cycles) -> dict:
    out = {}
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if a in out:
                raise InputError("cycles overlap")
            out[a] = b
    return out


def realize_twist(t: TwistType, offset: int = 0) -> dict:
    """A permutation of labels ``offset..`` whose cycle type is ``t``."""
    perm, start = {}, offset
    for length in t.lengths:
        for i in range(length):
            perm[start + i] = start + (i + 1) % length
        start += length
    return {x: y for x, y in perm.items() if x != y}


def _rot(r: int) -> dict:
    r %= 3
    return {x: (x + r) % 3 for x in range(3)} if r else {}


def _rotation_of(perm: dict):
    for r in range(3):
        if all(perm.get(x, x) == (x + r) % 3 for x in range(3)):
            return r
    return None


# -- automorphisms --------------------------------------------------------------------

def _is_count(x) -> bool:
    return x == INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 1)


def _clean_perm(p: dict, bound, what: str) -> dict:
    p = {int(a): int(b) for a, b in p.items()}
    if set(p) != set(p.values()):
        raise InvariantViolation(f"{what} is not a bijection of its support")
    if any(x < 0 or x >= bound for x in p):
        raise InputError(f"{what} mentions an index outside the signature")
    return {a: b for a, b in p.items() if a != b}


@dataclass(frozen=True, eq=True)
class CompositeAutomorphism:
    """Finitely described automorphism of ``m . K_n`` (or of ``m . C_3`` / ``C_3[n]``).

    ``copy_perm`` and every ``maps[c]`` are finitely supported permutations
    given by their non-fixed entries; ``maps[c]`` sends copy ``c`` onto
    copy ``copy_perm(c)``.
    """

    m: object
    n: object
    copy_perm: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    tail: str = TAIL_IDENTITY
    graph: str = K

    __hash__ = None

    def __post_init__(self):
        if not (_is_count(self.m) and _is_count(self.n)):
            raise InputError("m and n must be positive integers or INF")
        if self.tail not in TAILS:
            raise InputError(f"unknown tail convention {self.tail!r}")
        if self.tail == TAIL_ID_2CYCLES and self.m != INF:
            raise InputError("the identity 2-cycle tail needs infinitely many copies")
        if self.graph not in GRAPHS:
            raise InputError(f"unknown composite graph {self.graph!r}")
        cp = _clean_perm(self.copy_perm, self.m, "copy permutation")
        maps = {}
        for c, p in self.maps.items():
            c = int(c)
            if not 0 <= c < self.m:
                raise InputError("copy index outside the signature")
            p = _clean_perm(p, self.n, f"map of copy {c}")
            if p:
                maps[c] = p
        object.__setattr__(self, "copy_perm", cp)
        object.__setattr__(self, "maps", maps)
        if self.graph == C3:
            if self.n != 3:
                raise InputError("copies of C_3 have three labels")
            if any(_rotation_of(p) is None for p in maps.values()):
                raise InvariantViolation("maps between copies of C_3 must be rotations")
        if self.graph == C3_BLOW:
            if self.m != 3 or self.tail != TAIL_IDENTITY:
                raise InputError("C_3[n] has exactly three classes")
            if _rotation_of(cp) is None:
                raise InvariantViolation("classes of C_3[n] must be permuted by a rotation")

    @property
    def support(self) -> tuple:
        return tuple(sorted(set(self.copy_perm) | set(self.maps)))

    def _tail_partner(self, c: int) -> int:
        sup = self.support
        rank = c - sum(1 for s in sup if s < c)
        want = rank ^ 1
        j, seen = 0, -1
        while True:
            if j not in sup:
                seen += 1
                if seen == want:
                    return j
            j += 1

    def copy_image(self, c: int) -> int:
        if c in self.copy_perm or c in self.maps or self.tail == TAIL_IDENTITY:
            return self.copy_perm.get(c, c)
        return self._tail_partner(c)

    def label_map(self, c: int) -> dict:
        return self.maps.get(c, {})

    def __call__(self, v):
        c, x = v
        return self.copy_image(c), self.label_map(c).get(x, x)

    def labels_in_use(self) -> int:
        """One past the largest label any map moves."""
        return 1 + max((x for p in self.maps.values() for x in p), default=-1)

    def signature(self) -> tuple:
        return (self.m, self.n, self.graph)


def identity_composite(m, n, graph=K, tail=TAIL_IDENTITY) -> CompositeAutomorphism:
    return CompositeAutomorphism(m, n, {}, {}, tail, graph)


@dataclass(frozen=True)
class CopyCycles:
    cycles: tuple
    tail_fixed: object
    tail_2cycles: object = 0


def cycle_decompose(phi: CompositeAutomorphism) -> CopyCycles:
    """Cycles of the copy permutation on the support, plus the implicit tail."""
    seen, cycles = set(), []
    for c in phi.support:
        if c in seen:
            continue
        cyc, d = [c], phi.copy_perm.get(c, c)
        seen.add(c)
        while d != c:
            cyc.append(d)
            seen.add(d)
            d = phi.copy_perm.get(d, d)
        cycles.append(tuple(cyc))
    rest = INF if phi.m == INF else phi.m - len(phi.support)
    if phi.tail == TAIL_ID_2CYCLES:
        return CopyCycles(tuple(cycles), 0, INF)
    return CopyCycles(tuple(cycles), rest, 0)


def _return_map(phi: CompositeAutomorphism, cycle, start: int = 0) -> dict:
    """``phi^k`` restricted to the copy ``cycle[start]``, as a label permutation."""
    k = len(cycle)
    order = [cycle[(start + i) % k] for i in range(k)]
    for a, b in zip(order, order[1:] + order[:1]):
        if phi.copy_image(a) != b:
            raise InputError("not a cycle of the copy permutation")
    labels = set()
    for c in order:
        labels.update(phi.label_map(c))
    out = {}
    for x in labels:
        y = x
        for c in order:
            y = phi.label_map(c).get(y, y)
        out[x] = y
    return {x: y for x, y in out.items() if x != y}


def twist_type(phi: CompositeAutomorphism, cycle, start: int = 0):
    """Twist type of a finite copy cycle, read from copy ``cycle[start]``."""
    if cycle is None or (isinstance(cycle, float) and cycle == INF):
        raise InputError("no twist type for an infinite cycle")
    ret = _return_map(phi, tuple(cycle), start)
    if phi.graph == C3:
        return Rotation(_rotation_of(ret))
    return cycle_type_of(ret, phi.n)


def _identity_twist(phi):
    return Rotation(0) if phi.graph == C3 else TwistType.identity(phi.n)


@dataclass(frozen=True)
class CycleInvariant:
    """Counts of ``(cycle length, twist)`` classes; ``INF`` marks tail contributions.

    For ``C_3[n]`` the class rotation is recorded too, and when it is trivial
    the twists of the three classes up to rotation (``arrangement``).
    """

    counts: tuple
    infinite_cycles: object = 0
    rotation: int | None = None
    arrangement: tuple = ()

    @property
    def realized(self) -> frozenset:
        return frozenset(t for (k, t), c in self.counts if c)

    def as_dict(self) -> dict:
        return dict(self.counts)

    def to_json(self) -> dict:
        out = {"counts": [[k, _twist_json(t), _count_json(c)] for (k, t), c in self.counts],
               "infinite_cycles": _count_json(self.infinite_cycles),
               "realized": sorted((_twist_json(t) for t in self.realized), key=str)}
        if self.rotation is not None:
            out["rotation"] = self.rotation
        if self.arrangement:
            out["arrangement"] = [_twist_json(t) for t in self.arrangement]
        return out


def _make_invariant(counter: dict, **extra) -> CycleInvariant:
    items = tuple(sorted(((k, t), c) for (k, t), c in counter.items() if c))
    return CycleInvariant(items, 0, **extra)


def _min_rotation(seq: tuple) -> tuple:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def invariant(phi: CompositeAutomorphism) -> CycleInvariant:
    dec = cycle_decompose(phi)
    counter = Counter()
    for cyc in dec.cycles:
        counter[(len(cyc), twist_type(phi, cyc))] += 1
    ident = _identity_twist(phi)
    if phi.graph == C3_BLOW:
        rot = _rotation_of(phi.copy_perm)
        if rot == 0:
            seq = tuple(cycle_type_of(phi.label_map(c), phi.n) for c in range(3))
            counter = Counter((1, t) for t in seq)
            return _make_invariant(counter, rotation=0, arrangement=_min_rotation(seq))
        return _make_invariant(counter, rotation=rot)
    if dec.tail_fixed:
        key = (1, ident)
        counter[key] = INF if dec.tail_fixed == INF else counter[key] + dec.tail_fixed
    if dec.tail_2cycles:
        counter[(2, ident)] = INF
    return _make_invariant(counter)


def c3_composite_invariant(phi: CompositeAutomorphism) -> CycleInvariant:
    """Invariant of an automorphism of ``m . C_3`` or of ``C_3[n]``."""
    if phi.graph not in (C3, C3_BLOW):
        raise InputError("expected a composite automorphism built from C_3")
    return invariant(phi)


def decide_conjugacy(phi: CompositeAutomorphism, psi: CompositeAutomorphism) -> bool:
    if phi.signature() != psi.signature():
        raise InputError("automorphisms live on different composite structures")
    return invariant(phi) == invariant(psi)


# -- conjugator -------------------------------------------------------------------------

def _window(phi, psi):
    """Copy and label ranges outside which both maps act identically and trivially."""
    if phi.m != INF:
        copies = phi.m
    else:
        copies = 1 + max(phi.support + psi.support, default=-1)
        if phi.tail == TAIL_ID_2CYCLES and (copies - len(phi.support)) % 2:
            copies += 1
    labels = phi.n if phi.n != INF else max(phi.labels_in_use(), psi.labels_in_use())
    return copies, labels


def _all_cycles(phi, copies):
    seen, out = set(), []
    for c in range(copies):
        if c in seen:
            continue
        cyc, d = [c], phi.copy_image(c)
        seen.add(c)
        while d != c:
            cyc.append(d)
            seen.add(d)
            d = phi.copy_image(d)
        out.append(tuple(cyc))
    return out


def _label_conjugator(r_phi: dict, r_psi: dict, labels: int) -> dict:
    """``d`` with ``d . r_phi = r_psi . d`` on ``0..labels-1``, matching cycles by length."""
    def cycles(p):
        full = {x: p.get(x, x) for x in range(labels)}
        seen, out = set(), []
        for x in range(labels):
            if x in seen:
                continue
            cyc, y = [x], full[x]
            seen.add(x)
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = full[y]
            out.append(cyc)
        return sorted(out, key=lambda c: (-len(c), c[0]))
    d = {}
    for a, b in zip(cycles(r_phi), cycles(r_psi)):
        if len(a) != len(b):
            raise InvariantViolation("return maps have different cycle types")
        for x, y in zip(a, b):
            d[x] = y
    return d


def _compose(f: dict, g: dict) -> dict:
    keys = set(f) | set(g)
    return {x: f.get(g.get(x, x), g.get(x, x)) for x in keys}


def _invert(f: dict) -> dict:
    return {b: a for a, b in f.items()}


def _twist_key(phi, cyc, labels):
    ret = _return_map(phi, cyc)
    if phi.graph == C3:
        return Rotation(_rotation_of(ret))
    return cycle_type_of(ret, labels)


def build_conjugator_composite(phi: CompositeAutomorphism, psi: CompositeAutomorphism) -> CompositeAutomorphism:
    """Explicit ``delta`` with ``delta . phi = psi . delta``, matched class by class."""
    if not decide_conjugacy(phi, psi):
        raise InputError("automorphisms have different invariants; no conjugator exists")
    copies, labels = _window(phi, psi)
    if phi.graph == C3_BLOW and _rotation_of(phi.copy_perm) == 0:
        return _blow_fixed_conjugator(phi, psi)
    groups_phi, groups_psi = {}, {}
    for src, groups in ((phi, groups_phi), (psi, groups_psi)):
        cycles = _all_cycles(src, copies)
        if src.graph == C3_BLOW:
            cycles = [c for c in cycles if 0 in c]
        for cyc in cycles:
            groups.setdefault((len(cyc), _twist_key(src, cyc, labels)), []).append(cyc)
    copy_map, maps = {}, {}
    for key in sorted(groups_phi):
        ys, zs = groups_phi[key], groups_psi.get(key, [])
        if len(ys) != len(zs):
            raise InvariantViolation("class counts differ inside the window")
        for y, z in zip(ys, zs):
            d0 = {} if phi.graph == C3 else _label_conjugator(_return_map(phi, y), _return_map(psi, z), labels)
            f, g = {}, {}
            for i, (a, b) in enumerate(zip(y, z)):
                copy_map[a] = b
                maps[a] = _compose(g, _compose(d0, _invert(f)))
                f = _compose(phi.label_map(a), f)
                g = _compose(psi.label_map(b), g)
    delta = CompositeAutomorphism(phi.m, phi.n, copy_map, maps, TAIL_IDENTITY, phi.graph)
    if not verify_composite_conjugacy(phi, psi, delta):
        raise InvariantViolation("constructed conjugator failed verification")
    return delta


def _blow_fixed_conjugator(phi, psi):
    tw_phi = [cycle_type_of(phi.label_map(c), phi.n) for c in range(3)]
    tw_psi = [cycle_type_of(psi.label_map(c), psi.n) for c in range(3)]
    labels = max(phi.labels_in_use(), psi.labels_in_use()) if phi.n == INF else phi.n
    for rho in range(3):
        if all(tw_phi[i] == tw_psi[(i + rho) % 3] for i in range(3)):
            copy_map = {i: (i + rho) % 3 for i in range(3)}
            maps = {i: _label_conjugator(phi.label_map(i), psi.label_map(copy_map[i]), labels)
                    for i in range(3)}
            return CompositeAutomorphism(3, phi.n, copy_map, maps, TAIL_IDENTITY, C3_BLOW)
    raise InvariantViolation("no class rotation aligns the twists")


def verify_composite_conjugacy(phi, psi, delta) -> bool:
    """Pointwise ``delta(phi(v)) == psi(delta(v))`` on every vertex (or a window past all supports)."""
    copies, labels = _window(phi, psi)
    if phi.m == INF:
        copies = max(copies, 1 + max(delta.support, default=-1)) + 4
    if phi.n == INF:
        labels = max(labels, delta.labels_in_use()) + 2
    for c in range(copies):
        for x in range(labels):
            if delta(phi((c, x))) != psi(delta((c, x))):
                return False
    return True


# -- finite signatures as plain structures -------------------------------------------------

def composite_structure(m: int, n: int, graph: str = K) -> FiniteStructure:
    """``m . K_n`` (graph), ``m . C_3`` or ``C_3[n]`` on ids ``copy * n + label``."""
    if m == INF or n == INF:
        raise InputError("only finite signatures have a plain structure")
    if graph == K:
        edges = [(c * n + a, c * n + b) for c in range(m) for a in range(n) for b in range(n) if a != b]
        return FiniteStructure.graph(range(m * n), edges)
    if graph == C3:
        edges = [(c * 3 + a, c * 3 + (a + 1) % 3) for c in range(m) for a in range(3)]
        return FiniteStructure(DIGRAPH, tuple(range(m * 3)), frozenset(edges))
    edges = [(c * n + a, ((c + 1) % 3) * n + b) for c in range(3) for a in range(n) for b in range(n)]
    return FiniteStructure(DIGRAPH, tuple(range(3 * n)), frozenset(edges))


def to_vertex_map(phi: CompositeAutomorphism) -> dict:
    m, n = phi.m, phi.n
    if m == INF or n == INF:
        raise InputError("only finite signatures have a vertex map")
    out = {}
    for c in range(m):
        for x in range(n):
            d, y = phi((c, x))
            out[c * n + x] = d * n + y
    return out


def from_vertex_map(f: dict, m: int, n: int, graph: str = K) -> CompositeAutomorphism:
    copy_perm, maps = {}, {}
    for c in range(m):
        images = [f[c * n + x] for x in range(n)]
        targets = {y // n for y in images}
        if len(targets) != 1:
            raise InputError("vertex map does not respect copies")
        copy_perm[c] = targets.pop()
        maps[c] = {x: images[x] % n for x in range(n)}
    return CompositeAutomorphism(m, n, copy_perm, maps, TAIL_IDENTITY, graph)


# -- E_set coding ------------------------------------------------------------------------

def encode_eset(phi: CompositeAutomorphism) -> frozenset:
    """Tuples ``(t, k, l, i)``: twist ``t``, cycle length ``k``, count ``l``, infinite cycles ``i``.

    Only classes with ``l > 0`` are listed, so the set is finite.
    """
    inv = invariant(phi)
    return frozenset((t, k, c, inv.infinite_cycles) for (k, t), c in inv.counts)


def decode_eset(enumeration) -> CompositeAutomorphism:
    """One explicit 2-cycle of copies per distinct twist (first occurrence order), identity 2-cycles beyond.

    An identity twist needs no explicit cycle: the tail already supplies
    infinitely many.
    """
    seen, order = set(), []
    for t in enumeration:
        t = t if isinstance(t, TwistType) else TwistType(tuple(t), True)
        if not t.cofinite:
            t = TwistType(t.lengths, True)
        if t in seen:
            continue
        seen.add(t)
        if not t.is_identity():
            order.append(t)
    copy_perm, maps = {}, {}
    for j, t in enumerate(order):
        a, b = 2 * j, 2 * j + 1
        copy_perm[a], copy_perm[b] = b, a
        maps[a] = realize_twist(t)
    return CompositeAutomorphism(INF, INF, copy_perm, maps, TAIL_ID_2CYCLES)


def eset_for(twists) -> frozenset:
    """The tuple set a decoded enumeration of ``twists`` must encode to."""
    ident = TwistType.identity(INF)
    out = {(ident, 2, INF, 0)}
    for t in set(twists):
        if not t.is_identity():
            out.add((t, 2, 1, 0))
    return frozenset(out)


def eset_to_json(tuples) -> list:
    rows = [[_twist_json(t), k, _count_json(l), _count_json(i)] for t, k, l, i in tuples]
    return sorted(rows, key=lambda r: (str(r[0]), r[1], str(r[2])))


# -- transport maps --------------------------------------------------------------------------

def sum_structure(G: FiniteStructure, k: int) -> FiniteStructure:
    order = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(order)}
    size = len(order)
    edges = [(c * size + idx[u], c * size + idx[v]) for c in range(k) for u, v in G.edges]
    return FiniteStructure(G.kind if G.kind != TOURNAMENT else DIGRAPH, tuple(range(k * size)), frozenset(edges))


def direct_sum_id(G: FiniteStructure, phi: dict, k: int) -> dict:
    """``phi`` on the first of ``k`` copies of ``G``, identity on the rest."""
    if not verify_automorphism(G, phi):
        raise InputError("phi is not an automorphism of G")
    if k < 1:
        raise InputError("k must be positive")
    order = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(order)}
    size = len(order)
    out = {idx[v]: idx[phi[v]] for v in order}
    for c in range(1, k):
        out.update({c * size + i: c * size + i for i in range(size)})
    return out


def blowup_structure(G: FiniteStructure, k: int) -> FiniteStructure:
    if G.kind != TOURNAMENT:
        raise InputError("blowup needs a tournament")
    order = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(order)}
    edges = [(idx[u] * k + a, idx[v] * k + b) for u, v in G.edges for a in range(k) for b in range(k)]
    return FiniteStructure(DIGRAPH, tuple(range(len(order) * k)), frozenset(edges))


def blowup(G: FiniteStructure, phi: dict, k: int) -> dict:
    """``phi`` acting on the classes of ``G[k]`` and trivially inside each class."""
    if G.kind != TOURNAMENT:
        raise InputError("blowup needs a tournament")
    if not verify_automorphism(G, phi):
        raise InputError("phi is not an automorphism of G")
    if k < 1:
        raise InputError("k must be positive")
    order = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(order)}
    return {idx[v] * k + a: idx[phi[v]] * k + a for v in order for a in range(k)}


def c3_copies_structure(m: int) -> FiniteStructure:
    return composite_structure(m, 3, C3)


def c3_blow_structure(n: int) -> FiniteStructure:
    return blowup_structure(c3(), n)


# -- serialization --------------------------------------------------------------------------

def composite_to_json(phi: CompositeAutomorphism) -> dict:
    out = {"m": _count_json(phi.m), "n": _count_json(phi.n),
           "copy_perm": [[a, b] for a, b in sorted(phi.copy_perm.items())],
           "twists": {str(c): perm_cycles(p) for c, p in sorted(phi.maps.items())},
           "tail": phi.tail}
    if phi.graph != K:
        out["graph"] = phi.graph
    return out


def composite_from_json(data) -> CompositeAutomorphism:
    try:
        m = _count_from_json(data["m"])
        n = _count_from_json(data["n"])
        copy_perm = {int(a): int(b) for a, b in data.get("copy_perm", [])}
        maps = {int(c): perm_from_cycles(cycles) for c, cycles in data.get("twists", {}).items()}
        tail = data.get("tail", TAIL_IDENTITY)
        graph = data.get("graph", K)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed composite automorphism JSON: {exc}") from exc
    return CompositeAutomorphism(m, n, copy_perm, maps, tail, graph)


def all_composite_automorphisms(m: int, n: int, graph: str = K) -> list:
    """Every automorphism of a finite signature, enumerated copy permutation first."""
    if graph == K:
        label_perms = list(itertools.permutations(range(n)))
        copy_perms = list(itertools.permutations(range(m)))
    elif graph == C3:
        label_perms = [tuple((x + r) % 3 for x in range(3)) for r in range(3)]
        copy_perms = list(itertools.permutations(range(m)))
    else:
        label_perms = list(itertools.permutations(range(n)))
        copy_perms = [tuple((x + r) % 3 for x in range(3)) for r in range(3)]
    out = []
    for cp in copy_perms:
        for per_copy in itertools.product(label_perms, repeat=m):
            maps = {c: dict(enumerate(p)) for c, p in enumerate(per_copy)}
            out.append(CompositeAutomorphism(m, n, dict(enumerate(cp)), maps, TAIL_IDENTITY, graph))
    return out
