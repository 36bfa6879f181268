"""The circle structures S(n), the local order and the S(3) digraph.

Points are rational fractions ``theta`` of a full turn.  Two points stand
in relation ``k`` when their angular difference lies in the ``k``-th open
arc of width ``1/n``.  Unrolling sends every arc onto the first one; an
order automorphism ``psi`` of the first arc, pulled back arc by arc,
preserves every relation.  :func:`build_phi_L_sn` uses this to encode a
finite linear order as the fixed points of such an automorphism, and
:func:`recover_order_sn` reads it back from the two fixed points that bound
down-bumps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from . import search
from .core import LINEAR_ORDER, TOURNAMENT, DIGRAPH, FiniteStructure
from .errors import BudgetExceeded, InputError, InvariantViolation
from .qorder import (DOWN, UP, PLAutomorphism, Rat, down_bump_knots, rat,
                     rat_str, up_bump_knots)

DEFAULT_DEPTH = 8
DEFAULT_ATTEMPTS = 5


def frac(q):
    return q - int(math.floor(q))


@dataclass(frozen=True)
class SnRegistry:
    n: int
    points: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError("n must be an integer >= 2")
        pts = tuple(sorted({rat(p) for p in self.points}))
        n = self.n
        for p in pts:
            if not 0 < p < 1:
                raise InvariantViolation(f"theta {p} outside (0, 1)")
            if (p * n).denominator == 1:
                raise InvariantViolation(f"theta {p} is a multiple of 1/{n}")
        unrolled = sorted(p - Rat(int(math.floor(p * n)), n) for p in pts)
        for a, b in zip(unrolled, unrolled[1:]):
            if a == b:
                raise InvariantViolation(f"two points share unrolled value {a} (unrolling not injective)")
        object.__setattr__(self, "points", pts)

    def __contains__(self, x) -> bool:
        return rat(x) in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.points)

    @cached_property
    def encoding(self) -> tuple:
        """Common denominator ``D`` and integer numerators of every point."""
        d = 1
        for p in self.points:
            d = math.lcm(d, int(p.denominator))
        return d, {p: int(p * d) for p in self.points}

    def _check(self, x):
        x = rat(x)
        if x not in self._members:
            raise InputError(f"point {x} is not registered")
        return x


@dataclass(frozen=True)
class SnAutomorphism:
    """Relation-preserving bijection between registered points.

    ``assignment`` is the map restricted to points whose image is also
    registered; ``psi`` (when known) is the order automorphism of the
    unrolled arc it was induced from.
    """

    registry: SnRegistry
    assignment: dict
    psi: PLAutomorphism | None = None
    embedding: tuple = field(default=())

    def __call__(self, x):
        x = rat(x)
        if x in self.assignment:
            return self.assignment[x]
        if self.psi is None:
            raise InputError(f"{x} has no registered image")
        return _pull_back(self.psi, self.registry.n, x)


def relate(reg: SnRegistry, x, y) -> int:
    """Index ``k`` of the arc containing ``frac(theta_x - theta_y)``."""
    x, y = reg._check(x), reg._check(y)
    if x == y:
        raise InputError("relate needs two distinct points")
    t = frac(x - y) * reg.n
    if t.denominator == 1:
        raise InvariantViolation(f"difference of {x} and {y} is a multiple of 1/{reg.n}")
    return int(math.floor(t))


def relate_table(reg: SnRegistry, points=None, backend=None) -> bytes:
    """Row-major arc indices for every ordered pair of ``points`` (default: all)."""
    d, nums = reg.encoding
    pts = reg.points if points is None else [rat(p) for p in points]
    table = search.relate_table([nums[p] for p in pts], d, reg.n, backend=backend)
    if search.BOUNDARY in table:
        raise InvariantViolation("some pair differs by an exact multiple of 1/n")
    return table


def local_order_edge(reg: SnRegistry, x, y) -> bool:
    if reg.n != 2:
        raise InputError("the local order lives on S(2)")
    return relate(reg, x, y) == 0 or relate(reg, y, x) == 1


def s3_digraph_edge(reg: SnRegistry, x, y) -> bool:
    if reg.n != 3:
        raise InputError("the S(3) digraph lives on S(3)")
    return relate(reg, x, y) == 0 or relate(reg, y, x) == 2


def _structure_from(reg: SnRegistry, kind: str, forward: int, backward: int) -> FiniteStructure:
    """Edge ``i -> j`` iff ``relate(i, j) == forward`` or ``relate(j, i) == backward``."""
    size = len(reg.points)
    table = relate_table(reg)
    edges = [(i, j) for i in range(size) for j in range(size)
             if i != j and (table[i * size + j] == forward or table[j * size + i] == backward)]
    return FiniteStructure(kind, tuple(range(size)), frozenset(edges))


def local_order(reg: SnRegistry) -> FiniteStructure:
    """The local order on the registry as a tournament on point indices."""
    if reg.n != 2:
        raise InputError("the local order lives on S(2)")
    return _structure_from(reg, TOURNAMENT, 0, 1)


def s3_digraph(reg: SnRegistry) -> FiniteStructure:
    if reg.n != 3:
        raise InputError("the S(3) digraph lives on S(3)")
    return _structure_from(reg, DIGRAPH, 0, 2)


def unroll(reg: SnRegistry, x) -> Rat:
    """Rotate ``x`` back into the first arc: ``theta - k/n`` for its arc ``k``."""
    x = reg._check(x)
    t = x * reg.n
    if t.denominator == 1:
        raise InvariantViolation(f"theta {x} lies on an arc boundary")
    return x - Rat(int(math.floor(t)), reg.n)


def _pull_back(psi: PLAutomorphism, n: int, x):
    k = int(math.floor(x * n))
    return Rat(k, n) + psi(x - Rat(k, n))


def _psi_for(image: list, n: int) -> PLAutomorphism:
    top = Rat(1, n)
    lo, hi = image[0], image[-1]
    knots = [(Rat(0), Rat(0))] + down_bump_knots(Rat(0), lo) + [(lo, lo)]
    for a, b in zip(image, image[1:]):
        knots += up_bump_knots(a, b) + [(b, b)]
    knots += down_bump_knots(hi, top) + [(top, top)]
    return PLAutomorphism(tuple(knots))


def build_phi_L_sn(L: FiniteStructure, n: int, depth: int = DEFAULT_DEPTH,
                   attempts: int = DEFAULT_ATTEMPTS) -> SnAutomorphism:
    """Encode ``L`` (with new endpoints adjoined) as fixed points of an S(n) automorphism.

    The endpoints sit at unrolled coordinates ``1/(4n)`` and ``3/(4n)`` with
    ``L`` spread evenly between them, all on the first arc.  Every bump of
    ``psi`` gets one seed per arc inside a fundamental domain, so seeds lie
    on distinct orbits; each seed's orbit is sampled ``depth`` steps in both
    directions.
    """
    if L.kind != LINEAR_ORDER:
        raise InputError("expected a linear order")
    if not isinstance(n, int) or n < 2:
        raise InputError("n must be an integer >= 2")
    m = len(L) + 2
    first, width = Rat(1, 4 * n), Rat(1, 2 * n)
    image = [first + width * Rat(i, m - 1) for i in range(m)]
    psi = _psi_for(image, n)
    bounds = [Rat(0)] + image + [Rat(1, n)]
    bumps = list(zip(bounds, bounds[1:]))
    last_error = None
    for attempt in range(attempts):
        points = set(image)
        for a, b in bumps:
            base = (a + b) / 2
            lo, hi = sorted((base, psi(base)))
            for k in range(n):
                u = lo + (hi - lo) * Rat(k + 1, n + 1 + attempt)
                orbit = [u]
                fwd = bwd = u
                inv = psi.inverse()
                for _ in range(depth):
                    fwd, bwd = psi(fwd), inv(bwd)
                    orbit += [fwd, bwd]
                points.update(Rat(k, n) + v for v in orbit)
        try:
            reg = SnRegistry(n, tuple(points))
        except InvariantViolation as exc:
            last_error = exc
            continue
        assignment = {}
        for x in reg.points:
            y = _pull_back(psi, n, x)
            if y in reg:
                assignment[x] = y
        return SnAutomorphism(reg, assignment, psi, tuple(image))
    raise BudgetExceeded(f"could not populate a valid registry: {last_error}")


def preserves_relations(phi: SnAutomorphism, backend=None) -> bool:
    """Exhaustive check that ``relate(x, y) == relate(phi x, phi y)`` on the assigned points."""
    dom = sorted(phi.assignment)
    before = relate_table(phi.registry, dom, backend)
    after = relate_table(phi.registry, [phi.assignment[x] for x in dom], backend)
    return before == after


def _direction(x, y) -> str:
    return UP if frac(y - x) < Rat(1, 2) else DOWN


def recover_order_sn(phi: SnAutomorphism) -> FiniteStructure:
    """Linear order strictly between the two fixed points that bound down-bumps."""
    pts = phi.registry.points
    amap = phi.assignment
    fixed = [i for i, x in enumerate(pts) if amap.get(x) == x]
    if not fixed:
        raise InputError("malformed input: no fixed points")
    size = len(pts)

    def side(i, step):
        j = (i + step) % size
        while j != i:
            x = pts[j]
            if x in amap:
                if amap[x] == x:
                    return None
                return _direction(x, amap[x])
            j = (j + step) % size
        return None

    starts, ends = [], []
    for i in fixed:
        below, above = side(i, -1), side(i, 1)
        if below == DOWN:
            starts.append(i)
        if above == DOWN:
            ends.append(i)
    special = set(starts) | set(ends)
    if len(special) != 2 or len(starts) != 1 or len(ends) != 1:
        raise InputError(f"malformed input: expected two down-bump fixed points, found {len(special)}")
    start, end = starts[0], ends[0]
    fixed_set = set(fixed)
    inner = 0
    j = (start + 1) % size
    while j != end:
        if j in fixed_set:
            inner += 1
        j = (j + 1) % size
    return FiniteStructure.linear_order(range(inner))


# -- serialization --------------------------------------------------------------

def registry_to_json(reg: SnRegistry) -> dict:
    return {"n": reg.n, "points": [rat_str(p) for p in reg.points]}


def registry_from_json(data) -> SnRegistry:
    try:
        return SnRegistry(int(data["n"]), tuple(rat(p) for p in data["points"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed registry JSON: {exc}") from exc


def sn_automorphism_to_json(phi: SnAutomorphism) -> dict:
    return {"registry": registry_to_json(phi.registry),
            "pairs": [[rat_str(x), rat_str(phi.assignment[x])] for x in sorted(phi.assignment)]}


def sn_automorphism_from_json(data) -> SnAutomorphism:
    try:
        reg = registry_from_json(data["registry"])
        pairs = {rat(x): rat(y) for x, y in data["pairs"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed S(n) automorphism JSON: {exc}") from exc
    for x, y in pairs.items():
        if x not in reg or y not in reg:
            raise InputError("automorphism pairs must use registered points")
    if len(set(pairs.values())) != len(pairs):
        raise InvariantViolation("automorphism pairs are not injective")
    return SnAutomorphism(reg, pairs)
