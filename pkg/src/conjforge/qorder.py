"""Exact piecewise-linear automorphisms of the rationals.

An automorphism is stored as its knots ``(x_i, y_i)``; between knots it
interpolates affinely and beyond the outer knots it translates with slope
one.  On top of that carrier this module computes orbital decompositions
(fixed regions, up-bumps, down-bumps), builds the map ``L -> phi_L`` whose
fixed-point set is a copy of a finite linear order with up-bumps in every
gap, recovers ``L`` from ``phi_L``, and constructs explicit conjugators
between automorphisms with matching orbital data.
"""
from __future__ import annotations

import math
import os
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .core import LINEAR_ORDER, FiniteStructure
from .errors import BudgetExceeded, InputError

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction
NEG_INF = -math.inf
POS_INF = math.inf

FIXED = "fixedRegion"
UP = "upBump"
DOWN = "downBump"

DEFAULT_BUDGET = 10_000


def rat(x) -> Rat:
    """Parse an int, Fraction or ``"p/q"`` string into a reduced rational."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, Fraction):
        return Rat(x.numerator, x.denominator)
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, int):
        return Rat(x)
    if isinstance(x, str):
        try:
            return Rat(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def rat_str(q: Rat) -> str:
    return str(q)


def budget() -> int:
    env = os.environ.get("FORGE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"FORGE_BUDGET must be an integer, got {env!r}") from exc
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class PLAutomorphism:
    knots: tuple

    def __post_init__(self):
        knots = tuple((rat(x), rat(y)) for x, y in self.knots)
        if not knots:
            raise InputError("a PL automorphism needs at least one knot")
        for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
            if not (x0 < x1 and y0 < y1):
                raise InputError("knot coordinates must be strictly increasing")
        object.__setattr__(self, "knots", knots)

    @classmethod
    def identity(cls) -> PLAutomorphism:
        return cls(((Rat(0), Rat(0)),))

    @classmethod
    def translation(cls, d) -> PLAutomorphism:
        return cls(((Rat(0), rat(d)),))

    @cached_property
    def _xs(self):
        return [x for x, _ in self.knots]

    @cached_property
    def _pieces(self):
        # (slope, intercept) per bounded piece
        out = []
        for (x0, y0), (x1, y1) in zip(self.knots, self.knots[1:]):
            s = (y1 - y0) / (x1 - x0)
            out.append((s, y0 - s * x0))
        return out

    @property
    def left_shift(self) -> Rat:
        x, y = self.knots[0]
        return y - x

    @property
    def right_shift(self) -> Rat:
        x, y = self.knots[-1]
        return y - x

    def __call__(self, q) -> Rat:
        k = bisect_right(self._xs, q)
        if k == 0:
            return q + self.left_shift
        if k == len(self.knots):
            return q + self.right_shift
        s, b = self._pieces[k - 1]
        return s * q + b

    def inverse(self) -> PLAutomorphism:
        return PLAutomorphism(tuple((y, x) for x, y in self.knots))

    def compose(self, other: PLAutomorphism) -> PLAutomorphism:
        """``self . other`` (apply ``other`` first)."""
        xs = set(other._xs)
        other_inv = other.inverse()
        xs.update(other_inv(x) for x in self._xs)
        knots = [(x, self(other(x))) for x in sorted(xs)]
        return PLAutomorphism(tuple(_simplify(knots)))

    def slopes(self) -> list:
        return [s for s, _ in self._pieces]


def _simplify(knots: list) -> list:
    """Drop knots that do not change the map."""
    out = list(knots)
    changed = True
    while changed and len(out) > 1:
        changed = False
        (x0, y0), (x1, y1) = out[0], out[1]
        if y1 - y0 == x1 - x0:
            out.pop(0)
            changed = True
            continue
        (x0, y0), (x1, y1) = out[-2], out[-1]
        if y1 - y0 == x1 - x0:
            out.pop()
            changed = True
            continue
        for i in range(1, len(out) - 1):
            (xa, ya), (xb, yb), (xc, yc) = out[i - 1], out[i], out[i + 1]
            if (yb - ya) * (xc - xb) == (yc - yb) * (xb - xa):
                out.pop(i)
                changed = True
                break
    return out


def eval(phi: PLAutomorphism, q) -> Rat:  # noqa: A001 - public name
    return phi(rat(q))


def up_bump_knots(a, b) -> list:
    """Interior knot of an up-bump on ``(a, b)``: midpoint sent three quarters up."""
    return [((a + b) / 2, a + 3 * (b - a) / 4)]


def down_bump_knots(a, b) -> list:
    return [((a + b) / 2, a + (b - a) / 4)]


# -- orbitals ----------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    lo: object  # Rat or NEG_INF
    hi: object  # Rat or POS_INF
    type: str

    @property
    def bounded(self) -> bool:
        return self.lo != NEG_INF and self.hi != POS_INF

    @property
    def singleton(self) -> bool:
        return self.type == FIXED and self.lo == self.hi

    def contains(self, q) -> bool:
        if self.type == FIXED:
            return self.lo <= q <= self.hi
        return self.lo < q < self.hi


@dataclass(frozen=True)
class OrbitalDecomposition:
    regions: tuple

    def types(self) -> tuple:
        return tuple(r.type for r in self.regions)

    def region_index(self, q) -> int:
        for i, r in enumerate(self.regions):
            if r.contains(q):
                return i
        raise AssertionError(f"regions do not cover {q}")

    def fixed_points(self) -> list:
        return [r.lo for r in self.regions if r.singleton]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def classify_orbitals(phi: PLAutomorphism) -> OrbitalDecomposition:
    """Exact decomposition of the line into fixed regions and bumps."""
    gv = [y - x for x, y in phi.knots]
    points = []
    for i, (x, _) in enumerate(phi.knots):
        points.append(x)
        if i + 1 < len(phi.knots):
            g0, g1 = gv[i], gv[i + 1]
            if g0 * g1 < 0:
                x1 = phi.knots[i + 1][0]
                points.append(x - g0 * (x1 - x) / (g1 - g0))
    # cells: interval, point, interval, ..., point, interval
    cells = []
    bounds = [NEG_INF] + points + [POS_INF]
    for j in range(len(points) + 1):
        lo, hi = bounds[j], bounds[j + 1]
        if lo == NEG_INF:
            sign = _sign(phi.left_shift)
        elif hi == POS_INF:
            sign = _sign(phi.right_shift)
        else:
            mid = (lo + hi) / 2
            sign = _sign(phi(mid) - mid)
        cells.append((sign, lo, hi))
        if j < len(points):
            p = points[j]
            cells.append((_sign(phi(p) - p), p, p))
    regions = []
    start = 0
    for i in range(1, len(cells) + 1):
        if i == len(cells) or cells[i][0] != cells[start][0]:
            sign = cells[start][0]
            lo, hi = cells[start][1], cells[i - 1][2]
            kind = FIXED if sign == 0 else (UP if sign > 0 else DOWN)
            regions.append(Region(lo, hi, kind))
            start = i
    return OrbitalDecomposition(tuple(regions))


# -- linear orders -----------------------------------------------------------------

@dataclass(frozen=True)
class PerfectEmbedding:
    source: FiniteStructure
    image: tuple

    def as_map(self) -> dict:
        return dict(zip(self.source.order(), self.image))


def _require_order(L: FiniteStructure):
    if L.kind != LINEAR_ORDER:
        raise InputError("expected a linear order")


def perfect_embed(L: FiniteStructure) -> PerfectEmbedding:
    """Place the ``i``-th element of ``L`` at ``i``.

    Finite images always have an immediate image-neighbour (or an infinite
    end) on each side of every other rational.
    """
    _require_order(L)
    return PerfectEmbedding(L, tuple(Rat(i) for i in range(len(L))))


def build_phi_L(L: FiniteStructure) -> PLAutomorphism:
    """Automorphism fixing exactly the embedded copy of ``L``, up-bumps elsewhere."""
    image = perfect_embed(L).image
    if not image:
        return PLAutomorphism.translation(1)
    first, last = image[0], image[-1]
    knots = [(first - 2, first - 1), (first, first)]
    for a, b in zip(image, image[1:]):
        knots += up_bump_knots(a, b)
        knots.append((b, b))
    knots.append((last + 1, last + 2))
    return PLAutomorphism(tuple(knots))


def recover_order(phi: PLAutomorphism) -> FiniteStructure:
    """Linear order of the (isolated) fixed points of ``phi``."""
    dec = classify_orbitals(phi)
    for r in dec.regions:
        if r.type == FIXED and not r.singleton:
            raise InputError("not in the image of build_phi_L: fixed region with interior")
    return FiniteStructure.linear_order(range(len(dec.fixed_points())))


def orbital_match(d1: OrbitalDecomposition, d2: OrbitalDecomposition) -> list | None:
    """Positional, type-preserving matching of two decompositions, or ``None``."""
    if d1.types() != d2.types():
        return None
    for r1, r2 in zip(d1.regions, d2.regions):
        if (r1.lo == NEG_INF) != (r2.lo == NEG_INF) or (r1.hi == POS_INF) != (r2.hi == POS_INF):
            return None
        if r1.type == FIXED and r1.singleton != r2.singleton:
            return None
    return [(i, i) for i in range(len(d1.regions))]


def _base_point(r: Region) -> Rat:
    if r.bounded:
        return (r.lo + r.hi) / 2
    if r.lo == NEG_INF and r.hi == POS_INF:
        return Rat(0)
    if r.lo == NEG_INF:
        return r.hi - 1
    return r.lo + 1


class Conjugator:
    """Order-preserving ``delta`` with ``delta . phi == psi . delta``.

    On each matched bump the fundamental domain of ``phi`` at its base point
    is mapped affinely onto that of ``psi`` and extended along orbits.
    """

    def __init__(self, phi, psi, d1, d2, matching, step_budget=None):
        self.phi, self.psi = phi, psi
        self.phi_inv, self.psi_inv = phi.inverse(), psi.inverse()
        self.d1, self.d2 = d1, d2
        self.matching = dict(matching)
        self.step_budget = budget() if step_budget is None else step_budget
        self._charts = {}
        for i, j in matching:
            r1, r2 = d1.regions[i], d2.regions[j]
            if r1.type == FIXED:
                continue
            b1, b2 = _base_point(r1), _base_point(r2)
            if r1.type == UP:
                dom = (b1, phi(b1))
                cod = (b2, psi(b2))
            else:
                dom = (phi(b1), b1)
                cod = (psi(b2), b2)
            self._charts[i] = (dom, cod)

    def base_points(self, i: int) -> tuple:
        j = self.matching[i]
        return _base_point(self.d1.regions[i]), _base_point(self.d2.regions[j])

    def __call__(self, q) -> Rat:
        q = rat(q)
        i = self.d1.region_index(q)
        r1 = self.d1.regions[i]
        r2 = self.d2.regions[self.matching[i]]
        if r1.type == FIXED:
            return _fixed_chart(r1, r2, q)
        (lo, hi), (clo, chi) = self._charts[i]
        k = 0
        x = q
        steps = 0
        while x < lo or x >= hi:
            steps += 1
            if steps > self.step_budget:
                raise BudgetExceeded(f"fundamental domain not reached from q={q}")
            if x < lo:
                # move up
                if r1.type == UP:
                    x, k = self.phi(x), k + 1
                else:
                    x, k = self.phi_inv(x), k - 1
            else:
                if r1.type == UP:
                    x, k = self.phi_inv(x), k - 1
                else:
                    x, k = self.phi(x), k + 1
        y = clo + (x - lo) * (chi - clo) / (hi - lo)
        step = self.psi_inv if k > 0 else self.psi
        for _ in range(abs(k)):
            y = step(y)
        return y


def _fixed_chart(r1: Region, r2: Region, q) -> Rat:
    if r1.singleton:
        return r2.lo
    if r1.bounded:
        return r2.lo + (q - r1.lo) * (r2.hi - r2.lo) / (r1.hi - r1.lo)
    if r1.lo == NEG_INF and r1.hi == POS_INF:
        return q
    if r1.lo == NEG_INF:
        return q - r1.hi + r2.hi
    return q - r1.lo + r2.lo


def build_conjugator(phi: PLAutomorphism, psi: PLAutomorphism, m=None,
                     step_budget: int | None = None) -> Conjugator:
    d1, d2 = classify_orbitals(phi), classify_orbitals(psi)
    if m is None:
        m = orbital_match(d1, d2)
    if m is None or m != orbital_match(d1, d2):
        raise InputError("orbital decompositions do not match")
    return Conjugator(phi, psi, d1, d2, m, step_budget)


# -- sampling helpers ----------------------------------------------------------------

def random_rational(rng: random.Random, lo: int, hi: int, denom: int = 8) -> Rat:
    return Rat(rng.randint(lo * denom, hi * denom), denom)


def random_pl(rng: random.Random, max_knots: int = 6, span: int = 6, denom: int = 4) -> PLAutomorphism:
    """Random PL automorphism with between 1 and ``max_knots`` knots."""
    k = rng.randint(1, max_knots)
    pool = range(-span * denom, span * denom + 1)
    xs = sorted(rng.sample(pool, k))
    ys = sorted(rng.sample(pool, k))
    return PLAutomorphism(tuple((Rat(x, denom), Rat(y, denom)) for x, y in zip(xs, ys)))


def sample_regions(dec: OrbitalDecomposition, rng: random.Random, count: int) -> list:
    """At least ``count`` distinct rationals (sorted) spread over every region, endpoints included."""
    out = []
    per = -(-count // len(dec.regions))
    for r in dec.regions:
        if r.singleton:
            out.append(r.lo)
            continue
        if r.lo == NEG_INF and r.hi == POS_INF:
            lo, hi = Rat(-12), Rat(12)
        elif r.lo == NEG_INF:
            lo, hi = r.hi - 12, r.hi
        elif r.hi == POS_INF:
            lo, hi = r.lo, r.lo + 12
        else:
            lo, hi = r.lo, r.hi
        for _ in range(per):
            out.append(lo + (hi - lo) * Rat(rng.randint(1, 999), 1000))
        if r.type == FIXED:
            out += [e for e in (r.lo, r.hi) if e not in (NEG_INF, POS_INF)]
    seen = set(out)
    while len(seen) < count:
        seen.add(random_rational(rng, -12, 12, 64))
    return sorted(seen)


# -- serialization ------------------------------------------------------------------

def pl_to_json(phi: PLAutomorphism) -> dict:
    return {"knots": [[rat_str(x), rat_str(y)] for x, y in phi.knots]}


def pl_from_json(data) -> PLAutomorphism:
    try:
        return PLAutomorphism(tuple((rat(x), rat(y)) for x, y in data["knots"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed PL automorphism JSON: {exc}") from exc


def _end_str(x) -> str:
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "+inf"
    return rat_str(x)


def _end_parse(s):
    if s == "-inf":
        return NEG_INF
    if s == "+inf":
        return POS_INF
    return rat(s)


def decomposition_to_json(dec: OrbitalDecomposition) -> dict:
    return {"regions": [{"lo": _end_str(r.lo), "hi": _end_str(r.hi), "type": r.type}
                        for r in dec.regions]}


def decomposition_from_json(data) -> OrbitalDecomposition:
    try:
        return OrbitalDecomposition(tuple(
            Region(_end_parse(r["lo"]), _end_parse(r["hi"]), r["type"]) for r in data["regions"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed decomposition JSON: {exc}") from exc
