"""Hypothesis strategies for small structures, maps and PL automorphisms."""
import itertools

from hypothesis import strategies as st

from conjforge.core import FiniteStructure
from conjforge.qorder import PLAutomorphism, Rat


@st.composite
def graphs(draw, max_size=7):
    n = draw(st.integers(0, max_size))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FiniteStructure.graph(range(n), [p for p, k in zip(pairs, keep) if k])


@st.composite
def tournaments(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    pairs = list(itertools.combinations(range(n), 2))
    flips = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FiniteStructure.tournament(range(n), [(v, u) if f else (u, v) for (u, v), f in zip(pairs, flips)])


@st.composite
def digraphs(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    pairs = list(itertools.combinations(range(n), 2))
    states = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    edges = [(u, v) if s == 1 else (v, u) for (u, v), s in zip(pairs, states) if s]
    return FiniteStructure.digraph(range(n), edges)


@st.composite
def permutations_of(draw, domain):
    domain = list(domain)
    return dict(zip(domain, draw(st.permutations(domain))))


rationals = st.builds(lambda p, q: Rat(p, q), st.integers(-400, 400), st.integers(1, 40))


@st.composite
def pl_maps(draw, max_knots=6):
    k = draw(st.integers(1, max_knots))
    xs = sorted(draw(st.sets(st.integers(-24, 24), min_size=k, max_size=k)))
    ys = sorted(draw(st.sets(st.integers(-24, 24), min_size=k, max_size=k)))
    return PLAutomorphism(tuple((Rat(x, 4), Rat(y, 4)) for x, y in zip(xs, ys)))
