"""The compiled kernel and the pure-Python fallback must agree exactly."""
import pytest
from hypothesis import given, strategies as st

from conjforge import search
from conjforge.core import FiniteStructure

from strategies import digraphs, graphs, tournaments

compiled = pytest.mark.skipif(search.BACKEND != "compiled", reason="extension not built")


def both(*args, **kw):
    return (search.find_maps(*args, backend="python", **kw),
            search.find_maps(*args, backend="compiled", **kw))


@compiled
@given(st.one_of(graphs(6), tournaments(6), digraphs(6)), st.one_of(graphs(6), tournaments(6), digraphs(6)))
def test_bijective_search_agrees(a, b):
    py, cy = both([a.rows], [b.rows], len(a), len(b), True)
    assert py == cy


@compiled
@given(tournaments(4), digraphs(7), st.integers(0, 3))
def test_embedding_search_agrees(p, h, limit):
    py, cy = both([p.rows], [h.rows], len(p), len(h), False, limit)
    assert py == cy


@compiled
@given(tournaments(3), digraphs(6))
def test_forced_search_agrees(p, h):
    if len(p) and len(h):
        for j in range(len(h)):
            py, cy = both([p.rows], [h.rows], len(p), len(h), False, 0, forced=(0, j))
            assert py == cy


@compiled
@given(st.lists(st.integers(1, 10 ** 6), min_size=0, max_size=30, unique=True), st.integers(2, 6))
def test_relate_tables_agree(nums, n):
    denom = 10 ** 6 + 1
    py = search.relate_table(nums, denom, n, backend="python")
    cy = search.relate_table(nums, denom, n, backend="compiled")
    assert py == cy


def test_large_hosts_fall_back():
    big = FiniteStructure.digraph(range(70), [(i, i + 1) for i in range(69)])
    pat = FiniteStructure.tournament(range(2), [(0, 1)])
    hits = search.find_maps([pat.rows], [big.rows], 2, 70, False, 3)
    assert hits == [(0, 1), (1, 2), (2, 3)]


def test_pure_flag_selects_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, CONJFORGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from conjforge import search; print(search.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
