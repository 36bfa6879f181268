"""The twelve acceptance criteria, each with its runtime bound.

Every test prints one ``PASS``/``FAIL`` line; the same lines are repeated
in the terminal summary.  Run standalone with ``python tests/test_acceptance.py``.
"""
import itertools
import sys
import time

import pytest

from conjforge import composite, generic_digraphs as gd, qorder, suites
from conjforge.core import (FiniteStructure, automorphisms, brute_force_isomorphism, dumps,
                            embeds_tournament, is_In_free, isomorphism_types)

SEED = 0
RESULTS = []


def _report(number, title, ok, elapsed, limit, detail=""):
    bound = "no limit" if limit is None else f"limit {limit}s"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title} ({elapsed:.2f}s, {bound}){detail}"
    RESULTS.append(line)
    sys.__stdout__.write("\n" + line + "\n")
    sys.__stdout__.flush()
    return line


def _run(number, title, limit, body):
    start = time.perf_counter()
    problems = body()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        problems.append(f"runtime {elapsed:.2f}s exceeds {limit}s")
    detail = "" if not problems else ": " + "; ".join(map(str, problems[:5]))
    line = _report(number, title, not problems, elapsed, limit, detail)
    assert not problems, line


def _suite(name, extra=None):
    def body():
        rep = suites.run_suite(name, SEED)
        problems = list(rep["failures"])
        if rep["cases"] == 0:
            problems.append("suite ran no cases")
        if extra:
            problems += extra(rep)
        return problems
    return body


def test_criterion_01_q_round_trip():
    def extra(rep):
        out = []
        for k in range(7):
            L = FiniteStructure.linear_order(range(k))
            phi = qorder.build_phi_L(L)
            types = qorder.classify_orbitals(phi).types()
            if types.count(qorder.FIXED) != k or any(t == qorder.DOWN for t in types):
                out.append(f"size {k}: type sequence {types}")
        return out
    _run(1, "Q round-trip", 1, _suite("qorder-roundtrip", extra))


def test_criterion_02_glass_conjugator():
    def extra(rep):
        return [] if rep["cases"] == 3 * 50 else [f"expected 150 checks, saw {rep['cases']}"]
    _run(2, "glass conjugator", 5, _suite("glass-conjugator", extra))


def test_criterion_03_conjugation_covariance():
    def extra(rep):
        return [] if rep["cases"] == 100 else [f"expected 100 pairs, saw {rep['cases']}"]
    _run(3, "conjugation covariance", 2, _suite("conjugation-covariance", extra))


def test_criterion_04_sn_suite():
    _run(4, "S(n) suite", 2, _suite("sn"))


def test_criterion_05_graph_reduction():
    def extra(rep):
        types = [g for k in range(5) for g in isomorphism_types("graph", k)]
        wanted = sum(1 for g in types if all(
            not all(g.adjacent(a, b) for a, b in itertools.combinations(s, 2))
            for s in itertools.combinations(g.vertices, 3)))
        return [] if rep["facts"]["graphs"] == 2 * wanted else [f"covered {rep['facts']['graphs']} graphs"]
    _run(5, "Gamma_n suite", 30, _suite("roundtrip-graphs", extra))


def test_criterion_06_tournament_reduction():
    def extra(rep):
        wanted = sum(len(isomorphism_types("tournament", k)) for k in range(5))
        return [] if rep["facts"]["tournaments"] == 2 * wanted else ["tournament coverage"]
    _run(6, "tournament suite", 30, _suite("roundtrip-tournaments", extra))


def test_criterion_07_in_free_and_forbidden():
    def extra(rep):
        out = []
        for T in (FiniteStructure.tournament([0], []), FiniteStructure.tournament([0, 1], [(0, 1)])):
            ds = gd.build_reduction_In_free(T, 3, 1, 1)
            if not all(is_In_free(ds.level_structure(k), 3) for k in range(len(ds.levels))):
                out.append(f"Lambda_3 from {len(T)} vertices contains I_3")
        G = FiniteStructure.digraph([0, 1], [(0, 1)])
        ds = gd.build_reduction_forbidden(G, [FiniteStructure.tournament(range(3), [(0, 1), (1, 2), (2, 0)])], 1, 2)
        if embeds_tournament(FiniteStructure.tournament(range(3), [(0, 1), (1, 2), (2, 0)]), ds.structure):
            out.append("Gamma_F contains C_3")
        if not ds.skipped:
            out.append("skip rule never fired")
        return out
    _run(7, "Lambda_n and Gamma_F", 10, _suite("infree-forbidden", extra))


def test_criterion_08_multipartite():
    _run(8, "multipartite", 10, _suite("multipartite"))


def test_criterion_09_composite_oracle():
    def extra(rep):
        facts = rep["facts"]
        out = []
        sizes = (facts["aut_2K2"], facts["aut_3K2"], facts["aut_2K3"])
        if sizes != (8, 48, 72):
            out.append(f"group orders {sizes}")
        if facts["pairs"] < 7552:
            out.append(f"only {facts['pairs']} pairs")
        return out
    _run(9, "composite exhaustive oracle", 60, _suite("composite-oracle", extra))


def test_criterion_10_eset_coding():
    def extra(rep):
        out = []
        if len(set(suites.TWIST_POOL)) != 10:
            out.append("twist pool is not 10 types")
        if rep["cases"] != 300:
            out.append(f"expected 300 checks, saw {rep['cases']}")
        return out
    _run(10, "E_set coding", 2, _suite("eset", extra))


def test_criterion_11_transport():
    def extra(rep):
        facts = rep["facts"]
        return [] if facts.get("C3_aut") == 3 and facts.get("TT4_aut") == 1 else ["unexpected groups"]
    _run(11, "hat and composite-digraph transport", 30, _suite("transport", extra))


def test_criterion_12_determinism():
    def body():
        first = dumps(suites.run_all(SEED))
        second = dumps(suites.run_all(SEED))
        problems = [] if first == second else ["re-run produced different bytes"]
        for name in suites.SUITES:
            if dumps(suites.run_suite(name, SEED)) != dumps(suites.run_suite(name, SEED)):
                problems.append(f"{name} not byte-identical")
        return problems
    _run(12, "determinism", None, body)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
