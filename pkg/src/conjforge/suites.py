"""Verification suites shared by ``conjforge verify`` and the acceptance tests.

Each suite returns a plain dict that serializes deterministically: the
same seed always produces the same bytes under :func:`core.dumps`.
Timings are deliberately left out of the report.
"""
from __future__ import annotations

import itertools
import random

from . import circular, composite, generic_digraphs as gd, generic_graphs as gg, qorder
from .core import (DIGRAPH, GRAPH, TOURNAMENT, FiniteStructure, automorphisms,
                   brute_force_conjugacy, brute_force_isomorphism, c3, embeds_tournament,
                   embeds_tournament_through, independent_set_free, is_In_free, is_Kn_free,
                   isomorphism_types, transitive_tournament, verify_automorphism,
                   verify_conjugacy_witness)
from .errors import ConjforgeError, InputError

DEFAULT_SEED = 0


class Report:
    def __init__(self, name: str, seed: int):
        self.name, self.seed = name, seed
        self.cases = 0
        self.failures: list = []
        self.facts: dict = {}

    def check(self, ok: bool, label: str):
        self.cases += 1
        if not ok:
            self.failures.append(label)

    def result(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "cases": self.cases,
                "passed": self.cases - len(self.failures), "failed": len(self.failures),
                "failures": self.failures[:20], "facts": self.facts}


def _shuffled_copy(s: FiniteStructure, rng: random.Random) -> FiniteStructure:
    vs = list(s.vertices)
    img = vs[:]
    rng.shuffle(img)
    return s.relabel(dict(zip(vs, img)))


def _random_chain(k: int, rng: random.Random) -> FiniteStructure:
    labels = rng.sample(range(3 * k + 3), k)
    return FiniteStructure.linear_order(labels)


# -- linear orders in Q -------------------------------------------------------------------

def suite_qorder_roundtrip(seed: int = DEFAULT_SEED) -> dict:
    rep = Report("qorder-roundtrip", seed)
    rng = random.Random(seed)
    for k in range(7):
        for L in (FiniteStructure.linear_order(range(k)), _random_chain(k, rng)):
            phi = qorder.build_phi_L(L)
            back = qorder.recover_order(phi)
            rep.check(brute_force_isomorphism(back, L) is not None, f"recover size {k}")
            expected = (qorder.UP,) + (qorder.FIXED, qorder.UP) * k
            rep.check(qorder.classify_orbitals(phi).types() == expected, f"types size {k}")
    return rep.result()


def matched_pl_pairs(rng: random.Random, count: int, max_knots: int = 6, tries: int = 400) -> list:
    """Seeded pairs of PL automorphisms (at most ``max_knots`` knots) with matching decompositions."""
    pairs = []
    while len(pairs) < count:
        phi = qorder.random_pl(rng, max_knots)
        d1 = qorder.classify_orbitals(phi)
        for _ in range(tries):
            psi = qorder.random_pl(rng, max_knots)
            if qorder.orbital_match(d1, qorder.classify_orbitals(psi)) is not None:
                pairs.append((phi, psi))
                break
    return pairs


def suite_glass_conjugator(seed: int = DEFAULT_SEED, pairs: int = 50, samples: int = 1000) -> dict:
    rep = Report("glass-conjugator", seed)
    rng = random.Random(seed)
    kinds = set()
    for idx, (phi, psi) in enumerate(matched_pl_pairs(rng, pairs)):
        dec = qorder.classify_orbitals(phi)
        kinds.add(dec.types())
        delta = qorder.build_conjugator(phi, psi)
        qs = sorted(set(qorder.sample_regions(dec, rng, samples)))
        ys = [delta(q) for q in qs]
        rep.check(all(delta(phi(q)) == psi(y) for q, y in zip(qs, ys)), f"pair {idx}: equation")
        rep.check(all(a < b for a, b in zip(ys, ys[1:])), f"pair {idx}: monotone")
        rep.check(len(qs) >= samples, f"pair {idx}: sample count")
    rep.facts["distinct_type_sequences"] = len(kinds)
    return rep.result()


def suite_conjugation_covariance(seed: int = DEFAULT_SEED, pairs: int = 100) -> dict:
    rep = Report("conjugation-covariance", seed)
    rng = random.Random(seed)
    for idx in range(pairs):
        g = qorder.random_pl(rng)
        phi = qorder.random_pl(rng)
        conj = g.compose(phi).compose(g.inverse())
        rep.check(qorder.classify_orbitals(conj).types() == qorder.classify_orbitals(phi).types(),
                  f"pair {idx}")
    return rep.result()


# -- circle structures ---------------------------------------------------------------------

def suite_sn(seed: int = DEFAULT_SEED) -> dict:
    rep = Report("sn", seed)
    rng = random.Random(seed)
    for n in (2, 3, 4):
        recovered = []
        for k in range(5):
            L = _random_chain(k, rng)
            phi = circular.build_phi_L_sn(L, n)
            reg = phi.registry
            size = len(reg.points)
            table = circular.relate_table(reg)
            rep.check(all(table[i * size + j] + table[j * size + i] == n - 1
                          for i in range(size) for j in range(i + 1, size)),
                      f"n={n} |L|={k}: antipodal")
            if n == 2:
                try:
                    circular.local_order(reg)
                    total = True
                except ConjforgeError:
                    total = False
                rep.check(total, f"|L|={k}: local order is a tournament")
            unrolled = {circular.unroll(reg, x) for x in reg.points}
            rep.check(len(unrolled) == size, f"n={n} |L|={k}: unroll injective")
            rep.check(circular.preserves_relations(phi), f"n={n} |L|={k}: preservation")
            back = circular.recover_order_sn(phi)
            rep.check(brute_force_isomorphism(back, L) is not None, f"n={n} |L|={k}: round trip")
            recovered.append((L, back))
            rep.facts[f"n{n}_L{k}_points"] = size
        for (a, ra), (b, rb) in itertools.product(recovered, repeat=2):
            same = brute_force_isomorphism(a, b) is not None
            rep.check(same == (brute_force_isomorphism(ra, rb) is not None), f"n={n}: soundness")
    return rep.result()


# -- layered constructions -------------------------------------------------------------------

def _with_relabelings(structs, rng):
    out = []
    for s in structs:
        out += [s, _shuffled_copy(s, rng)]
    return out


def suite_roundtrip_graphs(seed: int = DEFAULT_SEED, n: int = 3, levels: int = 1, cap: int = 3) -> dict:
    rep = Report("roundtrip-graphs", seed)
    rng = random.Random(seed)
    base = [G for k in range(5) for G in isomorphism_types(GRAPH, k) if is_Kn_free(G, n)]
    graphs = _with_relabelings(base, rng)
    quotients = []
    for idx, G in enumerate(graphs):
        ds = gg.build_reduction_graph(G, n, levels, cap)
        s, phi = ds.structure, ds.phi
        rep.check(len(s) == 0 or is_Kn_free(s, n), f"G{idx}: K_n-free")
        rep.check(verify_automorphism(s, phi), f"G{idx}: automorphism")
        rep.check(all(s.adjacent(v, phi[v]) == (ds.level_of(v) == 0) for v in s.vertices),
                  f"G{idx}: phi-adjacency dichotomy")
        q = gg.recover_base_graph(s, phi)
        rep.check(brute_force_isomorphism(q, G) is not None, f"G{idx}: recovery")
        quotients.append(q)
    for i, j in itertools.product(range(len(graphs)), repeat=2):
        same = brute_force_isomorphism(graphs[i], graphs[j]) is not None
        rep.check(same == (brute_force_isomorphism(quotients[i], quotients[j]) is not None),
                  f"pair {i},{j}")
    rep.facts["graphs"] = len(graphs)
    rep.facts["sizes"] = [len(q) for q in quotients]
    return rep.result()


def suite_roundtrip_tournaments(seed: int = DEFAULT_SEED, levels: int = 1, cap: int = 1) -> dict:
    rep = Report("roundtrip-tournaments", seed)
    rng = random.Random(seed)
    tours = _with_relabelings([T for k in range(5) for T in isomorphism_types(TOURNAMENT, k)], rng)
    quotients = []
    for idx, T in enumerate(tours):
        ds = gd.build_reduction_tournament(T, levels, cap)
        for k in range(len(ds.levels)):
            sub = ds.level_structure(k)
            try:
                FiniteStructure(TOURNAMENT, sub.vertices, sub.edges)
                ok = True
            except ConjforgeError:
                ok = False
            rep.check(ok, f"T{idx} level {k}: tournament")
        rset = gd.recovery_set_digraph(ds.structure, ds.phi)
        rep.check(set(rset) == set(ds.levels[0]), f"T{idx}: recovery set is level 0")
        q = gd.recover_base_digraph(ds)
        rep.check(brute_force_isomorphism(q, T) is not None, f"T{idx}: recovery")
        quotients.append(q)
    for i, j in itertools.product(range(len(tours)), repeat=2):
        same = brute_force_isomorphism(tours[i], tours[j]) is not None
        rep.check(same == (brute_force_isomorphism(quotients[i], quotients[j]) is not None),
                  f"pair {i},{j}")
    rep.facts["tournaments"] = len(tours)
    return rep.result()


def _point():
    return FiniteStructure.tournament([0], [])


def _arrow():
    return FiniteStructure.tournament([0, 1], [(0, 1)])


def _signatures_realized(ds, n: int, cap: int) -> bool:
    """Every qualifying ``(S, S')`` over each earlier prefix has a vertex with that exact signature."""
    s = ds.structure
    for level in range(1, len(ds.levels)):
        old = [v for lvl in ds.levels[:level] for v in lvl]
        host = s.induced(old)
        new = set(ds.levels[level])
        for total in itertools.chain.from_iterable(itertools.combinations(old, r) for r in range(cap + 1)):
            for r in range(len(total) + 1):
                for s_prime in itertools.combinations(total, r):
                    if r >= n - 1 and not independent_set_free(host, s_prime, n - 1):
                        continue
                    sub = [v for v in total if v not in s_prime]
                    v = ds.vertex_for(level, sub, s_prime)
                    if v is None or v not in new:
                        return False
                    for a in old:
                        want = "in" if a in sub else ("none" if a in s_prime else "out")
                        got = "in" if (a, v) in s.edges else ("out" if (v, a) in s.edges else "none")
                        if want != got:
                            return False
    return True


def suite_infree_forbidden(seed: int = DEFAULT_SEED) -> dict:
    rep = Report("infree-forbidden", seed)
    n = 3
    for label, T, levels, cap in (("point", _point(), 2, 1), ("arrow", _arrow(), 1, 2)):
        ds = gd.build_reduction_In_free(T, n, levels, cap)
        for k in range(len(ds.levels)):
            rep.check(is_In_free(ds.level_structure(k), n), f"Lambda {label} level {k}: I_3-free")
        rep.check(_signatures_realized(ds, n, cap), f"Lambda {label}: signatures realized")
        rep.check(set(gd.recovery_set_digraph(ds.structure, ds.phi)) == set(ds.levels[0]),
                  f"Lambda {label}: recovery set")
        rep.facts[f"lambda_{label}_vertices"] = len(ds)
    G = FiniteStructure.digraph([0, 1], [(0, 1)])
    F = (c3(),)
    ds = gd.build_reduction_forbidden(G, F, 1, 4)
    rep.check(not embeds_tournament(c3(), ds.structure), "Gamma_F: no C_3")
    rep.check(len(ds.skipped) > 0, "Gamma_F: skip rule fired")
    old = sorted(ds.levels[0])
    host = ds.structure.induced(old)
    probe = max(old) + 1
    confirmed = 0
    for _, sub in ds.skipped:
        edges = set(host.edges) | {(u, probe) for u in sub} | {(probe, a) for a in old if a not in sub}
        trial = FiniteStructure(DIGRAPH, tuple(old) + (probe,), frozenset(edges))
        confirmed += embeds_tournament_through(c3(), trial, probe)
    rep.check(confirmed == len(ds.skipped), "Gamma_F: every skip justified")
    rep.facts["gamma_f_vertices"] = len(ds)
    rep.facts["gamma_f_skipped"] = len(ds.skipped)
    return rep.result()


def suite_multipartite(seed: int = DEFAULT_SEED, cap: int = 2) -> dict:
    rep = Report("multipartite", seed)
    for label, T, levels in (("point", _point(), 2), ("arrow", _arrow(), 1)):
        for n in (2, 3):
            ds = gd.build_reduction_multipartite(T, n, levels, cap)
            parts = gd.parts_of(ds)
            for k in range(len(ds.levels)):
                keep = {v for lvl in ds.levels[:k + 1] for v in lvl}
                sub = ds.structure.induced(keep)
                rep.check(gd.is_complete_multipartite(sub, [[v for v in p if v in keep] for p in parts]),
                          f"{label} n={n} level {k}: complete {n}-partite")
            images = [{ds.phi[v] for v in p} for p in parts]
            expect = [set(parts[1]), set(parts[0])] + [set(p) for p in parts[2:]]
            rep.check(images == expect, f"{label} n={n}: part action")
            q = gd.recover_base_digraph(ds)
            rep.check(brute_force_isomorphism(q, T) is not None, f"{label} n={n}: recovery")
            rep.facts[f"{label}_n{n}_vertices"] = len(ds)
    return rep.result()


# -- composite ---------------------------------------------------------------------------------

def suite_composite_oracle(seed: int = DEFAULT_SEED) -> dict:
    rep = Report("composite-oracle", seed)
    total = 0
    for m, n in ((2, 2), (3, 2), (2, 3)):
        G = composite.composite_structure(m, n)
        vmaps = automorphisms(G)
        auts = [composite.from_vertex_map(f, m, n) for f in vmaps]
        rep.facts[f"aut_{m}K{n}"] = len(auts)
        agree = witnesses = 0
        for i, j in itertools.product(range(len(auts)), repeat=2):
            verdict = composite.decide_conjugacy(auts[i], auts[j])
            oracle = brute_force_conjugacy(G, vmaps[i], vmaps[j]) is not None
            agree += verdict == oracle
            if verdict:
                delta = composite.to_vertex_map(composite.build_conjugator_composite(auts[i], auts[j]))
                ok = verify_automorphism(G, delta) and verify_conjugacy_witness(vmaps[i], vmaps[j], delta)
                witnesses += ok
                rep.check(ok, f"{m}K{n} witness {i},{j}")
            total += 1
        pairs = len(auts) ** 2
        rep.check(agree == pairs, f"{m}K{n}: verdicts agree ({agree}/{pairs})")
        rep.facts[f"witnesses_{m}K{n}"] = witnesses
        rep.facts[f"classes_{m}K{n}"] = len({composite.invariant(a) for a in auts})
    rep.facts["pairs"] = total
    return rep.result()


TWIST_POOL = tuple(composite.TwistType(t, True) for t in
                   ((2,), (3,), (2, 2), (4,), (3, 2), (5,), (2, 2, 2), (4, 2), (3, 3), (6,)))


def _enumerate(rng, items):
    seq = list(items) + [rng.choice(items) for _ in range(rng.randint(0, 3))] if items else []
    rng.shuffle(seq)
    return seq


def suite_eset(seed: int = DEFAULT_SEED, rounds: int = 100) -> dict:
    rep = Report("eset", seed)
    rng = random.Random(seed)
    for idx in range(rounds):
        a = rng.sample(TWIST_POOL, rng.randint(0, len(TWIST_POOL)))
        while True:
            b = rng.sample(TWIST_POOL, rng.randint(0, len(TWIST_POOL)))
            if set(b) != set(a):
                break
        e1, e2, e3 = _enumerate(rng, a), _enumerate(rng, a), _enumerate(rng, b)
        d1, d2, d3 = (composite.decode_eset(e) for e in (e1, e2, e3))
        rep.check(composite.encode_eset(d1) == composite.eset_for(a), f"round {idx}: encode . decode")
        rep.check(composite.invariant(d1) == composite.invariant(d2), f"round {idx}: equal sets")
        rep.check(composite.invariant(d1) != composite.invariant(d3), f"round {idx}: unequal sets")
    return rep.result()


def _lifts(T):
    hat = gd.build_hat(T)
    return (
        ("hat", hat, lambda f: gd.hat_lift(T, f, False)),
        ("hat+swap", hat, lambda f: gd.hat_lift(T, f, True)),
        ("sum", composite.sum_structure(T, 2), lambda f: composite.direct_sum_id(T, f, 2)),
        ("blowup", composite.blowup_structure(T, 2), lambda f: composite.blowup(T, f, 2)),
    )


def _witness_lift(name, T, delta):
    if name.startswith("hat"):
        return gd.hat_lift(T, delta, False)
    if name == "sum":
        order = sorted(T.vertices)
        idx = {v: i for i, v in enumerate(order)}
        size = len(order)
        return {c * size + idx[v]: c * size + idx[delta[v]] for c in range(2) for v in order}
    return composite.blowup(T, delta, 2)


def suite_transport(seed: int = DEFAULT_SEED) -> dict:
    rep = Report("transport", seed)
    for tname, T in (("C3", c3()), ("TT4", transitive_tournament(4))):
        auts = automorphisms(T)
        for name, host, lift in _lifts(T):
            for i, j in itertools.product(range(len(auts)), repeat=2):
                phi, psi = auts[i], auts[j]
                delta = brute_force_conjugacy(T, phi, psi)
                lp, lq = lift(phi), lift(psi)
                label = f"{tname} {name} {i},{j}"
                rep.check(verify_automorphism(host, lp) and verify_automorphism(host, lq), label + ": lifts")
                if delta is not None:
                    w = _witness_lift(name, T, delta)
                    rep.check(verify_automorphism(host, w) and verify_conjugacy_witness(lp, lq, w),
                              label + ": witness")
                else:
                    rep.check(brute_force_conjugacy(host, lp, lq) is None, label + ": stays non-conjugate")
        rep.facts[f"{tname}_aut"] = len(auts)
    return rep.result()


SUITES = {
    "qorder-roundtrip": suite_qorder_roundtrip,
    "glass-conjugator": suite_glass_conjugator,
    "conjugation-covariance": suite_conjugation_covariance,
    "sn": suite_sn,
    "roundtrip-graphs": suite_roundtrip_graphs,
    "roundtrip-tournaments": suite_roundtrip_tournaments,
    "infree-forbidden": suite_infree_forbidden,
    "multipartite": suite_multipartite,
    "composite-oracle": suite_composite_oracle,
    "eset": suite_eset,
    "transport": suite_transport,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> dict:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all")
    return SUITES[name](seed)


def run_all(seed: int = DEFAULT_SEED) -> dict:
    results = [SUITES[name](seed) for name in SUITES]
    return {"seed": seed, "suites": results,
            "passed": sum(r["passed"] for r in results),
            "failed": sum(r["failed"] for r in results)}
