"""Command line front end: ``conjforge {build,invariants,conjugacy,verify,export}``.

Exit codes: 0 success, 1 a verification suite reported failures, 2 bad
input, 3 invariant violation, 4 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import circular, composite, generic_digraphs as gd, generic_graphs as gg, qorder, suites
from .core import (GRAPH, LINEAR_ORDER, dumps, map_to_json, structure_from_json,
                   structure_to_json, to_dot)
from .errors import ConjforgeError, InputError
from .layered import layered_from_json, layered_to_dot, layered_to_json

BUILD_KINDS = ("graph-reduction", "tournament-reduction", "infree-reduction", "forbidden-reduction",
               "multipartite-reduction", "hat", "phiL", "phiL-sn", "eset-decode")
INVARIANT_KINDS = ("orbital", "composite", "eset", "recover-order", "recover-order-sn", "recover-base")
CONJUGACY_KINDS = ("composite", "pl")


def _load(path):
    if path is None:
        raise InputError("--input is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _structure(args, path=None):
    return structure_from_json(_load(path or args.input))


def _order(args):
    L = _structure(args)
    if L.kind != LINEAR_ORDER:
        raise InputError("expected a linear order")
    return L


def _layered_out(args, ds):
    if args.format == "dot":
        return layered_to_dot(ds)
    return dumps(layered_to_json(ds))


def cmd_build(args) -> int:
    kind = args.kind
    if kind == "graph-reduction":
        n = 3 if args.n is None else args.n
        cap = 3 if args.cap is None else args.cap
        out = _layered_out(args, gg.build_reduction_graph(_structure(args), n, args.levels, cap))
    elif kind == "tournament-reduction":
        cap = 1 if args.cap is None else args.cap
        out = _layered_out(args, gd.build_reduction_tournament(_structure(args), args.levels, cap))
    elif kind == "infree-reduction":
        n = 3 if args.n is None else args.n
        cap = 1 if args.cap is None else args.cap
        out = _layered_out(args, gd.build_reduction_In_free(_structure(args), n, args.levels, cap))
    elif kind == "forbidden-reduction":
        if args.input2 is None:
            raise InputError("--input2 must name the forbidden family JSON")
        family = gd.family_from_json(_load(args.input2))
        cap = 2 if args.cap is None else args.cap
        out = _layered_out(args, gd.build_reduction_forbidden(_structure(args), family, args.levels, cap))
    elif kind == "multipartite-reduction":
        n = 2 if args.n is None else args.n
        cap = 2 if args.cap is None else args.cap
        out = _layered_out(args, gd.build_reduction_multipartite(_structure(args), n, args.levels, cap))
    elif kind == "hat":
        hat = gd.build_hat(_structure(args))
        out = to_dot(hat, "Hat") if args.format == "dot" else dumps(structure_to_json(hat))
    elif kind == "phiL":
        out = dumps(qorder.pl_to_json(qorder.build_phi_L(_order(args))))
    elif kind == "phiL-sn":
        n = 2 if args.n is None else args.n
        out = dumps(circular.sn_automorphism_to_json(circular.build_phi_L_sn(_order(args), n)))
    elif kind == "eset-decode":
        data = _load(args.input)
        if not isinstance(data, list):
            raise InputError("eset-decode expects a JSON list of cycle-length lists")
        twists = [composite.TwistType(tuple(t), True) for t in data]
        out = dumps(composite.composite_to_json(composite.decode_eset(twists)))
    else:
        raise InputError(f"unknown build kind {kind!r}")
    _emit(args, out)
    return 0


def cmd_invariants(args) -> int:
    kind = args.kind
    data = _load(args.input)
    if kind == "orbital":
        out = qorder.decomposition_to_json(qorder.classify_orbitals(qorder.pl_from_json(data)))
    elif kind == "composite":
        out = composite.invariant(composite.composite_from_json(data)).to_json()
    elif kind == "eset":
        out = composite.eset_to_json(composite.encode_eset(composite.composite_from_json(data)))
    elif kind == "recover-order":
        out = structure_to_json(qorder.recover_order(qorder.pl_from_json(data)))
    elif kind == "recover-order-sn":
        out = structure_to_json(circular.recover_order_sn(circular.sn_automorphism_from_json(data)))
    elif kind == "recover-base":
        ds = layered_from_json(data)
        if ds.structure.kind == GRAPH:
            out = structure_to_json(gg.recover_base_graph(ds))
        else:
            out = structure_to_json(gd.recover_base_digraph(ds))
    else:
        raise InputError(f"unknown invariant kind {kind!r}")
    _emit(args, dumps(out))
    return 0


def cmd_conjugacy(args) -> int:
    if args.input2 is None:
        raise InputError("--input2 is required")
    a, b = _load(args.input), _load(args.input2)
    if args.kind == "composite":
        phi, psi = composite.composite_from_json(a), composite.composite_from_json(b)
        verdict = composite.decide_conjugacy(phi, psi)
        witness = composite.composite_to_json(composite.build_conjugator_composite(phi, psi)) if verdict else None
    elif args.kind == "pl":
        phi, psi = qorder.pl_from_json(a), qorder.pl_from_json(b)
        d1, d2 = qorder.classify_orbitals(phi), qorder.classify_orbitals(psi)
        verdict = qorder.orbital_match(d1, d2) is not None
        witness = None
        if verdict:
            delta = qorder.build_conjugator(phi, psi)
            rng = random.Random(args.seed)
            qs = qorder.sample_regions(d1, rng, args.samples)
            witness = {"samples": [[qorder.rat_str(q), qorder.rat_str(delta(q))] for q in qs]}
    else:
        raise InputError(f"unknown conjugacy kind {args.kind!r}")
    report = {"verdict": "conjugate" if verdict else "not conjugate"}
    if witness is not None and not args.out:
        report["witness"] = witness
    sys.stdout.write(dumps(report) + "\n")
    if witness is not None and args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(witness) + "\n")
    return 0


def cmd_verify(args) -> int:
    name = args.suite
    seed = 0 if args.seed is None else args.seed
    report = suites.run_all(seed) if name == "all" else suites.run_suite(name, seed)
    _emit(args, dumps(report))
    return 0 if report["failed"] == 0 else 1


def cmd_export(args) -> int:
    data = _load(args.input)
    if isinstance(data, dict) and "mode" in data:
        ds = layered_from_json(data)
        out = layered_to_dot(ds) if args.format == "dot" else dumps(layered_to_json(ds))
    elif isinstance(data, dict) and "kind" in data:
        s = structure_from_json(data)
        out = to_dot(s) if args.format == "dot" else dumps(structure_to_json(s))
    elif isinstance(data, dict) and "knots" in data:
        if args.format == "dot":
            raise InputError("PL automorphisms have no DOT rendering")
        out = dumps(qorder.pl_to_json(qorder.pl_from_json(data)))
    else:
        raise InputError("cannot tell what the input file describes")
    _emit(args, out)
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conjforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kinds=None):
        if kinds:
            sp.add_argument("--kind", required=True, choices=kinds)
        sp.add_argument("--input")
        sp.add_argument("--input2")
        sp.add_argument("--n", type=int)
        sp.add_argument("--levels", type=int, default=1)
        sp.add_argument("--cap", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=1000)
        sp.add_argument("--format", choices=("json", "dot"), default="json")
        sp.add_argument("--out")

    common(sub.add_parser("build", help="build a structure or reduction"), BUILD_KINDS)
    common(sub.add_parser("invariants", help="compute an invariant or recovery"), INVARIANT_KINDS)
    common(sub.add_parser("conjugacy", help="decide conjugacy and emit a witness"), CONJUGACY_KINDS)
    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default="all")
    common(sub.add_parser("export", help="re-serialize as JSON or DOT"))
    return p


COMMANDS = {"build": cmd_build, "invariants": cmd_invariants, "conjugacy": cmd_conjugacy,
            "verify": cmd_verify, "export": cmd_export}


def _check_config(args):
    if args.levels < 0:
        raise InputError("--levels must be >= 0")
    if args.cap is not None and args.cap < 0:
        raise InputError("--cap must be >= 0")
    if args.samples < 1:
        raise InputError("--samples must be >= 1")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        _check_config(args)
        return COMMANDS[args.command](args)
    except ConjforgeError as exc:
        print(f"conjforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
