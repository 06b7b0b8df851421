"""Command-line front end.

JSON goes to stdout, human summaries to stderr. Exit status: 0 when the
object was built or the property verified, 1 when a property fails, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import algebra_checks as alg
from . import code_builder as cb
from . import witness_walks as ww
from .errors import SymdiffError
from .interval_union import count_unions, iter_unions
from .value_space import PointSet

ENUMERATE_LIMIT = 1_000_000


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep usage on stderr
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(obj: dict, out: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_construct(args) -> int:
    code = cb.build_code(args.n, args.d, args.k)
    bad = code.odd_violations()
    if bad:
        _emit({"error": "parity property violated", "even_unions": bad})
        return 1
    _emit(code.to_json(), args.out)
    _note(f"witness of {len(code.witness)} points; odd on all unions of <= {code.k} intervals")
    return 0


def cmd_verify_code(args) -> int:
    with open(args.infile) as fh:
        obj = json.load(fh)
    if "witness_edges" in obj:
        g = cb.GraphParityCode.from_json(obj)
        bad = g.odd_violations()
        _emit({"kind": "graph", "n": g.n, "valid": not bad, "even_cliques": bad})
        return 0 if not bad else 1
    code = cb.ParityCode.from_json(obj)
    bad = code.odd_violations()
    result = {"kind": "parity", "n": code.n, "d": code.d, "k": code.k, "valid": not bad, "even_unions": bad}
    if not bad and args.exhaustive:
        rep = cb.exhaustive_flip_check(code)
        result["exhaustive"] = rep.to_json()
        result["half_density"] = rep.members * 2 == rep.checked_subsets
        result["valid"] = rep.ok and result["half_density"]
    elif not bad and args.samples:
        rep, frac = cb.sampled_flip_check(code, args.samples, args.seed)
        result["sampled"] = rep.to_json()
        result["member_fraction"] = frac
        result["valid"] = rep.ok
    _emit(result)
    return 0 if result["valid"] else 1


def cmd_rank(args) -> int:
    rep = alg.verify_independence(args.n, args.d, args.k)
    _emit(rep.to_json(timing=args.timing))
    _note(f"rank {rep.rank} of {rep.rows}x{rep.cols} in {rep.elapsed_ms:.1f} ms")
    return 0


def cmd_counts(args) -> int:
    n, k = args.n, args.k
    from math import comb

    boundary = sum(comb(n + 1, 2 * j) for j in range(1, k + 1))
    pascal = sum(comb(n, i) for i in range(1, 2 * k + 1))
    result = {"n": n, "k": k, "boundary_formula": boundary, "pascal_formula": pascal}
    agree = boundary == pascal == count_unions(n, k)
    if boundary <= ENUMERATE_LIMIT:
        enumerated = sum(1 for _ in iter_unions(n, k))
        result["enumerated"] = enumerated
        agree = agree and enumerated == boundary
    result["agree"] = agree
    _emit(result)
    return 0 if agree else 1


def cmd_lemma_omega(args) -> int:
    if args.random is not None:
        rng = np.random.default_rng(args.seed)
        cases = []
        for _ in range(args.random):
            n, d, a, pos = alg.random_omega_instance(rng, max_n=args.n, ds=(args.d,))
            cases.append({"n": n, "d": d, "a": list(a), "L": list(pos), "holds": alg.check_omega_identity(n, d, a, pos)})
        ok = all(c["holds"] for c in cases)
        _emit({"instances": len(cases), "holds": ok, "failures": [c for c in cases if not c["holds"]]})
        return 0 if ok else 1
    if args.a is None:
        raise SymdiffError("lemma-omega needs --a (with --L) or --random")
    holds = alg.check_omega_identity(args.n, args.d, args.a, args.L or [])
    _emit({"n": args.n, "d": args.d, "a": args.a, "L": args.L or [], "holds": holds})
    return 0 if holds else 1


def cmd_odd_walk(args) -> int:
    walk = ww.odd_closed_walk(args.n, args.d, args.k)
    if not ww.verify_walk(walk, args.n, args.d, args.k):
        _emit({"error": "walk failed verification"})
        return 1
    _emit(walk.to_json(), args.out)
    _note(f"closed walk of odd length {walk.length}")
    return 0


def cmd_verify_walk(args) -> int:
    with open(args.infile) as fh:
        walk = ww.Walk.from_json(json.load(fh), args.n, args.d)
    ok = ww.verify_walk(walk, args.n, args.d, args.k)
    _emit({"valid": ok, "length": walk.length, "odd": walk.length % 2 == 1, "closed": walk.closed})
    return 0 if ok else 1


def cmd_bipartite(args) -> int:
    res = ww.bfs_bipartite(args.n, args.d, args.k)
    out = res.to_json()
    if res.odd_cycle is not None:
        out["odd_cycle_verified"] = ww.verify_walk(res.odd_cycle, args.n, args.d, args.k)
        if not out["odd_cycle_verified"]:
            _emit(out)
            return 1
    _emit(out)
    _note("bipartite" if res.bipartite else f"not bipartite: odd cycle of length {res.odd_cycle.length}")
    return 0


def cmd_graph_code(args) -> int:
    g = cb.build_graph_code(args.n)
    bad = g.odd_violations()
    if bad:
        _emit({"error": "parity property violated", "even_cliques": bad})
        return 1
    _emit(g.to_json(), args.out)
    return 0


def cmd_expand(args) -> int:
    unions = alg.expand_valueset(args.T, args.n, args.d)
    _emit({"n": args.n, "d": args.d, "T": sorted(set(args.T)), "unions": [str(s) for s in unions], "verified": True})
    return 0


def cmd_restrict(args) -> int:
    with open(args.infile) as fh:
        obj = json.load(fh)
    n, d = int(obj["n"]), int(obj["d"])
    family = [PointSet.from_points(a, n, d) for a in obj["family"]]
    res = cb.restrict_to_best_slice(family, args.N)
    out = res.to_json()
    out["density_non_decreasing"] = res.density_after >= res.density_before
    _emit(out)
    return 0 if out["density_non_decreasing"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symdiff-codes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("construct", help="build a parity-code certificate")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify-code", help="re-verify a parity or graph certificate")
    s.add_argument("--in", dest="infile", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_code)

    s = sub.add_parser("rank", help="independence report for the inclusion matrix")
    for flag in ("--n", "--d", "--k"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("counts", help="count unions of at most k intervals")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_counts)

    s = sub.add_parser("lemma-omega", help="check the signed omega identity")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--a", type=_ints)
    s.add_argument("--L", type=_ints)
    s.add_argument("--random", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_lemma_omega)

    s = sub.add_parser("odd-walk", help="emit the odd closed walk for k > d/2")
    for flag in ("--n", "--d", "--k"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_odd_walk)

    s = sub.add_parser("verify-walk", help="re-verify a walk certificate")
    s.add_argument("--in", dest="infile", required=True)
    for flag in ("--n", "--d", "--k"):
        s.add_argument(flag, type=int, required=True)
    s.set_defaults(func=cmd_verify_walk)

    s = sub.add_parser("bipartite", help="BFS 2-colouring of the explicit graph")
    for flag in ("--n", "--d", "--k"):
        s.add_argument(flag, type=int, required=True)
    s.set_defaults(func=cmd_bipartite)

    s = sub.add_parser("graph-code", help="build the interval-clique graph code")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_graph_code)

    s = sub.add_parser("expand", help="write 1_V(T) as a XOR of powers S^d")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--T", type=_ints, required=True)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("restrict", help="averaging step: best slice of a family")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(func=cmd_restrict)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SymdiffError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _note(f"{parser.prog} {args.command}: {exc}")
        parser.print_usage(sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
