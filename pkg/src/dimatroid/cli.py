"""Command-line entry point: ``dimatroid <command> ...``.

Exit codes: 0 completed, 1 usage or input error, 2 a result contradicted a
theorem (internal invariant violation), 3 ``search`` found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from typing import Any, Sequence

from .covers import beta_exact, beta_matroid, beta_star, beta_star_lp, minimal_fractional_cover, zeta
from .errors import DimatroidError, InvariantViolation
from .fair import Partition, fair_rep_matroid, fair_rep_two_blocks, fairness_report
from .intersection import Dimatroid, exchange_walk, max_common_independent, max_marked_common_independent
from .lab import checks
from .lab.instances import GENERATE_KINDS, Instance, dump_instance, generate, load_instance
from .lab.report import rational, write_report
from .lab.search import DEFAULT_MAX_N, SEARCHES, search
from .sets import ElementSet

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: Any) -> str:
    if isinstance(x, Fraction):
        return rational(x)
    if isinstance(x, ElementSet):
        return "{" + ", ".join(map(str, x.members())) + "}"
    return str(x)


def _parse_set(inst: Instance, text: str) -> ElementSet:
    """``"0,2,5"``; element names from the instance's ``elements`` list also work."""
    if text in inst.sets:
        return inst.element_set(text)
    names = {name: i for i, name in enumerate(inst.elements or [])}
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok in names:
            out.append(names[tok])
        elif tok.lstrip("-").isdigit():
            out.append(int(tok))
        else:
            raise UsageError(f"unknown element {tok!r}")
    return ElementSet(inst.n, out)


def _matroid(inst: Instance, which: str):
    m = inst.P if which == "P" else inst.Q
    if m is None:
        raise UsageError(f"instance has no matroid {which}")
    return m


def _dimatroid(inst: Instance) -> Dimatroid:
    if inst.Q is None:
        raise UsageError("this command needs an instance with both P and Q")
    return inst.dimatroid()


def cmd_rank(args, inst):
    m = _matroid(inst, args.which)
    s = _parse_set(inst, args.set) if args.set is not None else ElementSet.full(m.n)
    r = m.rank(s)
    return {"set": s, "rank": r, "independent": m.is_independent(s)}, [
        f"rank{_fmt(s)} = {r}", f"independent: {m.is_independent(s)}"]


def cmd_zeta(args, inst):
    m = _matroid(inst, args.which)
    z = zeta(m)
    return {"zeta": z}, [f"zeta({args.which}) = {_fmt(z)}"]


def cmd_beta(args, inst):
    if inst.Q is None:
        rep = beta_matroid(inst.P)
    else:
        rep = beta_exact(inst.dimatroid())
    lines = [f"beta = {rep.value}  ({rep.method})"]
    lines += [f"  {_fmt(e)}" for e in rep.witness]
    return {"beta": rep}, lines


def cmd_beta_star(args, inst):
    d = inst.dimatroid() if inst.Q is not None else Dimatroid(inst.P, inst.P)
    value = beta_star(d)
    out: dict[str, Any] = {"beta_star": value}
    lines = [f"beta* = max(zeta(P), zeta(Q)) = {_fmt(value)}"]
    if args.lp:
        cover = beta_star_lp(d)
        out["lp_cover"] = cover
        lines.append(f"LP optimum = {_fmt(cover.total)}")
        if cover.total != value:
            raise InvariantViolation("fractional cover number",
                                     f"LP optimum {cover.total} differs from {value}")
    return out, lines


def cmd_frac_cover(args, inst):
    d = _dimatroid(inst)
    z = beta_star(d)
    g = args.g if args.g is not None else int(d.n // z)
    cover = minimal_fractional_cover(d, g, columns=args.columns)
    lines = [f"g = {g}, total = {_fmt(cover.total)}"]
    lines += [f"  {_fmt(w)} x {_fmt(e)}" for e, w in cover.entries]
    return {"g": g, "cover": cover}, lines


def cmd_intersect(args, inst):
    d = _dimatroid(inst)
    if args.marked is None:
        s = max_common_independent(d)
        return {"set": s, "size": len(s)}, [f"max common independent: {_fmt(s)} (size {len(s)})"]
    a = _parse_set(inst, args.marked)
    if args.g is None:
        raise UsageError("--marked needs --g")
    s = max_marked_common_independent(d, a, args.g)
    return {"set": s, "marked": len(s & a)}, [
        f"size-{args.g} common set with most marked: {_fmt(s)} (marked {len(s & a)})"]


def cmd_exchange_walk(args, inst):
    d = _dimatroid(inst)
    walk = exchange_walk(d, _parse_set(inst, args.S), _parse_set(inst, args.T))
    lines = [f"s order: {list(walk.s_order)}", f"t order: {list(walk.t_order)}"]
    lines += [f"  R_{i + 1} = {_fmt(r)}" for i, r in enumerate(walk.intermediates)]
    return {"walk": walk}, lines


def cmd_fair_rep(args, inst):
    if inst.Q is None:
        if inst.partition is None:
            raise UsageError("a single-matroid instance needs a 'partition'")
        part = Partition(inst.n, inst.partition)
        s = fair_rep_matroid(inst.P, part)
        rep = fairness_report(s, part, 1 / zeta(inst.P))
        return {"set": s, "report": rep}, [f"fair set: {_fmt(s)}", *_report_lines(rep)]
    d = inst.dimatroid()
    if args.A is not None:
        a = _parse_set(inst, args.A)
    elif inst.partition is not None and len(inst.partition) == 2:
        a = ElementSet(inst.n, inst.partition[0])
    else:
        raise UsageError("give --A or a two-block 'partition'")
    trace = fair_rep_two_blocks(d, a)
    lines = [f"n = {trace.n}, zeta = {_fmt(trace.zeta)}, g = {trace.g}, delta = {_fmt(trace.delta)}",
             f"S = {_fmt(trace.S)}", f"T = {_fmt(trace.T) if trace.T is not None else '-'}",
             f"walk used: {trace.walk is not None}",
             f"chosen = {_fmt(trace.chosen)}", *_report_lines(trace.report)]
    return {"trace": trace}, lines


def _report_lines(rep) -> list[str]:
    return [f"  block {i}: |A|={b.size} need {b.required_fair} (almost {b.required_almost}) "
            f"got {b.achieved} -> {b.verdict}" for i, b in enumerate(rep.blocks)]


def _blocks_arg(text: str) -> list[list[int]]:
    return [[int(x) for x in blk.split(",") if x.strip()] for blk in text.split(";")]


def cmd_check(args, inst):
    name = args.name
    label = inst.label if inst is not None else name
    if name in ("path", "path-strong"):
        if args.n is not None:
            n = args.n
            blocks = _blocks_arg(args.blocks) if args.blocks else [list(range(n))]
        elif inst is not None and inst.partition is not None:
            n, blocks = inst.n, inst.partition
        else:
            raise UsageError("path checks need --n [--blocks] or an instance with a partition")
        fn = checks.check_path_theorem if name == "path" else checks.check_path_strong_conjecture
        res = fn(n, blocks, label, **({"max_n": args.max_n} if args.max_n else {}))
    else:
        if inst is None:
            raise UsageError(f"check {name} needs an instance file")
        cap = {"max_n": args.max_n} if args.max_n else {}
        if name == "betaint":
            d = _dimatroid(inst)
            res = checks.check_betaint(d.P, d.Q, label, **cap)
        elif name == "fair":
            if inst.partition is None:
                raise UsageError("check fair needs a 'partition'")
            res = checks.check_fair_conjecture(_dimatroid(inst), inst.partition, label, **cap)
        elif name == "balanced-union":
            res = checks.check_balanced_union(_dimatroid(inst), inst.element_set("C"),
                                              inst.element_set("E"), label, **cap)
        elif name in ("two-trees", "konig"):
            if inst.graph is None:
                raise UsageError(f"check {name} needs a 'graph'")
            edge_cap = {"max_edges": args.max_n} if args.max_n else {}
            if name == "konig":
                res = checks.check_konig(inst.graph, label, **edge_cap)
            else:
                a = inst.sets.get("A", [])
                res = checks.check_two_trees(inst.graph, a, label, **edge_cap)
        else:
            raise UsageError(f"unknown check {name!r}")
    return {"result": res}, _result_lines([res])


CHECK_NAMES = ("betaint", "fair", "path", "path-strong", "two-trees", "balanced-union", "konig")


def _result_lines(results) -> list[str]:
    lines = []
    for r in results:
        detail = ", ".join(f"{k}={_fmt(v)}" for k, v in r.details.items()
                           if not isinstance(v, (dict, list)))
        lines.append(f"{r.check:<24} {r.label:<28} {r.verdict:<15} {detail}")
    return lines


def cmd_examples(args, inst):
    res = checks.reproduce_worked_examples()
    return {"results": res}, _result_lines(res)


def cmd_generate(args, inst):
    params: dict[str, Any] = {}
    for kv in args.param or []:
        if "=" not in kv:
            raise UsageError(f"parameter {kv!r} is not key=value")
        k, v = kv.split("=", 1)
        params[k] = [int(x) for x in v.split(",")] if k in ("parts", "caps") else v
    out = generate(args.kind, params, args.seed)
    if args.output:
        dump_instance(out, args.output)
    return {"instance": out.to_json()}, [json.dumps(out.to_json(), sort_keys=True)]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dimatroid", description=__doc__.splitlines()[0])
    p.add_argument("--json", metavar="PATH", help="also write a machine-readable report")
    p.add_argument("--timings", action="store_true", help="include timings in the JSON report")
    # Same options after the subcommand; SUPPRESS keeps the top-level value otherwise.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    def with_file(name, help_):
        sp = add(name, help=help_)
        sp.add_argument("instance", help="instance JSON file")
        return sp

    sp = with_file("rank", "rank of a set (default: the ground set)")
    sp.add_argument("--which", choices="PQ", default="P")
    sp.add_argument("--set", help="comma-separated elements")
    sp = with_file("zeta", "density max |S|/rank(S)")
    sp.add_argument("--which", choices="PQ", default="P")
    with_file("beta", "edge-cover number with a witness cover")
    sp = with_file("beta-star", "fractional cover number")
    sp.add_argument("--lp", action="store_true", help="cross-check with the exact LP")
    sp = with_file("frac-cover", "optimal fractional cover of the truncated intersection")
    sp.add_argument("--g", type=int)
    sp.add_argument("--columns", choices=("size_g", "all"), default="size_g")
    sp = with_file("intersect", "maximum common independent set")
    sp.add_argument("--marked")
    sp.add_argument("--g", type=int)
    sp = with_file("exchange-walk", "exchange walk between two common independent sets")
    sp.add_argument("--S", required=True)
    sp.add_argument("--T", required=True)
    sp = with_file("fair-rep", "fair (matroid) or almost-fair (two blocks) representation")
    sp.add_argument("--A")

    sp = add("check", help="run one theorem/conjecture check")
    sp.add_argument("name", choices=CHECK_NAMES)
    sp.add_argument("instance", nargs="?")
    sp.add_argument("--n", type=int, help="path length for path checks")
    sp.add_argument("--blocks", help="blocks for path checks, e.g. '0,1;2,3'")
    sp.add_argument("--max-n", type=int, help="override the size cap")

    add("examples", help="reproduce the worked examples")

    sp = add("search", help="randomised counterexample search")
    sp.add_argument("conjecture", choices=sorted(SEARCHES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("generate", help="write a random instance")
    sp.add_argument("kind", choices=GENERATE_KINDS)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--param", action="append", help="key=value, repeatable")
    sp.add_argument("--output", "-o")
    return p


COMMANDS = {
    "rank": cmd_rank, "zeta": cmd_zeta, "beta": cmd_beta, "beta-star": cmd_beta_star,
    "frac-cover": cmd_frac_cover, "intersect": cmd_intersect,
    "exchange-walk": cmd_exchange_walk, "fair-rep": cmd_fair_rep, "check": cmd_check,
    "examples": cmd_examples, "generate": cmd_generate,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "search":
            if args.count < 0 or args.workers < 1:
                raise UsageError("--count must be >= 0 and --workers >= 1")
            results = search(args.conjecture, args.seed, args.count, args.max_n, args.workers)
            tally = Counter(r.verdict for r in results)
            for line in _result_lines([r for r in results if r.verdict == checks.COUNTEREXAMPLE]):
                print("COUNTEREXAMPLE", line)
            max_n = args.max_n or DEFAULT_MAX_N[args.conjecture]
            print(f"search {args.conjecture}: seed={args.seed} count={args.count} max_n={max_n} "
                  + " ".join(f"{k}={tally[k]}" for k in sorted(tally)))
            if args.json:
                write_report(args.json, {"command": "search", "conjecture": args.conjecture,
                                         "seed": args.seed, "count": args.count, "max_n": max_n,
                                         "summary": dict(sorted(tally.items())),
                                         "results": results}, args.timings)
            return EXIT_COUNTEREXAMPLE if tally[checks.COUNTEREXAMPLE] else EXIT_OK
        inst = None
        if getattr(args, "instance", None):
            inst = load_instance(args.instance)
        payload, lines = COMMANDS[args.command](args, inst)
        for line in lines:
            print(line)
        if args.json:
            write_report(args.json, {"command": args.command, **payload}, args.timings)
        return EXIT_OK
    except InvariantViolation as exc:
        print(f"fatal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, DimatroidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
