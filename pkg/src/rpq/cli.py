"""Command-line interface: ``rpq <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import reductions as red
from .approx import enum_approx
from .enumeration import (
    LAZY_UNSORTED,
    SORTED_TREE,
    DynamicBaseline,
    enum_baseline,
    enum_sublinear,
    sublinear_prepare,
)
from .errors import RpqError
from .evaluation import boole, check, count, eval_all, witness
from .families import FAMILIES, make_family
from .graph import (
    CHECKPOINT,
    GraphDatabase,
    format_pairs,
    format_update_script,
    load_edge_list,
    parse_update_script,
    save_edge_list,
)
from .meter import Enumerator
from .product import build_product
from .query import BT, Disjunction, SDouble, SSingle, classify, parse_rpq, to_string
from .restricted import enum_restricted

MODES = ("baseline", "sublinear", "sublinear-lazy", "restricted", "approx")


def make_enumerator(d: GraphDatabase, q: str, mode: str, cap: int | None = None) -> Enumerator:
    if mode == "baseline":
        return enum_baseline(d, q)
    if mode == "sublinear":
        return enum_sublinear(sublinear_prepare(d, q, SORTED_TREE, cap))
    if mode == "sublinear-lazy":
        return enum_sublinear(sublinear_prepare(d, q, LAZY_UNSORTED, cap))
    if mode == "restricted":
        return enum_restricted(d, q)
    if mode == "approx":
        return enum_approx(d, q)
    raise ValueError(f"unknown mode {mode!r}")


def delay_summary(e: Enumerator, mode: str, d: GraphDatabase, q: str) -> dict:
    return {"mode": mode, "n": len(d), "m": d.arc_count, "q": q, **e.meter.report()}


def describe(cls) -> str:
    def letters(xs):
        return xs[0] if len(xs) == 1 else "(" + "|".join(xs) + ")"

    if isinstance(cls, BT):
        return f"BT {letters(cls.letters)}{'*' if cls.reflexive else '+'}"
    if isinstance(cls, SSingle):
        return f"SSingle {letters(cls.letters)}"
    if isinstance(cls, SDouble):
        return f"SDouble {letters(cls.first)}{letters(cls.second)}"
    if isinstance(cls, Disjunction):
        return "Disjunction [" + "; ".join(describe(m) for m in cls.members) + "]"
    return f"General {to_string(cls.ast)}"


# -- argument handling -------------------------------------------------------------


def _queries(args) -> list[str]:
    if args.query_file:
        lines = Path(args.query_file).read_text(encoding="utf-8").splitlines()
        qs = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    else:
        qs = [args.query] if args.query is not None else []
    if not qs:
        raise SystemExit(_usage_error(args, "a query is required (-q or --query-file)"))
    return qs


def _usage_error(args, message: str) -> int:
    args.parser.print_usage(sys.stderr)
    print(f"{args.parser.prog}: error: {message}", file=sys.stderr)
    return 2


def _load(args) -> GraphDatabase:
    return load_edge_list(Path(args.db).read_text(encoding="utf-8"))


def _per_query(args, out: TextIO, run) -> int:
    d = _load(args)
    qs = _queries(args)
    for q in qs:
        if len(qs) > 1:
            out.write(f"# {q}\n")
        run(d, q)
    return 0


def cmd_boole(args, out):
    return _per_query(args, out, lambda d, q: out.write(f"{str(boole(d, q)).lower()}\n"))


def cmd_check(args, out):
    return _per_query(args, out, lambda d, q: out.write(f"{str(check(d, q, args.u, args.v)).lower()}\n"))


def cmd_witness(args, out):
    def run(d, q):
        w = witness(d, q)
        out.write("none\n" if w is None else format_pairs([w]))

    return _per_query(args, out, run)


def cmd_eval(args, out):
    return _per_query(args, out, lambda d, q: out.write(format_pairs(eval_all(d, q))))


def cmd_count(args, out):
    return _per_query(args, out, lambda d, q: out.write(f"{count(d, q)}\n"))


def cmd_classify(args, out):
    for q in _queries(args):
        out.write(describe(classify(parse_rpq(q))) + "\n")
    return 0


def cmd_product(args, out):
    return _per_query(args, out, lambda d, q: out.write(_product_text(build_product(d, q))))


def _product_text(pg) -> str:
    lines = ["alphabet " + " ".join(pg.nfa.graph.alphabet)]
    names = [f"{pg.pi[u]}/{p}" for u in range(1, pg.n + 1) for p in range(pg.states)]
    lines += [f"node {name}" for name in names]
    lines += [f"edge {names[k]} {x or '%'} {names[t]}" for k, x, t in pg.labelled]
    lines.append(f"# start state {pg.start}, final state {pg.final}")
    return "\n".join(lines) + "\n"


def cmd_enum(args, out):
    d = _load(args)
    qs = _queries(args)
    for q in qs:
        if len(qs) > 1:
            out.write(f"# {q}\n")
        if args.update_script:
            if args.mode != "baseline":
                raise RpqError("update scripts are only supported by the baseline enumerator")
            script = parse_update_script(Path(args.update_script).read_text(encoding="utf-8"))
            state = DynamicBaseline(d, q)
            checkpoint = 0
            for item in script:
                if item == CHECKPOINT:
                    checkpoint += 1
                    e = state.enumerate()
                    out.write(f"# checkpoint {checkpoint}\n")
                    out.write(format_pairs(e))
                    if args.report_delay:
                        print(json.dumps(delay_summary(e, args.mode, d, q)), file=sys.stderr)
                else:
                    state.apply(item)
            continue
        e = make_enumerator(d, q, args.mode, args.cap)
        for u, v in e:
            out.write(f"{u}\t{v}\n")
        if args.report_delay:
            print(json.dumps(delay_summary(e, args.mode, d, q)), file=sys.stderr)
    return 0


def _gen_source(args):
    return red.random_source(args.kind, args.n, args.d, args.p, args.seed)


def cmd_gen(args, out):
    inst = _gen_source(args)
    r = red.CONSTRUCT[args.kind](inst)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.edges").write_text(save_edge_list(r.db), encoding="utf-8")
    files = [f"{prefix}.edges"]
    if r.script:
        Path(f"{prefix}.updates").write_text(format_update_script(r.script), encoding="utf-8")
        files.append(f"{prefix}.updates")
    sidecar = {
        "kind": args.kind,
        "params": {"n": args.n, "d": args.d, "p": args.p, "seed": args.seed},
        "query": r.query,
        "pair": list(r.pair) if r.pair else None,
        "source": red.source_to_json(inst),
        "expected": red.brute(args.kind, inst),
    }
    Path(f"{prefix}.json").write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    files.append(f"{prefix}.json")
    for f in files:
        out.write(f + "\n")
    return 0


def cmd_verify(args, out):
    prefix = args.instance
    for suffix in (".json", ".edges"):
        if prefix.endswith(suffix):
            prefix = prefix[: -len(suffix)]
    meta = json.loads(Path(f"{prefix}.json").read_text(encoding="utf-8"))
    kind = meta["kind"]
    inst = red.source_from_json(kind, meta["source"])
    rebuilt = red.CONSTRUCT[kind](inst)
    db = load_edge_list(Path(f"{prefix}.edges").read_text(encoding="utf-8"))
    if db.nodes != [str(u) for u in rebuilt.db] or db.arc_set() != {
        (str(u), x, str(v)) for u, x, v in rebuilt.db.arcs()
    }:
        out.write("MISMATCH database file does not match its source instance\n")
        return 1
    script = rebuilt.script
    if script:
        script = parse_update_script(Path(f"{prefix}.updates").read_text(encoding="utf-8"))
    r = red.ReductionInstance(kind, db, meta["query"], rebuilt.decode, rebuilt.pair, script)
    got = red.solve(r)
    expected = red.brute(kind, inst)
    if got != expected or got != meta["expected"]:
        out.write(f"MISMATCH engine={json.dumps(got)} oracle={json.dumps(expected)}\n")
        return 1
    out.write("OK\n")
    return 0


def cmd_bench(args, out):
    sizes = [int(s) for s in args.sizes.split(",")]
    modes = args.modes.split(",")
    for n in sizes:
        params = {}
        if args.p is not None:
            params["p"] = args.p
        if args.max_degree is not None:
            params["max_degree"] = args.max_degree
        d = make_family(args.family, n, seed=args.seed, **params)
        for mode in modes:
            e = make_enumerator(d, args.query, mode, args.cap)
            for _ in e:
                pass
            row = delay_summary(e, mode, d, args.query)
            row["family"] = args.family
            out.write(json.dumps(row) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rpq", description="Regular path queries over graph databases.")
    sub = parser.add_subparsers(dest="command", required=True)

    dbq = argparse.ArgumentParser(add_help=False)
    dbq.add_argument("-d", "--db", required=True, help="edge-list file")
    dbq.add_argument("-q", "--query", help="query expression")
    dbq.add_argument("--query-file", help="file with one query per line")

    qonly = argparse.ArgumentParser(add_help=False)
    qonly.add_argument("-q", "--query", help="query expression")
    qonly.add_argument("--query-file", help="file with one query per line")

    def add(name, func, parents=(), help=None):
        p = sub.add_parser(name, parents=list(parents), help=help)
        p.set_defaults(func=func, parser=p)
        return p

    add("boole", cmd_boole, [dbq], "is the answer nonempty")
    p = add("check", cmd_check, [dbq], "is (U, V) in the answer")
    p.add_argument("u")
    p.add_argument("v")
    add("witness", cmd_witness, [dbq], "print one answer pair or 'none'")
    add("eval", cmd_eval, [dbq], "print all answer pairs, sorted")
    add("count", cmd_count, [dbq], "print the number of answer pairs")
    add("product", cmd_product, [dbq], "dump the product graph")
    add("classify", cmd_classify, [qonly], "print the query class")

    p = add("enum", cmd_enum, [dbq], "stream answer pairs")
    p.add_argument("--mode", choices=MODES, default="baseline")
    p.add_argument("--cap", type=int, help="buffer cap for the sublinear modes")
    p.add_argument("--report-delay", action="store_true", help="JSON delay summary on stderr")
    p.add_argument("--update-script", help="replay updates, enumerating at each !enum line")

    p = add("gen", cmd_gen, help="generate a reduction instance")
    p.add_argument("kind", choices=red.KINDS)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output prefix")

    p = add("verify", cmd_verify, help="check a generated instance against its oracle")
    p.add_argument("instance", help="instance prefix (or its .json/.edges file)")

    p = add("bench", cmd_bench, help="delay measurements on random graph families")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--sizes", default="100,200,400,800")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-q", "--query", default="(a|b)+")
    p.add_argument("--modes", default="baseline,sublinear")
    p.add_argument("--p", type=float)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--cap", type=int)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except RpqError as exc:
        print(f"rpq: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rpq: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
