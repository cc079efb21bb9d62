"""``bfcover`` command line: generate butterflies, build and verify covers.

Exit codes: 0 success, 1 verification or optimality failure, 2 usage error.
Human-readable tables go to stdout; machine artifacts only via ``--output``
(``-o -`` writes them to stdout instead of the table).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path as FsPath

from . import io
from .butterfly import ButterflyError, build_butterfly, count_24_edges, degree_histogram, edges_24
from .construct import construct_cover
from .cover import Cover
from .edge_partition import edge_cycle_partition, split_to_diametrals
from .graph import GuardExceeded, coverage_report
from .solve import (
    Status,
    bf_lower_bounds,
    exact_cover,
    greedy_cover,
    make_instance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output is None:
        return
    if output == "-":
        sys.stdout.write(text)
    else:
        FsPath(output).write_text(text)


def _say(args, msg: str = "") -> None:
    if args.output != "-":
        print(msg)


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _check_r(r: int | None, lo: int = 1, hi: int = 16) -> int:
    if r is None:
        raise UsageError("-r/--dimension is required")
    if not lo <= r <= hi:
        raise UsageError(f"-r must be in [{lo}, {hi}], got {r}")
    return r


def cmd_gen(args) -> int:
    r = _check_r(args.r)
    bf = build_butterfly(r)
    g = bf.graph
    _say(args, f"BF({r}): {g.n} vertices, {g.edge_count()} edges, format {args.format}")
    _emit(io.write_topology(g, args.format, r), args.output)
    return EXIT_OK


def _special_sets(bf, mode):
    if mode == "vertex":
        return [[v for v in range(bf.graph.n) if bf.graph.degree(v) == 2]]
    return [edges_24(bf)]


def cmd_cover(args) -> int:
    if args.instance:
        return _cover_instance(args)
    r = _check_r(args.r, 1, 14)
    bf = build_butterfly(r)
    vlb, elb = bf_lower_bounds(r) if r >= 2 else (1, 1)
    lb = vlb if args.mode == "vertex" else elb
    status = None
    if args.method == "construct":
        if args.mode == "vertex":
            try:
                cover = construct_cover(bf, verify=False)
            except ButterflyError as exc:
                raise UsageError(str(exc)) from None
        else:
            if r < 3:
                raise UsageError("the edge construction needs r >= 3")
            cover = split_to_diametrals(edge_cycle_partition(r, bf, jobs=args.jobs), bf)
    else:
        try:
            inst = make_instance(bf.graph, args.mode, guard=args.guard)
        except GuardExceeded as exc:
            print(f"error: {exc}; raise --guard or BFCOVER_ENUM_GUARD", file=sys.stderr)
            return EXIT_FAIL
        if args.method == "greedy":
            res = greedy_cover(inst)
        else:
            res = exact_cover(inst, args.budget, special=_special_sets(bf, args.mode))
            lb = max(lb, res.lower_bound) if r >= 2 else res.lower_bound
        status = res.status
        if res.cover is None:
            _say(args, f"instance infeasible ({res.status.value})")
            return EXIT_FAIL
        cover = Cover(res.cover.paths, args.mode, r)
    rep = coverage_report(bf.graph, cover.paths, args.mode)
    certified = rep.valid and len(cover) == lb
    _say(args, f"method      {args.method}")
    _say(args, f"mode        {args.mode}")
    _say(args, f"size        {len(cover)}")
    _say(args, f"lower bound {lb}")
    if status is not None:
        _say(args, f"status      {status.value}")
    _say(args, f"verified    {rep.valid}")
    if args.mode == "edge":
        _say(args, f"partition   {rep.is_partition}")
    _say(args, f"certificate {certified}")
    _emit(io.cover_json(cover), args.output)
    if not rep.valid:
        return EXIT_FAIL
    if args.method == "construct" and not certified:
        return EXIT_FAIL
    if status is Status.BUDGET_EXCEEDED:
        return EXIT_FAIL
    return EXIT_OK


def _cover_instance(args) -> int:
    inst, r = io.parse_instance(_read(args.instance), args.guard)
    if args.method == "construct":
        raise UsageError("--instance works with --method exact or greedy")
    res = greedy_cover(inst) if args.method == "greedy" else exact_cover(inst, args.budget)
    _say(args, f"status      {res.status.value}")
    _say(args, f"size        {res.size}")
    _say(args, f"lower bound {res.lower_bound}")
    _say(args, f"nodes       {res.nodes_explored}")
    _emit(io.result_json(res, r), args.output)
    ok = res.status in (Status.OPTIMAL, Status.FEASIBLE)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_edge_partition(args) -> int:
    r = _check_r(args.r, 3, 14)
    bf = build_butterfly(r)
    part = edge_cycle_partition(r, bf, jobs=args.jobs)
    dia = split_to_diametrals(part, bf)
    rep = coverage_report(bf.graph, dia.paths, "edge")
    _say(args, f"BF({r}): {len(part)} cycles of length {4 * r}")
    _say(args, f"diametrals  {len(dia)} (length {2 * r})")
    _say(args, f"lower bound {bf_lower_bounds(r)[1]}")
    _say(args, f"verified    {rep.valid}")
    _say(args, f"partition   {rep.is_partition}")
    if args.as_ == "diametrals":
        _emit(io.cover_json(dia), args.output)
    elif args.as_ == "cycles":
        _emit(io.partition_json(part, None), args.output)
    else:
        _emit(io.partition_json(part, dia), args.output)
    return EXIT_OK if rep.is_partition and len(dia) == 1 << r else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.graph:
        text = _read(args.graph)
        try:
            loaded = io.read_topology(text, args.format)
        except (io.FormatError, ButterflyError) as exc:
            raise UsageError(f"{args.graph}: {exc}") from None
        g, r = loaded.graph, loaded.r
        again = io.write_topology(g, loaded.fmt, r)
        same = again == text
        print(f"graph       {g.n} vertices, {g.edge_count()} edges ({loaded.fmt})")
        print(f"round-trip  {'identical' if same else 'differs'}")
        if not same:
            return EXIT_FAIL
    elif args.r is not None:
        r = _check_r(args.r)
        g = build_butterfly(r).graph
    else:
        raise UsageError("verify needs --graph FILE or -r R")
    if not args.cover:
        return EXIT_OK
    try:
        cover = io.parse_cover(_read(args.cover), r)
    except io.FormatError as exc:
        raise UsageError(f"{args.cover}: {exc}") from None
    bad_ids = [p for p in cover.paths if any(not 0 <= v < g.n for v in p)]
    if bad_ids:
        raise UsageError(f"{args.cover}: path references a vertex outside the graph")
    rep = coverage_report(g, cover.paths, cover.mode)
    print(f"mode        {rep.mode}")
    print(f"paths       {rep.path_count}")
    print(f"covered     {rep.covered}/{rep.total}")
    print(f"invalid     {rep.invalid_paths}")
    if cover.mode == "edge":
        print(f"disjoint    {rep.edge_disjoint}")
    if rep.missing:
        shown = rep.missing[:20]
        if r is not None:
            rows = 1 << r
            name = (lambda v: f"L{v // rows}R{v % rows}")
            shown = [name(t) if isinstance(t, int) else f"{name(t[0])}-{name(t[1])}" for t in shown]
        more = "" if len(rep.missing) <= 20 else f" (+{len(rep.missing) - 20} more)"
        print(f"missing     {', '.join(map(str, shown))}{more}")
    print(f"valid       {rep.valid}")
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_stats(args) -> int:
    r = _check_r(args.r)
    bf = build_butterfly(r)
    g = bf.graph
    print(f"r           {r}")
    print(f"vertices    {g.n}")
    print(f"edges       {g.edge_count()}")
    print(f"(2,4)-edges {count_24_edges(bf) if r >= 2 else 0}")
    for d, k in degree_histogram(g).items():
        print(f"degree {d:<4} {k}")
    return EXIT_OK


def cmd_bench(args) -> int:
    lo, hi = args.r_min, args.r_max
    _check_r(lo, 3, 14)
    _check_r(hi, lo, 14)
    print(f"{'r':>3} {'|V|':>8} {'cover':>6} {'t_cover':>8} {'parts':>6} {'t_edge':>8}")
    ok = True
    for r in range(lo, hi + 1):
        bf = build_butterfly(r)
        t0 = time.perf_counter()
        if r >= 5:
            cov = construct_cover(bf)
            ncov = str(len(cov))
        else:
            ncov = "-"
        t1 = time.perf_counter()
        part = edge_cycle_partition(r, bf, jobs=args.jobs)
        dia = split_to_diametrals(part, bf)
        ok &= coverage_report(bf.graph, dia.paths, "edge").is_partition
        t2 = time.perf_counter()
        print(f"{r:>3} {bf.graph.n:>8} {ncov:>6} {t1 - t0:>8.3f} {len(dia):>6} {t2 - t1:>8.3f}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bfcover", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add_r(p):
        p.add_argument("-r", "--dimension", dest="r", type=int, help="butterfly dimension")

    def add_out(p):
        p.add_argument("-o", "--output", help="write the machine-readable artifact here ('-' for stdout)")

    def add_jobs(p):
        p.add_argument("--jobs", type=int, default=1, help="worker threads for verification")

    p = sub.add_parser("gen", help="emit the BF(r) topology")
    add_r(p)
    add_out(p)
    p.add_argument("--format", choices=["dot", "json", "edgelist"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cover", help="geodesic cover of BF(r)")
    add_r(p)
    add_out(p)
    add_jobs(p)
    p.add_argument("--method", choices=["construct", "exact", "greedy"], default="construct")
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")
    p.add_argument("--budget", type=int, default=10**7, help="node limit for --method exact")
    p.add_argument("--guard", type=int, default=None, help="maximal-geodesic enumeration limit")
    p.add_argument("--instance", help="solve an instance JSON file instead of BF(r)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("edge-partition", help="isometric cycle partition / diametral edge partition")
    add_r(p)
    add_out(p)
    add_jobs(p)
    p.add_argument("--as", dest="as_", choices=["cycles", "diametrals", "both"], default="both")
    p.set_defaults(func=cmd_edge_partition)

    p = sub.add_parser("verify", help="check a topology file and/or a cover file")
    add_r(p)
    add_jobs(p)
    p.add_argument("--graph", help="topology file written by 'gen'")
    p.add_argument("--format", choices=["dot", "json", "edgelist"], default=None)
    p.add_argument("--cover", help="cover JSON file")
    p.set_defaults(func=cmd_verify, output=None)

    p = sub.add_parser("stats", help="size and degree statistics of BF(r)")
    add_r(p)
    p.set_defaults(func=cmd_stats, output=None)

    p = sub.add_parser("bench", help="timing table over a range of r")
    p.add_argument("--r-min", type=int, default=5)
    p.add_argument("--r-max", type=int, default=9)
    add_jobs(p)
    p.set_defaults(func=cmd_bench, output=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be >= 1")
    if getattr(args, "budget", 1) < 1:
        ap.error("--budget must be >= 1")
    try:
        return args.func(args)
    except (UsageError, io.FormatError) as exc:
        print(f"bfcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
