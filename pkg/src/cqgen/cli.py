"""Command line interface.

Subcommands:
  lists     acceptable block lists of order n
  marked    marked pregraphs on n vertices
  markable  pregraphs on n vertices admitting a CQ-factor
  dd        Delaney-Dress graphs on n vertices
  blocks    the block catalogue up to order n
  oracle    brute-force reference enumerations (small n only)

Graphs are written one per line in the text format; a summary line
``<mode> n=<n> part=<i>/<m> count=<c>`` goes to stderr.
"""

from __future__ import annotations

import argparse
import multiprocessing
import sys

from .core import encode_text
from .blocks import catalogue, realize_cached
from .blocklists import enumerate_lists
from .generator import generate_marked, generate_markable
from .ddcolour import generate_dd
from . import oracle as oracle_mod


def parse_args(argv=None) -> argparse.Namespace:
    p = argparse.ArgumentParser(prog="cqgen", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="mode", required=True)

    def common(sp, part=True):
        sp.add_argument("-n", type=int, required=True, dest="n",
                        help="number of vertices")
        sp.add_argument("--counts-only", action="store_true",
                        help="suppress graph output, only print the summary")
        sp.add_argument("--output", type=str, default=None,
                        help="write graphs to this file instead of stdout")
        if part:
            sp.add_argument("--part", type=str, default=None, metavar="i/m",
                            help="process only block lists with index i mod m")
            sp.add_argument("--jobs", type=int, default=1,
                            help="parallel worker processes")
            sp.add_argument("--debug-validate", action="store_true",
                            help="recheck structural invariants at each step")

    common(sub.add_parser("lists", help="acceptable block lists"), part=False)
    common(sub.add_parser("marked", help="marked pregraphs"))
    common(sub.add_parser("markable", help="pregraphs with a CQ-factor"))
    common(sub.add_parser("dd", help="Delaney-Dress graphs"))
    common(sub.add_parser("blocks", help="block catalogue"), part=False)

    sp = sub.add_parser("oracle", help="brute-force reference enumeration")
    common(sp, part=False)
    sp.add_argument("--what", choices=("all", "markable", "marked",
                                       "colourable", "dd"),
                    default="markable",
                    help="which brute-force enumeration to run")
    return p.parse_args(argv)


def _parse_part(spec: str | None) -> tuple[int, int]:
    if spec is None:
        return (0, 1)
    try:
        i, m = spec.split("/")
        i, m = int(i), int(m)
    except ValueError:
        raise SystemExit(f"bad --part value {spec!r}, expected i/m")
    if m < 1 or not 0 <= i < m:
        raise SystemExit(f"bad --part value {spec!r}, expected 0 <= i < m")
    return (i, m)


_GENERATORS = {
    "marked": generate_marked,
    "markable": generate_markable,
    "dd": generate_dd,
}


def _run_one_list(job: tuple) -> tuple[int, list[str]]:
    mode, n, li, counts_only, debug = job
    lines: list[str] = []
    sink = None if counts_only else (lambda g: lines.append(encode_text(g)))
    stats = _GENERATORS[mode](n, sink, part=(li, 10 ** 9), debug_validate=debug)
    return stats.graphs, lines


def _generate(args, out) -> int:
    i, m = _parse_part(args.part)
    n_lists = sum(1 for _ in enumerate_lists(args.n))
    indices = [li for li in range(n_lists) if li % m == i]
    jobs = [(args.mode, args.n, li, args.counts_only, args.debug_validate)
            for li in indices]
    total = 0
    if args.jobs > 1 and len(jobs) > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_run_one_list, jobs)
    else:
        results = [_run_one_list(j) for j in jobs]
    for count, lines in results:
        total += count
        for line in lines:
            print(line, file=out)
    return total


def run(args) -> int:
    out = sys.stdout
    close = None
    if getattr(args, "output", None):
        out = close = open(args.output, "w")
    try:
        part_i, part_m = _parse_part(getattr(args, "part", None))
        if args.mode == "lists":
            count = 0
            for L in enumerate_lists(args.n):
                count += 1
                if not args.counts_only:
                    print(" ".join(d.code() for d in L.blocks), file=out)
        elif args.mode == "blocks":
            count = 0
            for d in catalogue(args.n):
                count += 1
                if not args.counts_only:
                    rb = realize_cached(d)
                    print(f"{d.code()}\t{encode_text(rb.fragment)}", file=out)
        elif args.mode == "oracle":
            count = _run_oracle(args, out)
        else:
            count = _generate(args, out)
        print(f"{args.mode} n={args.n} part={part_i}/{part_m} count={count}",
              file=sys.stderr)
        return 0
    finally:
        if close is not None:
            close.close()


def _run_oracle(args, out) -> int:
    graphs = oracle_mod.all_cubic_pregraphs(args.n)
    if args.what == "all":
        selected = graphs
    elif args.what == "markable":
        selected = [g for g in graphs if oracle_mod.has_cq_factor(g)]
    elif args.what == "colourable":
        selected = [g for g in graphs if oracle_mod.is_3_edge_colourable(g)]
    elif args.what == "marked":
        selected = [m for g in graphs
                    for m in oracle_mod.all_cq_factors_up_to_iso(g)]
    else:  # dd
        selected = [d for g in graphs
                    for m in oracle_mod.all_cq_factors_up_to_iso(g)
                    for d in oracle_mod.brute_dd_classes(m)]
    if not args.counts_only:
        for g in selected:
            print(encode_text(g), file=out)
    return len(selected)


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
