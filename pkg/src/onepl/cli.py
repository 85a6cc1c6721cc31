"""Command-line interface: ``onepl <subcommand> ...``.

Exit codes: 0 success, 1 usage, 2 invalid input (format or embedding),
3 x-crossing present, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from .embed import crossing_classes, validate
from .errors import FormatError, InternalInvariantError, InvalidEmbeddingError, OnePlaneError, XCrossingError
from .io import parse_1pl, serialize_1pl, serialize_pg

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_XCROSS, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_1pl(text)


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    e = _read(args.input)
    rep = validate(e)
    if rep.ok:
        print(f"ok n={e.n} m={e.m} crossings={len(e.crossings)}")
        return EXIT_OK
    for v in rep.violations:
        print(v)
    return EXIT_INVALID


def cmd_classify(args) -> int:
    from .embed import require_valid

    e = _read(args.input)
    require_valid(e)
    for i, c in enumerate(crossing_classes(e)):
        roles = []
        if c.tip is not None:
            roles.append(f"tip={c.tip} tail={c.tail} base={','.join(map(str, c.base))}")
        if c.spine:
            roles.append(f"spine={','.join(map(str, c.spine))} wings={','.join(map(str, c.wing_tips))}")
        print("\t".join([str(i), c.kind.value, " ".join(map(str, e.crossings[i].cw))] + roles))
    return EXIT_OK


def cmd_kappa(args) -> int:
    from .search import kappa

    e = _read(args.input)
    if args.brute:
        from .embed import find_x_crossing, require_valid
        from .oracle.brute import brute_kappa

        require_valid(e)
        x = find_x_crossing(e)
        if x is not None:
            raise XCrossingError(x, e.crossings[x].cw)
        res = brute_kappa(e)
    else:
        res = kappa(e, ceiling=args.ceiling, method=args.method)
    print(f"kappa {res.kappa}")
    if args.certificate:
        if res.complete:
            print("complete")
        else:
            print("separator " + " ".join(map(str, res.witness)))
    return EXIT_OK


def cmd_planarize(args) -> int:
    from .planar import planarize, radial_planarization

    e = _read(args.input)
    p = radial_planarization(e) if args.radial else planarize(e)
    _write(serialize_pg(p), args.output)
    return EXIT_OK


def cmd_layers(args) -> int:
    from .embed import add_kite_edges
    from .layers import assemble_window, bfs_layering, build_aux, eccentricity, window_indices
    from .planar import radial_planarization
    from .search import window_width
    from .tdecomp import tree_decompose

    e = add_kite_edges(_read(args.input))
    lg = radial_planarization(e)
    bl = bfs_layering(lg)
    aux = build_aux(bl)
    print("layer\tsize\tU\tL")
    for j in range(1, bl.depth + 1):
        print(f"{j}\t{len(bl.layers[j])}\t{len(aux.upper[j])}\t{len(aux.lower[j])}")
    w = window_width(args.k)
    head = ["window", "vertices", "edges", "radius"] + (["width"] if args.tw else [])
    print("\t".join(head))
    for i in window_indices(bl, w):
        win = assemble_window(bl, aux, i, w)
        row = [i, win.n, len(win.edges), eccentricity(win.adj, win.center)]
        if args.tw:
            row.append(tree_decompose(win, args.method).width)
        print("\t".join(map(str, row)))
    return EXIT_OK


def cmd_gen(args) -> int:
    from .oracle.generators import FAMILIES, generate

    fn, names = FAMILIES[args.family]
    if len(args.params) != len(names):
        raise UsageError(f"gen {args.family} expects parameters: {' '.join(names) or '(none)'}")
    e = generate(args.family, *args.params)
    desc = f"{args.family} " + " ".join(map(str, args.params))
    _write(serialize_1pl(e, comment=desc.strip()), args.output)
    return EXIT_OK


def cmd_cycle(args) -> int:
    from .oracle.brute import brute_kappa, minimalize_separator
    from .oracle.cycle import full_cycle
    from .planar import KIND_TAGS

    e = _read(args.input)
    if args.sep:
        s = [int(x) for x in args.sep.split(",") if x]
    else:
        res = brute_kappa(e)
        if res.complete:
            print("complete graph: no separating set")
            return EXIT_INVALID
        s = minimalize_separator(e, res.witness)
    sc = full_cycle(e, s)
    lam = sc.lam
    print("separator " + " ".join(map(str, sorted(s))))
    print("case " + sc.case)
    print("cycle " + " ".join(f"{KIND_TAGS[lam.kinds[v]]}{lam.refs[v]}" for v in sc.vertices))
    for tag, side in (("inside", sc.inside), ("outside", sc.outside)):
        g = sorted(lam.refs[v] for v in side if lam.kinds[v] == 0)
        print(f"{tag} " + " ".join(map(str, g)))
    return EXIT_OK


def _parse_sizes(tokens: list[str]) -> list[int]:
    sizes: list[int] = []
    for tok in tokens:
        if ".." in tok:
            lo, hi = (int(x) for x in tok.split("..", 1))
            if lo <= 0 or hi < lo:
                raise UsageError(f"bad size range {tok}")
            n = lo
            while n <= hi:
                sizes.append(n)
                n *= 2
        else:
            sizes.append(int(tok))
    return sizes


def bench_instance(family: str, n: int, seed: int = 1):
    from .oracle.generators import generate

    if family == "cylinder":
        return generate("cylinder", 6, max(1, round(n / 6)))
    if family in ("random", "full"):
        return generate(family, seed, n)
    raise UsageError(f"family {family!r} cannot be benchmarked")


def run_bench(family: str, sizes: list[int], repeat: int = 1) -> list[dict]:
    from .search import kappa

    rows = []
    for n in sizes:
        e = bench_instance(family, n)
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            res = kappa(e)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        rows.append({"family": family, "n": e.n, "wall_time": round(best, 4), "kappa": res.kappa,
                     "max_width": res.stats.get("width", 0)})
    return rows


BENCH_FIELDS = ["family", "n", "wall_time", "kappa", "max_width"]


def write_bench_csv(rows: list[dict], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def plot_bench(rows: list[dict], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for fam in sorted({r["family"] for r in rows}):
        pts = [(r["n"], r["wall_time"]) for r in rows if r["family"] == fam]
        ax.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label=fam)
    if rows:
        n0, t0 = rows[0]["n"], rows[0]["wall_time"]
        ns = [r["n"] for r in rows]
        ax.loglog(ns, [t0 * n / n0 for n in ns], "k:", label="linear")
    ax.set_xlabel("n")
    ax.set_ylabel("wall time [s]")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    rows = run_bench(args.family, sizes, args.repeat)
    if args.csv in (None, "-"):
        write_bench_csv(rows, sys.stdout)
    else:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_bench_csv(rows, fh)
    if args.plot:
        plot_bench(rows, args.plot)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .oracle.generators import FAMILIES

    p = _Parser(prog="onepl", description="Vertex connectivity of 1-plane graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp):
        sp.add_argument("input", help="a .1pl file, or - for stdin")
        return sp

    sp = with_input(sub.add_parser("validate", help="check the embedding is a good 1-plane drawing"))
    sp.set_defaults(func=cmd_validate)

    sp = with_input(sub.add_parser("classify", help="list crossings with their class"))
    sp.set_defaults(func=cmd_classify)

    sp = with_input(sub.add_parser("kappa", help="compute the vertex connectivity"))
    sp.add_argument("--brute", action="store_true", help="use the max-flow oracle")
    sp.add_argument("--certificate", action="store_true", help="print a minimum separating set")
    sp.add_argument("--ceiling", type=int, default=22, help="largest DP bag allowed")
    sp.add_argument("--method", choices=["auto", "min-degree", "radial"], default="auto")
    sp.set_defaults(func=cmd_kappa)

    sp = with_input(sub.add_parser("planarize", help="emit the planarization as .pg"))
    sp.add_argument("--radial", action="store_true", help="emit the radial planarization")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_planarize)

    sp = with_input(sub.add_parser("layers", help="dump BFS layers and window statistics"))
    sp.add_argument("--tw", action="store_true", help="also report decomposition width per window")
    sp.add_argument("--k", type=int, default=1, help="separator size that fixes the window width")
    sp.add_argument("--method", choices=["auto", "min-degree", "radial"], default="auto")
    sp.set_defaults(func=cmd_layers)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = with_input(sub.add_parser("cycle", help="separating cycle of a full 1-plane graph"))
    sp.add_argument("--sep", help="comma-separated minimal separating set (default: found by the oracle)")
    sp.set_defaults(func=cmd_cycle)

    sp = sub.add_parser("bench", help="time kappa over growing instances")
    sp.add_argument("family", choices=["cylinder", "random", "full"])
    sp.add_argument("sizes", nargs="+", help="sizes, or lo..hi for doubling steps")
    sp.add_argument("--csv", help="CSV output path (default stdout)")
    sp.add_argument("--plot", help="PNG path for a log-log scaling plot")
    sp.add_argument("--repeat", type=int, default=1)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, InvalidEmbeddingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except XCrossingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_XCROSS
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OnePlaneError as exc:
        # remaining library errors are precondition failures on the input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
