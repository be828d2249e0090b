import argparse
import os
import sys

from algebra.laurent import InexactDivisionError
from algebra.minors import VanishingMinorError
from duality.amodel import PolytopeMismatchError, chart_order, no_polytope
from duality.bmodel import SuperpotentialError, q_polytope, superpotential_in_cluster, tropical_inequalities
from duality.verify import DualityVerifier
from network.chart import chart_from_path, plucker_table
from network.orientation import OrientationError
from plabic.graph import PlabicGraphError
from plabic.partitions import GrassmannShape, index_subset
from plabic.search import BudgetExhaustedError, format_path, move_class_bfs, parse_path, replay_path
from polytope.polytope import UnboundedPolytopeError
from utils import console, dumps, load_settings, parse_int_list, timestamped_folder, write_text

EXPORT_FORMATS = {
    "graph": ("json", "dot"),
    "orientation": ("json",),
    "polytope": ("json", "text"),
    "superpotential": ("text", "json"),
}

DOMAIN_ERRORS = (
    PlabicGraphError,
    OrientationError,
    InexactDivisionError,
    UnboundedPolytopeError,
    PolytopeMismatchError,
    VanishingMinorError,
    SuperpotentialError,
    BudgetExhaustedError,
)


class UsageError(ValueError):
    """Bad flag combination; exits with code 2."""


def _given(value, default):
    return default if value is None else value


def _emit(text: str, out: str = None):
    if out:
        write_text(out, text)
        console.print(f"[bold green]Wrote {out}[/]")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_verify(args, settings) -> int:
    rs = parse_int_list(args.r)
    verifier = DualityVerifier(
        shape=args.shape,
        rs=rs,
        budget=_given(args.budget, settings.budget),
        workers=_given(args.workers, settings.workers),
        samples=args.samples,
        matrices=_given(args.matrices, settings.matrices),
        seed=settings.seed,
        verbose=args.verbose,
    )
    report = verifier.run()
    verifier.display_results()
    folder = timestamped_folder(args.out or settings.output_folder)
    path = write_text(os.path.join(folder, f"verify_k{args.k}_n{args.n}.json"), dumps(report.to_json()))
    console.print(f"Report written to: {path}")
    return 0 if report.succeeded else 1


def cmd_export(args, settings) -> int:
    formats = EXPORT_FORMATS[args.target]
    fmt = args.format or formats[0]
    if fmt not in formats:
        raise UsageError(f"Target {args.target} supports formats {', '.join(formats)}, not {fmt}")
    path = parse_path(args.path)
    shape = args.shape
    if args.target == "graph":
        graph = replay_path(shape, path).graph
        text = graph.dumps() + "\n" if fmt == "json" else graph.to_dot(with_labels=True)
    elif args.target == "orientation":
        text = dumps(chart_from_path(shape, path, verbose=args.verbose).orientation.to_json())
    elif args.target == "polytope":
        r = parse_int_list(args.r)[0]
        chart = chart_from_path(shape, path, verbose=args.verbose)
        order = chart_order(chart)
        NO = no_polytope(chart, r, order)
        Q = q_polytope(shape, path, r, order)
        if fmt == "json":
            payload = NO.to_json()
            payload["inequalities"] = [row.to_json() for row in Q.inequalities]
            text = dumps(payload)
        else:
            vertices = "\n".join("(" + ", ".join(str(x) for x in p) + ")" for p in NO.points)
            text = f"# coords: {' '.join(lam.name for lam in NO.coords)}\n{vertices}\n{Q.to_text()}"
    else:
        W = superpotential_in_cluster(shape, path)
        text = W.to_fraction_text() + "\n" if fmt == "text" else dumps(W.to_json())
    _emit(text, args.out)
    return 0


def cmd_chart(args, settings) -> int:
    chart = chart_from_path(args.shape, parse_path(args.path), verbose=args.verbose)
    if args.subset:
        J = index_subset(parse_int_list(args.subset), args.n)
        if len(J) != args.shape.rows:
            raise UsageError(f"--subset needs {args.shape.rows} distinct indices in 1..{args.n}")
        _emit(chart.plucker(J).to_text("x"))
    else:
        _emit("\n".join(f"P{J} = {f}" for J, f in plucker_table(chart).items()))
    return 0


def cmd_moves(args, settings) -> int:
    move_class = move_class_bfs(budget=_given(args.budget, settings.budget), shape=args.shape, verbose=args.verbose)
    rows = [
        {"path": format_path(m.path), "encoding": m.encoding, "labels": [lam.name for lam in m.face_labels]}
        for m in move_class
    ]
    if args.format == "json":
        _emit(dumps({"shape": args.shape.to_json(), "members": rows}), args.out)
    else:
        lines = [f"{len(rows)} graphs in the move class of {args.shape}"]
        lines += [f"{row['path'] or '(G_rec)'}\t{' '.join(row['labels'])}" for row in rows]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_superpotential(args, settings) -> int:
    W = superpotential_in_cluster(args.shape, parse_path(args.path))
    lines = [W.to_fraction_text()]
    if args.r:
        r = parse_int_list(args.r)[0]
        lines += [f"0 <= {row.format()}" for row in tropical_inequalities(W, r)]
    _emit("\n".join(lines))
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "export": cmd_export,
    "chart": cmd_chart,
    "moves": cmd_moves,
    "superpotential": cmd_superpotential,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Compare Newton-Okounkov and superpotential polytopes of Grassmannian plabic graphs."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="Grassmannian Gr(k, n): k.")
    common.add_argument("--n", type=int, required=True, help="Grassmannian Gr(k, n): n.")
    common.add_argument("--verbose", action="store_true", help="Print progress.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Check NO = Q over the move class.")
    verify.add_argument("--r", default="1", help="Comma-separated dilation factors.")
    verify.add_argument("--budget", type=int, default=None, help="Maximum number of graphs to enumerate.")
    verify.add_argument("--workers", type=int, default=None, help="Worker threads.")
    verify.add_argument("--samples", type=int, default=None, help="Sample this many graphs by random walks.")
    verify.add_argument("--matrices", type=int, default=None, help="Random matrices for the superpotential check.")
    verify.add_argument("--out", default=None, help="Report folder; a timestamped subfolder is created.")

    export = sub.add_parser("export", parents=[common], help="Write a graph, orientation, polytope or superpotential.")
    export.add_argument("--target", choices=sorted(EXPORT_FORMATS), required=True)
    export.add_argument("--format", choices=["json", "dot", "text"], default=None)
    export.add_argument("--path", default="", help="Move path from G_rec, e.g. '2;1,1'.")
    export.add_argument("--r", default="1", help="Dilation factor for polytope exports.")
    export.add_argument("--out", default=None, help="Output file; stdout when omitted.")

    chart = sub.add_parser("chart", parents=[common], help="Print Plucker polynomials of a network chart.")
    chart.add_argument("--path", default="", help="Move path from G_rec.")
    chart.add_argument("--subset", default=None, help="Plucker index, e.g. '2,4'.")

    moves = sub.add_parser("moves", parents=[common], help="List the move class of G_rec.")
    moves.add_argument("--budget", type=int, default=None)
    moves.add_argument("--format", choices=["text", "json"], default="text")
    moves.add_argument("--out", default=None)

    superpotential = sub.add_parser("superpotential", parents=[common], help="Print the superpotential in a cluster.")
    superpotential.add_argument("--path", default="", help="Move path from G_rec.")
    superpotential.add_argument("--r", default=None, help="Also print the tropical inequalities for this r.")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = load_settings()
    try:
        args.shape = GrassmannShape(k=args.k, n=args.n)
        return COMMANDS[args.command](args, settings)
    except UsageError as e:
        console.print(f"[bold red]{e}[/]")
        return 2
    except DOMAIN_ERRORS as e:
        console.print(f"[bold red]{type(e).__name__}: {e}[/]")
        return 1
    except ValueError as e:
        console.print(f"[bold red]{e}[/]")
        return 2


if __name__ == "__main__":
    sys.exit(main())
