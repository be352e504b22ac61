"""Command-line surface: batch certification, family generation, exports.

Exit codes: 0 when the requested certification succeeds (proper FR, or plain
success for generation/export commands), 1 when the analysis ran but found
no proper revival/transfer, 2 on input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import graphs, revival, spectral, states, stellar, transfer

DEFAULT_TOL = 1e-8


def parse_time(text: str) -> float:
    """Parse a time expression: a number, or rational multiples of pi
    optionally divided by an integer and/or sqrt(D), e.g. "pi/sqrt(2)",
    "2pi/5", "3/2*pi".
    """
    s = text.strip().lower().replace(" ", "")
    try:
        return float(s)
    except ValueError:
        pass
    m = re.fullmatch(r"(\d+(?:/\d+)?)?\*?pi(?:/(.+))?", s)
    if not m:
        raise ValueError(f"cannot parse time expression {text!r}")
    value = float(Fraction(m.group(1))) * math.pi if m.group(1) else math.pi
    if m.group(2):
        dm = re.fullmatch(r"(?:(\d+)\*?)?(?:sqrt\((\d+)\))?", m.group(2))
        if not dm or (dm.group(1) is None and dm.group(2) is None):
            raise ValueError(f"cannot parse time denominator in {text!r}")
        if dm.group(1):
            value /= int(dm.group(1))
        if dm.group(2):
            value /= math.sqrt(int(dm.group(2)))
    return value


def parse_vertex_set(text: str) -> set[int]:
    try:
        return {int(part) for part in text.split(",") if part.strip() != ""}
    except ValueError:
        raise ValueError(f"cannot parse vertex set {text!r}")


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected a,k,c, got {text!r}")
    a, k, c = (int(p) for p in parts)
    return a, k, c


def parse_range(text: str) -> range:
    """Parse "3" or "1..5" into an inclusive integer range."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def load_graph(path: str) -> graphs.Graph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        return graphs.graph_from_json(stripped)
    return graphs.graph_from_graph6(stripped)


def _graph_arg(args) -> graphs.Graph:
    if getattr(args, "stellar", None):
        a, k, c = parse_triple(args.stellar)
        return graphs.build_stellar(a, k, c)
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    raise ValueError("provide --graph FILE or --stellar a,k,c")


def _decomposition(args):
    if getattr(args, "stellar", None):
        a, k, c = parse_triple(args.stellar)
        return spectral.stellar_decompose(a, k, c)
    if not getattr(args, "graph", None):
        raise ValueError("provide --graph FILE or --stellar a,k,c")
    return spectral.decompose(load_graph(args.graph))


def _emit(doc, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        flat = _flatten(doc)
        writer = csv.writer(out)
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
    else:
        for key, value in _flatten(doc).items():
            out.write(f"{key}: {value}\n")


def _flatten(doc, prefix: str = "") -> dict:
    out: dict = {}
    if isinstance(doc, dict):
        for key, value in doc.items():
            out.update(_flatten(value, f"{prefix}{key}." if prefix else f"{key}."))
        return {k.rstrip("."): v for k, v in out.items()} if not prefix else out
    key = prefix.rstrip(".")
    if isinstance(doc, list):
        out[key] = ";".join(str(x) for x in doc)
    else:
        out[key] = doc
    return out


def cmd_analyze(args, out) -> int:
    D = _decomposition(args)
    a, b = args.pair
    cert = revival.certify_fr(D, a, b)
    doc = {"certificate": cert.to_json_dict()}
    if cert.tau_min is not None:
        obs = revival.verify_fr_at(D, a, b, cert.tau_min, args.tol)
        doc["oracle"] = {
            "t": obs.t,
            "off_block_norm": obs.off_block_norm,
            "cross_amplitude": obs.cross_amplitude,
        }
    if args.time is not None:
        t = parse_time(args.time)
        obs = revival.verify_fr_at(D, a, b, t, args.tol)
        doc["oracle_at_time"] = {
            "t": obs.t,
            "off_block_norm": obs.off_block_norm,
            "cross_amplitude": obs.cross_amplitude,
        }
    _emit(doc, args.format, out)
    return 0 if cert.is_proper else 1


def cmd_stellar(args, out) -> int:
    a, k, c = parse_triple(args.stellar)
    an = stellar.analyze(a, k, c)
    _emit(an.to_json_dict(), args.format, out)
    return 0 if an.verdict == "proper-FR" else 1


def _family_line(triple: tuple[int, int, int]) -> dict:
    a, k, c = triple
    an = stellar.analyze(a, k, c)
    doc = an.to_json_dict()
    if an.delta is not None:
        doc["diophantine"] = stellar.diophantine_check(
            a, k, c, an.delta, an.alpha, an.beta)
    return doc


def cmd_family(args, out) -> int:
    triples: list[tuple[int, int, int]] = []
    if args.polygamy:
        for r in parse_range(args.polygamy):
            triples.append(stellar.generate_polygamy_triple(args.p, r))
    else:
        if args.delta is None or args.alpha is None:
            raise ValueError("family needs --delta and --alpha (or --polygamy)")
        betas = parse_range(args.beta) if args.beta else None
        for alpha in parse_range(args.alpha):
            candidates = ([args.beta_factor * alpha] if args.beta_factor
                          else list(betas or []))
            for beta in candidates:
                try:
                    recipe = stellar.FamilyRecipe.from_parameters(
                        args.p, args.delta, alpha, beta)
                    triples.append(stellar.generate_family(recipe))
                except ValueError:
                    continue
    if args.count is not None:
        triples = triples[:args.count]
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        for doc in pool.map(_family_line, triples):
            out.write(json.dumps(doc) + "\n")
    return 0


def cmd_product(args, out) -> int:
    a, k, c = parse_triple(args.stellar)
    report = transfer.polygamy_witness(a, k, c, args.ell)
    doc = {
        "graph": f"K2 x X({a},{k},{c})",
        "tau_min": report.tau_min,
        "is_polygamous": report.is_polygamous,
        "twin_pair": list(report.twin_pair),
        "twin_time": report.twin_time,
        "twin_off_block_norm": report.twin_observation.off_block_norm,
        "twin_cross_amplitude": report.twin_observation.cross_amplitude,
        "center_pair": list(report.center_pair),
        "center_time": report.center_time,
        "center_off_block_norm": report.center_observation.off_block_norm,
        "center_cross_amplitude": report.center_observation.cross_amplitude,
    }
    _emit(doc, args.format, out)
    return 0 if report.is_polygamous else 1


def cmd_subset(args, out) -> int:
    D = _decomposition(args)
    S = parse_vertex_set(args.s)
    T = parse_vertex_set(args.t)
    t = parse_time(args.time)
    report = transfer.detect_subset_transfer(D, S, T, t, args.tol)
    _emit(report.to_json_dict(), args.format, out)
    return 0 if report.is_transfer else 1


def cmd_export(args, out) -> int:
    X = _graph_arg(args)
    if args.format == "json":
        out.write(graphs.graph_to_json(X) + "\n")
        return 0
    if args.state is None:
        out.write(graphs.graph_to_dot(X) + "\n")
        return 0
    S = parse_vertex_set(args.state)
    D = spectral.decompose(X)
    rho = states.subset_state(S, X.n)
    G = states.support_graph(D, rho)
    colors = None
    if len(S) == 2:
        a, b = sorted(S)
        cert = revival.certify_fr(D, a, b)
        if cert.is_proper:
            index = {th: r for r, th in enumerate(D.eigenvalues)}
            colors = {index[th]: "lightblue" for th in cert.c_plus}
            colors.update({index[th]: "lightsalmon" for th in cert.c_minus})
    out.write(states.support_graph_to_dot(G, colors=colors) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revival-lab",
        description="Certify fractional revival, periodicity and subset "
                    "state transfer in continuous quantum walks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=False, time=False):
        p.add_argument("--graph", help="graph file (JSON or graph6)")
        p.add_argument("--stellar", help="fused-star parameters a,k,c")
        if pair:
            p.add_argument("--pair", nargs=2, type=int, default=[0, 1],
                           metavar=("A", "B"))
        if time:
            p.add_argument("--time", help='time expression, e.g. "pi/sqrt(2)"')
        p.add_argument("--tol", type=float,
                       default=float(os.environ.get("REVIVAL_LAB_TOL",
                                                    DEFAULT_TOL)))
        p.add_argument("--format", choices=["json", "csv", "dot", "text"],
                       default="json")

    p = sub.add_parser("analyze", help="certify FR on a vertex pair")
    common(p, pair=True, time=True)

    p = sub.add_parser("stellar", help="exact analysis of X(a,k,c)")
    common(p)

    p = sub.add_parser("family", help="stream generated FR triples")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--alpha", help='value or range "1..5"')
    p.add_argument("--beta", help='value or range')
    p.add_argument("--beta-factor", type=int,
                   help="use beta = factor * alpha")
    p.add_argument("--polygamy", help='r value or range "1..3"')
    p.add_argument("--count", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("product", help="polygamy witness on K2 x X(a,k,c)")
    common(p)
    p.add_argument("--ell", type=int, required=True,
                   help="tau_min must equal pi/(2*ell+1)")

    p = sub.add_parser("subset", help="detect subset state transfer")
    common(p, time=True)
    p.add_argument("--s", required=True, help="source subset, e.g. 0,3")
    p.add_argument("--t", required=True, help="target subset, e.g. 2,5")

    p = sub.add_parser("export", help="emit graph JSON/DOT or support DOT")
    common(p)
    p.add_argument("--state", help="vertex subset for the support graph")
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "stellar": cmd_stellar,
    "family": cmd_family,
    "product": cmd_product,
    "subset": cmd_subset,
    "export": cmd_export,
}


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    if getattr(args, "tol", 1.0) <= 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args, out)
    except (ValueError, KeyError, IndexError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
