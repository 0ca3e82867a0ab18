"""Command-line surface tying the pipeline together.

Subcommands
-----------
check
    Report bipartite / 3-connected / internally-4-connected / planar with
    witnesses.  Exit 0 exactly when the input qualifies for the search
    (bipartite, internally 4-connected, non-planar).
find
    Run the full search and print a summary; optionally write the
    certificate JSON and a DOT rendering with the hex highlighted.
verify
    Re-check a certificate against a graph with no reliance on the finder.
oracle
    Brute-force enumeration on small graphs (n <= 14 unless --force);
    ``compare`` mode cross-checks the finder against the brute force.
gen
    Emit named families or seeded random instances.

Exit codes: 0 success; 1 precondition or verification failure; 2 input,
parse, or usage error; 3 internal defect (a promised contract was
violated).  The environment variable ODDHEX_MAX_N (default 64) caps the
size of any graph accepted or generated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .connectivity import Separation, is_internally_4_connected, is_k_connected
from .generators import FAMILIES, BadParameters, GaveUp, named, random_instance
from .graph_core import (
    BipartiteGraph,
    GraphError,
    MalformedInput,
    NotBipartite,
    emit_dot,
    emit_edge_list,
    emit_graph6,
    parse_edge_list,
    parse_graph6,
)
from .hexes import certificate, certificate_json, odd_count, verify_certificate
from .improver import CaseExhausted, NotInternally4Connected, find_odd_hex
from .oracle import enumerate_hexes, odd_hex_exists_bruteforce
from .seed import PlanarInput, is_planar

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INPUT = 2
EXIT_DEFECT = 3

ORACLE_LIMIT = 14


class TooLarge(GraphError):
    """Input exceeds a size cap (ODDHEX_MAX_N, or the oracle's n <= 14)."""


def _max_n() -> int:
    raw = os.environ.get("ODDHEX_MAX_N", "64")
    try:
        return int(raw)
    except ValueError:
        raise TooLarge("ODDHEX_MAX_N must be an integer, got %r" % raw) from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


def _looks_like_graph6(text: str) -> bool:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        return False
    token = lines[0].strip()
    return token.startswith(">>graph6<<") or len(token.split()) == 1


def load_graph(path: str, fmt: str = "auto") -> BipartiteGraph:
    """Parse a graph file; raises MalformedInput / NotBipartite / TooLarge."""
    text = _read_text(path)
    if fmt == "auto":
        fmt = "graph6" if _looks_like_graph6(text) else "edges"
    g = parse_graph6(text) if fmt == "graph6" else parse_edge_list(text)
    cap = _max_n()
    if g.n > cap:
        raise TooLarge(
            "graph has %d vertices; cap is %d (raise ODDHEX_MAX_N to override)"
            % (g.n, cap)
        )
    return g


def _fmt_vertices(vs) -> str:
    return " ".join(str(v) for v in sorted(vs))


def _print_separation(sep: Separation) -> None:
    print("  3-cut: %s" % _fmt_vertices(sep.c))
    print("  side a: %s" % _fmt_vertices(sep.a))
    print("  side b: %s" % _fmt_vertices(sep.b))


def _print_embedding(embedding) -> None:
    print("  planar embedding (vertex: clockwise neighbors):")
    for v in sorted(embedding):
        print("    %d: %s" % (v, " ".join(str(u) for u in embedding[v])))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    try:
        g = load_graph(args.input, args.format)
    except NotBipartite as exc:
        print("bipartite: no")
        print("  odd cycle: %s" % " ".join(str(v) for v in exc.odd_cycle))
        return EXIT_PRECONDITION
    print("bipartite: yes")

    three = is_k_connected(g, 3)
    if three is True:
        print("3-connected: yes")
    else:
        print("3-connected: no")
        print("  cut: %s" % _fmt_vertices(three))

    ok = True
    verdict = is_internally_4_connected(g)
    if verdict is True:
        print("internally-4-connected: yes")
    else:
        ok = False
        print("internally-4-connected: no")
        if isinstance(verdict, Separation):
            _print_separation(verdict)
        else:
            print("  cut: %s" % _fmt_vertices(verdict))

    embedding = is_planar(g)
    if embedding is None:
        print("planar: no")
    else:
        ok = False
        print("planar: yes")
        _print_embedding(embedding)

    print("preconditions: %s" % ("hold" if ok else "fail"))
    return EXIT_OK if ok else EXIT_PRECONDITION


def cmd_find(args) -> int:
    g = load_graph(args.input, args.format)
    try:
        h, steps = find_odd_hex(g)
    except PlanarInput as exc:
        print("planar: yes")
        _print_embedding(exc.embedding)
        return EXIT_PRECONDITION
    except NotInternally4Connected as exc:
        print("internally-4-connected: no")
        if isinstance(exc.witness, Separation):
            _print_separation(exc.witness)
        else:
            print("  cut: %s" % _fmt_vertices(exc.witness))
        return EXIT_PRECONDITION
    except CaseExhausted as exc:
        print("internal defect: %s" % exc)
        for tag in exc.tried:
            print("  tried: %s" % tag)
        return EXIT_DEFECT

    cert = certificate(g, h, steps)
    print("odd hex found")
    print("  feet: %s" % " ".join(str(v) for v in h.feet))
    print("  odd_count: %d" % cert["odd_count"])
    print("  steps: %d%s" % (
        len(steps),
        "" if not steps else " (%s)" % ", ".join(s.case_tag for s in steps),
    ))
    if args.certificate:
        _write_text(args.certificate, certificate_json(cert))
        if args.certificate != "-":
            print("  certificate: %s" % args.certificate)
    if args.dot:
        _write_text(args.dot, emit_dot(g, highlight=h))
        if args.dot != "-":
            print("  dot: %s" % args.dot)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph, args.format)
    raw = _read_text(args.certificate)
    try:
        cert = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedInput("certificate is not valid JSON: %s" % exc) from None
    if not isinstance(cert, dict):
        raise MalformedInput("certificate JSON must be an object")
    problems = verify_certificate(g, cert)
    if problems:
        for p in problems:
            print("fail: %s" % p)
        return EXIT_PRECONDITION
    print("certificate ok: odd hex with feet %s" % " ".join(
        str(v) for v in cert["feet"]
    ))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(args.input, args.format)
    if g.n > ORACLE_LIMIT and not args.force:
        raise TooLarge(
            "oracle is exponential; n=%d exceeds %d (use --force to override)"
            % (g.n, ORACLE_LIMIT)
        )

    if args.mode == "hexes":
        found = enumerate_hexes(g)
        odd = sum(1 for h in found if odd_count(g, h) == 9)
        print("hexes: %d (all-odd: %d)" % (len(found), odd))
        return EXIT_OK

    if args.mode == "oddhex":
        h = odd_hex_exists_bruteforce(g)
        if h is None:
            reason = " (planar)" if is_planar(g) is not None else ""
            print("none%s" % reason)
        else:
            print("odd hex: feet %s" % " ".join(str(v) for v in h.feet))
        return EXIT_OK

    # compare: the finder against the brute force
    oracle_hex = odd_hex_exists_bruteforce(g)
    try:
        h, steps = find_odd_hex(g)
    except (PlanarInput, NotInternally4Connected) as exc:
        kind = "planar" if isinstance(exc, PlanarInput) else "not internally 4-connected"
        print("finder: refused (%s)" % kind)
        print("oracle: %s" % ("odd hex exists" if oracle_hex else "no odd hex"))
        print("agreement: input does not qualify; nothing to compare")
        return EXIT_OK
    except CaseExhausted as exc:
        print("finder: defect (%s)" % exc)
        print("oracle: %s" % ("odd hex exists" if oracle_hex else "no odd hex"))
        return EXIT_DEFECT
    problems = verify_certificate(g, certificate(g, h, steps))
    if problems:
        print("finder: INVALID certificate: %s" % problems[0])
        return EXIT_DEFECT
    if oracle_hex is None:
        print("finder found an odd hex but the oracle says none exists")
        return EXIT_DEFECT
    print("finder: odd hex, feet %s" % " ".join(str(v) for v in h.feet))
    print("oracle: odd hex exists")
    print("agreement: ok")
    return EXIT_OK


def _parities_from(params: Sequence[int]):
    return [list(params[0:3]), list(params[3:6]), list(params[6:9])]


def cmd_gen(args) -> int:
    if args.family is not None and args.random is not None:
        raise BadParameters("choose --family or --random, not both")
    if args.family is not None:
        fam = args.family
        params = args.params
        if fam == "grid":
            if len(params) != 2:
                raise BadParameters("grid takes exactly two parameters: w h")
            g = named("grid", w=params[0], h=params[1])
        elif fam == "subdivided_k33":
            if len(params) != 9:
                raise BadParameters(
                    "subdivided_k33 takes nine counts (row-major 3x3)"
                )
            g = named("subdivided_k33", parities=_parities_from(params))
        else:
            if params:
                raise BadParameters("family %r takes no parameters" % fam)
            g = named(fam)
    elif args.random is not None:
        n, seed = args.random
        g = random_instance(n, seed, attempts=args.attempts)
    else:
        raise BadParameters("one of --family or --random is required")
    cap = _max_n()
    if g.n > cap:
        raise TooLarge(
            "generated graph has %d vertices; cap is %d "
            "(raise ODDHEX_MAX_N to override)" % (g.n, cap)
        )
    text = emit_graph6(g) + "\n" if args.emit == "graph6" else emit_edge_list(g)
    _write_text(args.out, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("auto", "edges", "graph6"),
        default="auto",
        help="input format (default: auto-detect)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddhex",
        description="Find an all-odd K3,3 subdivision in an internally "
        "4-connected non-planar bipartite graph, with checkable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report search preconditions with witnesses")
    p.add_argument("input", help="graph file (edge list or graph6; - for stdin)")
    _add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("find", help="find an odd hex and emit its certificate")
    p.add_argument("input", help="graph file (- for stdin)")
    _add_format(p)
    p.add_argument("--certificate", metavar="OUT", help="write certificate JSON here (- for stdout)")
    p.add_argument("--dot", metavar="OUT", help="write DOT with the hex highlighted (- for stdout)")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("graph", help="graph file (- for stdin)")
    p.add_argument("certificate", help="certificate JSON file")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force reference on small graphs")
    p.add_argument("input", help="graph file (- for stdin)")
    _add_format(p)
    p.add_argument(
        "--mode",
        choices=("hexes", "oddhex", "compare"),
        default="compare",
        help="hexes: count all; oddhex: first all-odd; compare: cross-check finder",
    )
    p.add_argument("--force", action="store_true", help="allow n > %d" % ORACLE_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit named families or random instances")
    p.add_argument("--family", choices=FAMILIES, help="named family")
    p.add_argument(
        "params",
        nargs="*",
        type=int,
        help="family parameters (grid: w h; subdivided_k33: nine counts)",
    )
    p.add_argument(
        "--random",
        nargs=2,
        type=int,
        metavar=("N", "SEED"),
        help="seeded random qualifying instance",
    )
    p.add_argument("--attempts", type=int, default=64, help="rejection-sampling budget")
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.add_argument(
        "--emit",
        choices=("edges", "graph6"),
        default="edges",
        help="output serialization (default edge list)",
    )
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, TooLarge, BadParameters, GaveUp, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except NotBipartite as exc:
        print("not bipartite; odd cycle: %s" % " ".join(
            str(v) for v in exc.odd_cycle
        ), file=sys.stderr)
        return EXIT_PRECONDITION
    except GraphError as exc:
        print("internal defect: %s" % exc, file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
