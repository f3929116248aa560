"""Command-line interface.

Every output carries its RunConfig and a sha256 of the payload, as ``#``
comment lines for text formats and as keys for JSON.  Worker count, cache
directory and output paths are execution details and stay out of the
RunConfig, so reruns are byte-identical however they are executed.

Exit codes: 0 ok, 1 bad input, 2 invariant violation, 3 size limit.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__, cmg
from .graph import GraphSizeError, InvalidGraphError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_SIZE = 3


class InvariantViolation(Exception):
    def __init__(self, names):
        self.names = list(names)
        super().__init__("invariant violated: " + ", ".join(self.names))


class ReplayMismatch(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    num_vertices: int | None = None
    mode: str | None = None
    loop_moves: bool = True
    exact: bool = True
    event: str | None = None
    seed: int = 0
    trials: int | None = None
    input_sha256: str | None = None
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def short_hash(text: str) -> str:
    return sha256(text)[:16]


def with_header(body: str, config: RunConfig, comment: str = "#") -> str:
    return f"{comment} config {config.to_json()}\n{comment} sha256 {sha256(body)}\n{body}"


def json_document(result: dict, config: RunConfig) -> str:
    payload = json.dumps(result, sort_keys=True)
    doc = {"config": asdict(config), "sha256": sha256(payload), "result": result}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def note(msg: str):
    print(msg, file=sys.stderr)


def read_input(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- cached builders -----------------------------------------------------------

def get_catalog(n: int, method: str, cache_dir: str | None):
    from .enumeration import enumerate_classes, load_catalog

    path = Path(cache_dir) / f"catalog-n{n}-{method}-v{__version__}.cmg" if cache_dir else None
    if path is not None and path.exists():
        return load_catalog(n, path.read_text())
    catalog = enumerate_classes(n, method)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(catalog.dumps())
    return catalog


def get_gog(n: int, mode: str, loop_moves: bool, cache_dir: str | None, workers: int):
    from .gamma import build, export, from_json

    tag = f"gog-n{n}-{mode}-loops{int(loop_moves)}-v{__version__}.json"
    path = Path(cache_dir) / tag if cache_dir else None
    if path is not None and path.exists():
        return from_json(path.read_text())
    catalog = get_catalog(n, "auto", cache_dir)
    G = build(n, mode, catalog=catalog, loop_moves=loop_moves, workers=workers)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(export(G, "json"))
    return G


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args) -> int:
    catalog = get_catalog(args.n, args.method, args.cache_dir)
    config = RunConfig("enumerate", n=args.n, mode=args.method)
    emit(with_header(catalog.dumps(), config), args.out)
    note(f"{len(catalog)} classes")
    return EXIT_OK


def _matrix_csv(G) -> str:
    return "".join(",".join(map(str, row)) + "\n" for row in G.matrix)


def cmd_gog(args) -> int:
    from .gamma import export, to_dict

    loop_moves = not args.no_loop_moves
    mode = "orbit" if args.mode == "compare" else args.mode
    G = get_gog(args.n, mode, loop_moves, args.cache_dir, args.workers)
    violated = []
    if args.mode == "compare":
        other = get_gog(args.n, "bruteforce", loop_moves, args.cache_dir, args.workers)
        same = other.matrix == G.matrix
        note("orbit vs bruteforce: " + ("identical" if same else "DIFFERENT"))
        if not same:
            violated.append("orbit-equals-bruteforce")
    sums = sorted({sum(r) for r in G.matrix})
    if sums == [6 * args.n]:
        note(f"all rows = {6 * args.n}")
    else:
        note("row sums: " + ",".join(map(str, sums)))
        if loop_moves:
            violated.append("row-sum")
    config = RunConfig("gog", n=args.n, mode=args.mode, loop_moves=loop_moves)
    emit(json_document(to_dict(G), config), args.out)
    if args.dot:
        Path(args.dot).write_text(with_header(export(G, "dot"), config, comment="//"))
    if args.matrix_csv:
        Path(args.matrix_csv).write_text(with_header(_matrix_csv(G), config))
    if violated:
        raise InvariantViolation(violated)
    return EXIT_OK


def analyze(G, exact: bool = True, seed: int = 0) -> dict:
    from .conductance import (EXACT_LIMIT, boundary_arcs, phi_out_bridged_bound, phi_out_exact,
                              phi_out_heuristic)
    from .gamma import strongly_connected
    from .spectrum import count_paths, positive_power, spectral_radius, verify_small_cycles

    n, k = G.n, G.size
    use_exact = exact and k <= EXACT_LIMIT
    best = phi_out_exact(G) if use_exact else phi_out_heuristic(G, seed=seed)
    bb = phi_out_bridged_bound(G)
    arcs = boundary_arcs(G)
    spec = spectral_radius(G)
    power = positive_power(G)
    walks_ok = all(count_paths(G, l) == k * (6 * n) ** l for l in range(11))
    cycles = verify_small_cycles(G)
    invariants = {
        "row-sum": all(sum(r) == 6 * n for r in G.matrix),
        "strongly-connected": strongly_connected(G),
        "bridged-boundary": bb.bound_holds,
        "boundary-localized": all(a.localized for a in arcs),
        "primitive": spec.primitive and power is not None,
        "perron-root": abs(spec.spectral_radius - 6 * n) < spec.tolerance,
        "simple": spec.simple,
        "dominant": spec.max_other_modulus < 6 * n - 0.5,
        "walk-count": walks_ok,
    }
    return {
        "n": n,
        "classes": k,
        "conductance": {
            "phi_out": frac(best.phi),
            "witness": list(best.subset),
            "exact": best.exact,
        },
        "bridged": {
            "size": bb.bridged_count,
            "members": list(bb.result.subset),
            "boundary": bb.result.boundary,
            "phi_out": frac(bb.result.phi),
            "bound_holds": bb.bound_holds,
            "volume_bound": frac(bb.volume_bound),
            "below_volume_bound": bb.below_volume_bound,
            "comparator": bb.comparator,
            "boundary_arcs": len(arcs),
            "unlocalized_arcs": sum(not a.localized for a in arcs),
        },
        "spectrum": spec.to_dict(),
        "positive_power": power,
        "small_cycles": {key: list(v) if v else None for key, v in cycles.items()},
        "invariants": invariants,
    }


def cmd_analyze(args) -> int:
    G = get_gog(args.n, "orbit", True, args.cache_dir, args.workers)
    report = analyze(G, exact=not args.heuristic, seed=args.seed)
    config = RunConfig("analyze", n=args.n, mode="orbit", exact=not args.heuristic, seed=args.seed)
    if args.format == "csv":
        c, b = report["conductance"], report["bridged"]
        body = "n,V,B,boundary_B,phi_out_B,phi_out,comparator\n"
        body += (f"{args.n},{report['classes']},{b['size']},{b['boundary']},{b['phi_out']},"
                 f"{c['phi_out'] if c['exact'] else 'heuristic'},{b['comparator']:.12g}\n")
        emit(with_header(body, config), args.out)
    else:
        emit(json_document(report, config), args.out)
    failed = [name for name, ok in report["invariants"].items() if not ok]
    if failed:
        raise InvariantViolation(failed)
    return EXIT_OK


# -- certificates -------------------------------------------------------------

def certificate_text(cert) -> str:
    from .canonical import canonical_form
    from .moves import apply_move

    lines = [f"cert {short_hash(cmg.dumps(cert.start))} {short_hash(canonical_form(cert.end))}"]
    lines.append(cmg.dumps(cert.start).rstrip("\n"))
    lines.append("moves")
    g = cert.start
    for m in cert.moves:
        g = apply_move(g, m)
        lines.append(f"{m.edge} {m.move_type} {short_hash(cmg.dumps(g))}")
    return "\n".join(lines) + "\n"


def replay_certificate(text: str) -> str:
    """Replay a certificate; returns the final canonical form or raises ReplayMismatch."""
    from .canonical import canonical_form
    from .moves import WhiteheadMove, apply_move
    from .reduction import canonical_cubic_tree

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("cert "):
        raise cmg.FormatError("missing cert header")
    head = lines[0].split()
    if len(head) != 3:
        raise cmg.FormatError(f"bad cert header {lines[0]!r}")
    start_hash, end_hash = head[1], head[2]
    try:
        split = lines.index("moves")
    except ValueError:
        raise cmg.FormatError("missing moves section") from None
    g = cmg.loads("\n".join(lines[1:split]))
    if short_hash(cmg.dumps(g)) != start_hash:
        raise ReplayMismatch("replay mismatch at step 0 (start graph)")
    for k, line in enumerate(lines[split + 1:], start=1):
        parts = line.split()
        try:
            m = WhiteheadMove(int(parts[0]), int(parts[1]))
            g = apply_move(g, m)
        except (ValueError, KeyError, IndexError):
            raise ReplayMismatch(f"replay mismatch at step {k}") from None
        if len(parts) > 2 and short_hash(cmg.dumps(g)) != parts[2]:
            raise ReplayMismatch(f"replay mismatch at step {k}")
    code = canonical_form(g)
    if short_hash(code) != end_hash or code != canonical_form(canonical_cubic_tree(g.n)):
        raise ReplayMismatch("replay mismatch at end")
    return code


def cmd_reduce(args) -> int:
    from .reduction import reduce_to_canonical

    text = read_input(args.graph)
    g = cmg.loads(text)
    cert = reduce_to_canonical(g)
    config = RunConfig("reduce", n=g.n, input_sha256=sha256(text))
    doc = with_header(certificate_text(cert), config)
    emit(doc, args.out)
    note(f"{len(cert.moves)} moves")
    if args.replay:
        replay_certificate(doc)
        note("OK, end = canonical")
    return EXIT_OK


def cmd_replay(args) -> int:
    replay_certificate(read_input(args.cert))
    print("OK, end = canonical")
    return EXIT_OK


# -- sampling and small tools -------------------------------------------------

def cmd_sample(args) -> int:
    from .random_model import estimate, exact_estimate

    if args.exact:
        est = exact_estimate(args.event, args.num_vertices)
    else:
        est = estimate(args.event, args.num_vertices, args.trials, args.seed, workers=args.workers)
    config = RunConfig("sample", num_vertices=args.num_vertices, event=args.event,
                       exact=args.exact, seed=0 if args.exact else args.seed,
                       trials=None if args.exact else args.trials)
    body = "event,2n,T,p_hat,ci_lo,ci_hi,seed,conditioning_rate\n"
    body += (f"{est.event},{est.num_vertices},{est.trials},{est.p_hat:.10g},{est.ci_low:.10g},"
             f"{est.ci_high:.10g},{est.seed},{est.conditioning_rate:.10g}\n")
    emit(with_header(body, config), args.out)
    return EXIT_OK


def cmd_orbits(args) -> int:
    from .canonical import automorphisms, edge_orbits

    text = read_input(args.graph)
    g = cmg.loads(text)
    result = {
        "automorphism_order": automorphisms(g).order,
        "orbits": [[[m.edge, m.move_type] for m in orb] for orb in edge_orbits(g)],
    }
    emit(json_document(result, RunConfig("orbits", n=g.n, input_sha256=sha256(text))), args.out)
    return EXIT_OK


def cmd_classify_bridge(args) -> int:
    from .graph import bridges
    from .moves import classify_bridge_case

    text = read_input(args.graph)
    g = cmg.loads(text)
    case = classify_bridge_case(g, args.edge)
    result = {"edge": args.edge, "bridge": args.edge in bridges(g), "case": case.name}
    emit(json_document(result, RunConfig("classify-bridge", n=g.n, input_sha256=sha256(text))),
         args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", "-o", help="output file (default stdout)")
    common.add_argument("--cache-dir", help="reuse catalogs and Gamma_n matrices from here")
    common.add_argument("--workers", type=int, default=1, help="process count (results do not depend on it)")

    parser = _Parser(prog="cubicmoves", description="Whitehead moves on cubic multigraphs")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="catalog of classes on 2n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=["auto", "pairings", "multigraphs"], default="auto")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gog", parents=[common], help="build Gamma_n as JSON (and DOT, CSV)")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=["orbit", "bruteforce", "compare"], default="orbit")
    p.add_argument("--no-loop-moves", action="store_true",
                   help="non-default: drop the identity moves on loops")
    p.add_argument("--dot", help="also write Graphviz DOT here")
    p.add_argument("--matrix-csv", help="also write the integer matrix as CSV here")
    p.set_defaults(func=cmd_gog)

    p = sub.add_parser("analyze", parents=[common], help="conductance, spectrum and invariants")
    p.add_argument("n", type=int)
    p.add_argument("--heuristic", action="store_true", help="skip exact conductance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", parents=[common], help="certificate reducing a graph to the canonical tree")
    p.add_argument("graph", help="CMG file or - for stdin")
    p.add_argument("--replay", action="store_true", help="replay the certificate after writing it")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("replay", parents=[common], help="verify a certificate")
    p.add_argument("cert")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("sample", parents=[common], help="configuration-model estimate as CSV")
    p.add_argument("event", choices=["has_loop", "has_bridge", "loopless_and_nonhamiltonian"])
    p.add_argument("num_vertices", type=int, metavar="2n")
    p.add_argument("trials", type=int, nargs="?", default=10000, metavar="T")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="enumerate all pairings (2n <= 4)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("orbits", parents=[common], help="(edge, type) orbits of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("classify-bridge", parents=[common], help="bridge case of an edge")
    p.add_argument("graph")
    p.add_argument("edge", type=int)
    p.set_defaults(func=cmd_classify_bridge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        note(str(exc))
        return EXIT_INVARIANT
    except ReplayMismatch as exc:
        note(str(exc))
        return EXIT_INVARIANT
    except GraphSizeError as exc:
        note(f"size limit: {exc}")
        return EXIT_SIZE
    except (cmg.FormatError, InvalidGraphError, ValueError, KeyError, OSError) as exc:
        note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
