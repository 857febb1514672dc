"""Command-line interface: exact | approx | decompose | gate | model | oracle.

Exit codes: 0 success, 2 invalid input, 3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .approx import RadiusPolicy, fptas_hol
from .errors import (
    HolantError,
    InstanceParseError,
    InvalidArgumentError,
    ResourceExhaustedError,
)
from .exact import FptSolver, brute_force_hol, simple_dp_hol
from .gates import gate_colorings, gate_ising, gate_potts, gate_subgraphs_world
from .graphcore import (
    Graph,
    complete_graph,
    cube_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    prism_graph,
    random_graph,
)
from .instancefile import parse_instance_document, serialize_instance
from .models import ModelSpec, build_model
from .oracle import gibbs_oracle
from .sepdecomp import find_min_width
from .values import format_value

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3


def _read_instance(path):
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    return parse_instance_document(text).to_instance()


def parse_graph_spec(spec: str) -> Graph:
    """path:N | cycle:N | grid:RxC | complete:N | prism | cube | random:N:M[:SEED] | edgelist:PATH"""
    name, _, rest = spec.partition(":")
    if name == "path":
        return path_graph(int(rest))
    if name == "cycle":
        return cycle_graph(int(rest))
    if name == "grid":
        rows, _, cols = rest.partition("x")
        return grid_graph(int(rows), int(cols))
    if name == "complete":
        return complete_graph(int(rest))
    if name == "prism":
        return prism_graph()
    if name == "cube":
        return cube_graph()
    if name == "random":
        parts = rest.split(":")
        seed = int(parts[2]) if len(parts) > 2 else 0
        return random_graph(int(parts[0]), int(parts[1]), seed=seed)
    if name == "edgelist":
        edges = []
        top = -1
        with open(rest, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                u, v = (int(t) for t in line.split()[:2])
                edges.append((u, v))
                top = max(top, u, v)
        return Graph(top + 1, edges)
    raise InvalidArgumentError(f"unknown graph spec {spec!r}")


def _cmd_exact(args):
    instance = _read_instance(args.file)
    t0 = time.perf_counter()
    if args.method == "brute":
        value = brute_force_hol(instance)
        extra = []
    elif args.method == "simple":
        value = simple_dp_hol(instance)
        extra = []
    else:
        from .exact import instance_decomposition

        decomp, s_used = instance_decomposition(instance, args.sep_width)
        solver = FptSolver(instance, decomp)
        value = solver.holant()
        st = solver.stats.as_dict()
        extra = [
            f"decomposition: s={s_used} width={decomp.width} nodes={len(decomp.nodes)}",
            "memo: " + " ".join(f"{k}={v}" for k, v in st.items()),
        ]
    elapsed = time.perf_counter() - t0
    print(f"value: {format_value(value)}")
    print(f"method: {args.method}")
    print(f"time: {elapsed:.3f}s")
    for line in extra:
        print(line)
    return EXIT_OK


def _cmd_approx(args):
    instance = _read_instance(args.file)
    if args.radius == "adaptive":
        policy = RadiusPolicy.adaptive()
    elif args.radius == "whole":
        policy = RadiusPolicy.whole_graph()
    elif args.radius.startswith("fixed:"):
        policy = RadiusPolicy.fixed(int(args.radius.split(":", 1)[1]))
    else:
        raise InvalidArgumentError(f"unknown radius policy {args.radius!r}")
    from .approx import SEARCH_PLUGINS

    if args.model_search != "auto" and args.model_search not in SEARCH_PLUGINS:
        raise InvalidArgumentError(
            f"unknown search plugin {args.model_search!r}; choose auto or one of {SEARCH_PLUGINS}"
        )
    t0 = time.perf_counter()
    result = fptas_hol(instance, Fraction(args.eps), policy, search_plugin=args.model_search)
    elapsed = time.perf_counter() - t0
    print(f"value: {format_value(result.value)}")
    print(f"approx: {float(result.value.real):.12g}")
    print(f"certified: {'yes' if result.certified else 'no'}")
    print(f"p_min: {result.p_min}")
    print(f"time: {elapsed:.3f}s")
    for flag in result.flags:
        print(f"flag: {flag}")
    return EXIT_OK


def _cmd_decompose(args):
    instance = _read_instance(args.file)
    decomp, s_used = find_min_width(instance.graph, args.sep_width)
    print(decomp.to_text())
    return EXIT_OK


def _cmd_gate(args):
    if args.model == "subgraphs_world":
        report = gate_subgraphs_world(args.delta, Fraction(args.lam), Fraction(args.mu))
    elif args.model == "ising":
        report = gate_ising(args.delta, Fraction(args.beta), Fraction(args.field))
    elif args.model == "potts":
        if args.beta is not None:
            report = gate_potts(args.delta, args.q, beta=Fraction(args.beta))
        elif args.lam is not None:
            report = gate_potts(args.delta, args.q, lam=Fraction(args.lam))
        else:
            raise InvalidArgumentError("potts gate needs --beta or --lambda")
    elif args.model == "colorings":
        report = gate_colorings(args.delta, args.q)
    else:
        raise InvalidArgumentError(f"no gate for model {args.model!r}")
    print(f"satisfied: {'yes' if report.satisfied else 'no'} threshold: {report.threshold_str()}")
    print(f"form: {report.form}")
    for note in report.notes:
        print(f"note: {note}")
    return EXIT_OK


def _cmd_model(args):
    graph = parse_graph_spec(args.graph)
    params = {}
    if args.q is not None:
        params["q"] = args.q
    for key, raw in (("lambda", args.lam), ("mu", args.mu), ("beta", args.beta), ("B", args.field)):
        if raw is not None:
            params[key] = Fraction(raw)
    if args.weights is not None:
        params["edge_weights"] = [Fraction(w) for w in args.weights.split(",")]
    instance = build_model(ModelSpec(args.kind, params), graph)
    text = serialize_instance(instance)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def _cmd_oracle(args):
    instance = _read_instance(args.file)
    oracle = gibbs_oracle(instance)
    if args.edge is None:
        print(f"value: {format_value(oracle.partition_value())}")
        return EXIT_OK
    cond = {}
    if args.cond:
        for part in args.cond.split(","):
            e, v = part.split("=")
            cond[int(e)] = int(v)
    dist = oracle.marginal(args.edge, cond)
    for i, p in enumerate(dist):
        print(f"p[{i}] = {p}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holant",
        description="Exact and approximate counting for Holant problems with regular symmetric functions.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; solvers are safe for concurrent use but the CLI runs single-threaded",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="compute the Holant exactly")
    p.add_argument("--method", choices=["brute", "simple", "fpt"], default="fpt")
    p.add_argument("--sep-width", type=int, default=64, help="cap on the separator parameter s")
    p.add_argument("file", nargs="?", help="instance file (default: stdin)")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("approx", help="approximate the Holant via correlation decay")
    p.add_argument("--eps", required=True, help="relative error target (rational)")
    p.add_argument("--radius", default="adaptive", help="adaptive | fixed:<r> | whole")
    p.add_argument("--model-search", default="auto")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("decompose", help="build and print a separator decomposition")
    p.add_argument("--sep-width", type=int, default=64)
    p.add_argument("file", nargs="?")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("gate", help="check a strong-spatial-mixing parameter gate")
    p.add_argument("model", choices=["subgraphs_world", "ising", "potts", "colorings"])
    p.add_argument("--delta", type=int, required=True, help="maximum degree")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--field", default="0", help="external field B (ising)")
    p.set_defaults(func=_cmd_gate)

    p = sub.add_parser("model", help="build a model instance and write the instance file")
    p.add_argument("kind", choices=[
        "matchings", "perfect_matchings", "weighted_matchings",
        "colorings", "potts", "subgraphs_world", "ising",
    ])
    p.add_argument("--graph", required=True, help="path:N|cycle:N|grid:RxC|complete:N|prism|cube|random:N:M[:S]|edgelist:PATH")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--field", default=None)
    p.add_argument("--weights", default=None, help="comma-separated edge weights")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("oracle", help="exact Gibbs marginals by enumeration")
    p.add_argument("--edge", type=int, default=None)
    p.add_argument("--cond", default=None, help="comma-separated e=v pairs")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ResourceExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (InstanceParseError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HolantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
