"""Command-line surface.

Every verb maps to one library operation chain and prints deterministic
output: exact rational strings by default, decimal only under ``--float``.
Exit codes: 0 success, 1 domain error, 2 usage error.

The ``PERMUTOPE_CAP`` environment variable overrides size guards with
comma-separated ``name=value`` pairs; recognized names are ``cycles``,
``enum``, ``overlap``, ``faces`` and ``mix``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import limits
from .errors import PermutopeError
from .feasible import FeasibleRegion, convergence_report, mix
from .graphs import Multigraph
from .overlap import build_overlap_graph, eulerian_universal_permutation
from .perms import PatternVector, Permutation, proportion_vector
from .rationals import float_str


def _env_caps() -> dict[str, int]:
    caps: dict[str, int] = {}
    raw = os.environ.get("PERMUTOPE_CAP", "")
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"PERMUTOPE_CAP entry {part!r} is not name=value")
        caps[name.strip()] = int(value)
    return caps


def _cap(name: str, default: int) -> int:
    return _env_caps().get(name, default)


def _fmt(value: Fraction, args: argparse.Namespace) -> str:
    return float_str(value) if getattr(args, "float", False) else str(value)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_graph(args: argparse.Namespace) -> Multigraph:
    if getattr(args, "graph", None):
        return Multigraph.from_json(Path(args.graph).read_text(encoding="utf-8"))
    if getattr(args, "k", None):
        return build_overlap_graph(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP)).graph
    raise ValueError("pass --k or --graph")


def _parse_vector(spec: str, k: int) -> PatternVector:
    if spec == "uniform":
        return PatternVector.uniform(k)
    if spec.startswith("@"):
        data = json.loads(Path(spec[1:]).read_text(encoding="utf-8"))
    else:
        data = json.loads(spec)
    vector = PatternVector.from_json_dict(data)
    if vector.k != k:
        raise ValueError(f"vector is over S_{vector.k}, expected S_{k}")
    return vector


def _vector_json(vector: PatternVector, args: argparse.Namespace) -> dict:
    data = vector.to_json_dict()
    if getattr(args, "float", False):
        data["entries"] = {w: float_str(Fraction(v)) for w, v in data["entries"].items()}
    return data


def _decomposition_json(region: FeasibleRegion, decomposition, args) -> list[dict]:
    og = region.overlap
    return [
        {
            "weight": _fmt(w, args),
            "cycle_edges": list(c.edge_ids),
            "cycle_labels": [str(og.edge_permutation(e)) for e in c.edge_ids],
        }
        for w, c in decomposition
    ]


# -- verb handlers -------------------------------------------------------------


def _cmd_stats(args: argparse.Namespace) -> int:
    sigma = Permutation.parse(args.perm)
    vector = proportion_vector(
        args.k, sigma, args.kind, enum_n_cap=_cap("enum", limits.ENUM_N_CAP)
    )
    print(_dump(_vector_json(vector, args)))
    return 0


def _cmd_overlap(args: argparse.Namespace) -> int:
    og = build_overlap_graph(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP))
    g = og.graph
    if args.dot:
        _write_or_print(g.to_dot(name=f"OV{args.k}"), args.dot)
    if args.json:
        _write_or_print(g.to_json(), args.json)
    if not args.dot and not args.json:
        degree = g.out_degree(0)
        print(
            f"k={args.k}: {g.n_vertices} vertices, {g.n_edges} edges, "
            f"{'strongly connected' if g.is_strongly_connected() else 'not strongly connected'}, "
            f"{degree}-regular"
        )
    return 0


def _cmd_vertices(args: argparse.Namespace) -> int:
    from .polytope import CyclePolytope

    graph = _load_graph(args)
    poly = CyclePolytope(graph)
    vertices = poly.vertices(max_cycles=_cap("cycles", args.max_cycles))
    payload = {
        "count": len(vertices),
        "vertices": [
            {
                "cycle_edges": list(cv.cycle.edge_ids),
                "cycle_labels": [graph.label(e) for e in cv.cycle.edge_ids],
                "vector": {
                    graph.label(e): _fmt(cv.entries[e], args) for e in cv.cycle.edge_ids
                },
            }
            for cv in vertices
        ],
    }
    print(_dump(payload))
    return 0


def _cmd_dim(args: argparse.Namespace) -> int:
    from .polytope import CyclePolytope

    graph = _load_graph(args)
    print(CyclePolytope(graph).dimension())
    return 0


def _cmd_member(args: argparse.Namespace) -> int:
    region = FeasibleRegion(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP))
    vector = _parse_vector(args.vector, args.k)
    result = region.membership(vector)
    print("true" if result.member else "false")
    if result.member:
        print(_dump({"decomposition": _decomposition_json(region, result.decomposition, args)}))
    else:
        print(_dump({"violation": result.violation}))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    region = FeasibleRegion(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP))
    vector = _parse_vector(args.vector, args.k)
    decomposition = region.polytope.convex_decomposition(region.point_of(vector))
    print(_dump({"decomposition": _decomposition_json(region, decomposition, args)}))
    return 0


def _cmd_realize(args: argparse.Namespace) -> int:
    region = FeasibleRegion(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP))
    vector = _parse_vector(args.vector, args.k)
    sigma, plan = region.realize(vector, args.m)
    print(sigma)
    if args.plan:
        _write_or_print(plan.to_json(), args.plan)
    return 0


def _cmd_mix(args: argparse.Namespace) -> int:
    inner = Permutation.parse(args.perm_a)
    outer = Permutation.parse(args.perm_b)
    mixed = mix(lambda m: inner, lambda m: outer, 1, size_cap=_cap("mix", limits.MIX_SIZE_CAP))
    print(mixed)
    return 0


def _cmd_universal(args: argparse.Namespace) -> int:
    print(eulerian_universal_permutation(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP)))
    return 0


def _cmd_faces(args: argparse.Namespace) -> int:
    from .polytope import CyclePolytope

    graph = _load_graph(args)
    poly = CyclePolytope(graph)
    poset = poly.face_poset(max_edges=_cap("faces", args.max_edges))
    by_dim = poset.by_dimension()
    payload = {
        "polytope_dimension": poly.dimension(),
        "face_counts": {str(dim): len(handles) for dim, handles in by_dim.items()},
        "faces": [
            {"dimension": dim, "edges": list(h.edge_ids)}
            for dim, handles in by_dim.items()
            for h in handles
        ],
    }
    print(_dump(payload))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    region = FeasibleRegion(args.k, max_k=_cap("overlap", limits.OVERLAP_K_CAP))
    vector = _parse_vector(args.vector, args.k)
    plan = region.plan(vector)
    if args.m_values:
        m_values = [int(part) for part in args.m_values.split(",")]
    else:
        # Default schedule: powers of two while the generated size fits.
        m_values, m = [], 1
        while plan.size_for(m) <= args.max_size:
            m_values.append(m)
            m *= 2
        if not m_values:
            raise ValueError("no m fits under --max-size; pass --m-values explicitly")
    report = convergence_report(
        plan.generate,
        args.k,
        m_values,
        consecutive_target=vector,
        include_classical=not args.no_classical,
        enum_n_cap=_cap("enum", limits.ENUM_N_CAP),
    )
    _write_or_print(report.to_csv(), args.out)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    graph = _load_graph(args)
    if args.format == "dot":
        _write_or_print(graph.to_dot(), args.out)
    else:
        _write_or_print(graph.to_json(), args.out)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permutope",
        description="Consecutive pattern statistics and cycle-polytope geometry of permutations.",
    )
    parser.add_argument(
        "--float",
        action="store_true",
        help="display proportions as 12-digit decimals instead of exact rationals",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; the current implementation is single-threaded",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("stats", help="pattern proportion vector of a permutation")
    p.add_argument("--perm", required=True, help="permutation (digits, or comma-separated)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=["classical", "consecutive"], required=True)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("overlap", help="build the overlap graph; summary, DOT or JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dot", metavar="FILE", help="write DOT with pattern edge labels")
    p.add_argument("--json", metavar="FILE", help="write the JSON graph format")
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("vertices", help="polytope vertices = simple cycles")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=int, help="use the overlap graph of size k")
    src.add_argument("--graph", metavar="FILE", help="use a JSON graph file")
    p.add_argument("--max-cycles", type=int, default=limits.CYCLE_CAP)
    p.set_defaults(func=_cmd_vertices)

    p = sub.add_parser("dim", help="dimension of the cycle polytope")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=int)
    src.add_argument("--graph", metavar="FILE")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("member", help="test membership in the feasible region")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vector", required=True, help="'uniform', inline JSON, or @file")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("decompose", help="convex decomposition of a feasible vector")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("realize", help="permutation realizing a feasible vector")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--m", type=int, required=True, help="size parameter")
    p.add_argument("--plan", metavar="FILE", help="also write the realization plan JSON")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("mix", help="substitute copies of A into B")
    p.add_argument("--perm-a", required=True, help="consecutive-side permutation")
    p.add_argument("--perm-b", required=True, help="classical-side permutation")
    p.set_defaults(func=_cmd_mix)

    p = sub.add_parser("universal", help="permutation with every size-k pattern once")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_universal)

    p = sub.add_parser("faces", help="face poset via full-subgraph enumeration")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=int)
    src.add_argument("--graph", metavar="FILE")
    p.add_argument("--max-edges", type=int, default=limits.FACE_EDGE_CAP)
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("report", help="convergence CSV for a realization plan")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--m-values", help="comma-separated m values (default: powers of 2)")
    p.add_argument("--max-size", type=int, default=4096, help="size cap for the default schedule")
    p.add_argument("--no-classical", action="store_true", help="skip classical columns")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("export", help="export a graph as DOT or JSON")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=int)
    src.add_argument("--graph", metavar="FILE", help="input JSON graph")
    p.add_argument("--format", choices=["dot", "json"], required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_export)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PermutopeError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
