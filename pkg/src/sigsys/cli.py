"""Command-line front end.

Exit codes: 0 done, 1 requested artifact unavailable, 2 invalid input,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Any

from . import graphs
from .graphs import Graph, GraphError, GuardExceeded, count_4cycles, is_bipartite, read_graph
from .intlin import quotient
from .oracle import DEFAULT_ORACLE_GUARD, abelian_signature, component_of_constants, path_to_constant
from .system import (
    BIPARTITE,
    CHI_GE_4,
    NO_HOM,
    DEFAULT_PARITY,
    build_system,
    decide,
    extract_certificate,
    k3_feasible,
    no_hom_test,
    validate_host,
    verdict,
    verify_certificate,
)
from .valued import builtin, custom_odd_cycle_dset, parse_valued, theta

EXIT_OK, EXIT_UNAVAILABLE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def env_guard(default: int) -> int:
    raw = os.environ.get("SIGSYS_GUARD")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SIGSYS_GUARD must be a decimal integer, got {raw!r}") from None


@dataclass
class AnalysisReport:
    graph: dict[str, Any]
    dset: list[str]
    group: dict[str, Any]
    system: dict[str, Any] | None
    feasible: bool
    conclusions: list[str]
    solution: dict[str, Any] | None = None
    certificate: dict[str, Any] | None = None
    reference: dict[str, Any] | None = None
    target: dict[str, Any] | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls(**json.loads(text))


def graph_summary(g: Graph) -> dict[str, Any]:
    return {
        "vertices": g.n,
        "edges": g.num_edges,
        "arcs": len(g.arcs),
        "bipartite": is_bipartite(g),
        "four_cycles": count_4cycles(g) if g.is_simple else None,
    }


def load_graph(path: str) -> Graph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def resolve_dset(args) -> list:
    dset = []
    names = args.dset
    if names is None and not args.dset_file and not args.wtd:
        names = "d1"
    if names:
        for name in names.split(","):
            if name.strip():
                dset.append(builtin(name.strip()))
    for path in args.dset_file or []:
        try:
            with open(path) as fh:
                dset.append(parse_valued(fh.read(), name=os.path.basename(path)))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    if args.wtd:
        dset.append(custom_odd_cycle_dset(load_graph(args.wtd)))
    return dset


def _add_dset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dset", help="comma-separated built-in valued digraphs (d1,d2,d3); default d1")
    p.add_argument("--dset-file", action="append", help="custom valued digraph file (repeatable)")
    p.add_argument("--wtd", metavar="GRAPH", help="valued digraph from an odd cycle of GRAPH")


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sig-p", type=int, default=1)
    p.add_argument("--sig-q", type=int, default=-1)
    p.add_argument("--parity-p", type=int, default=2)
    p.add_argument("--parity-q", type=int, default=1)


def _solution_json(S, sol) -> dict[str, Any]:
    return {
        "arcs": [[u, v, x] for (u, v), x in zip(S.arcs, sol.arc_values) if x],
        "N": sol.N,
        "torsion_aux": list(sol.torsion_aux),
    }


# -- commands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.name == "mycielski":
        if not args.base or args.levels is None:
            raise InputError("mycielski needs --base GRAPH and --levels N")
        g = graphs.mycielski_cone(load_graph(args.base), args.levels)
    else:
        g = graphs.gen_named(args.name, args.n)
    text = graphs.format_graph(g)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_group(args, guard: int) -> int:
    g = load_graph(args.graph)
    dset = resolve_dset(args)
    Q = quotient(len(g.arcs), theta(dset, g, guard).relations)
    out = {"free_rank": Q.free_rank, "torsion": sorted(Q.invariant_factors), "ambient_rank": Q.ambient_rank}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"free rank: {Q.free_rank}")
        print(f"torsion: {sorted(Q.invariant_factors)}")
    return EXIT_OK


def analyze(g: Graph, dset, sig, parity, guard: int, target: Graph | None = None, certify: bool = False):
    """Full pipeline; returns (report, system, result)."""
    validate_host(g)
    Q = quotient(len(g.arcs), theta(dset, g, guard).relations)
    group = {"free_rank": Q.free_rank, "torsion": sorted(Q.invariant_factors)}
    names = [d.name for d in dset]
    if is_bipartite(g) and parity == DEFAULT_PARITY:
        return AnalysisReport(graph_summary(g), names, group, None, False, [BIPARTITE]), None, None
    S = build_system(g, dset, sig, parity, guard, group=Q)
    res = decide(S)
    v = verdict(g, S, res)
    conclusions = set(v.conclusions)
    report = AnalysisReport(
        graph_summary(g),
        names,
        group,
        {"variables": S.num_variables, "equations": S.num_equations, "feasible": res.feasible},
        res.feasible,
        [],
    )
    if res.feasible:
        report.solution = _solution_json(S, res.solution)
        if certify and S.is_default:
            cert = extract_certificate(S, res.solution)
            report.certificate = {
                "walk": list(cert.walk),
                "length": cert.length,
                "valid": verify_certificate(g, S.quotient, cert, S.sig_params),
            }
    if CHI_GE_4 in conclusions:
        report.reference = {"K3": {"feasible": k3_feasible(S.dset, sig, parity)}}
    if target is not None:
        validate_host(target)
        proof = no_hom_test(g, target, dset, sig, parity, guard)
        report.target = {"vertices": target.n, "edges": target.num_edges, "no_hom_proof": proof is not None}
        if proof is not None and proof.check():
            conclusions.add(NO_HOM)
            report.target["witness"] = {"row": list(proof.witness.row), "modulus": proof.witness.modulus}
    report.conclusions = sorted(conclusions)
    return report, S, res


def cmd_analyze(args, guard: int) -> int:
    g = load_graph(args.graph)
    dset = resolve_dset(args)
    target = load_graph(args.target) if args.target else None
    report, _, _ = analyze(
        g, dset, (args.sig_p, args.sig_q), (args.parity_p, args.parity_q), guard, target, args.certificate
    )
    if args.json:
        print(report.to_json())
    else:
        print(f"graph: {g.n} vertices, {g.num_edges} edges")
        print(f"group: free rank {report.group['free_rank']}, torsion {report.group['torsion']}")
        print(f"feasible: {str(report.feasible).lower()}")
        print(f"conclusions: {', '.join(report.conclusions)}")
        if report.certificate:
            print(f"certificate: {' '.join(map(str, report.certificate['walk']))}")
    return EXIT_OK


def cmd_certify(args, guard: int) -> int:
    g = load_graph(args.graph)
    dset = resolve_dset(args)
    validate_host(g)
    S = build_system(g, dset, guard=guard)
    res = decide(S)
    if not res.feasible:
        if args.json:
            print(json.dumps({"feasible": False}))
        else:
            print("infeasible")
        return EXIT_UNAVAILABLE
    cert = extract_certificate(S, res.solution)
    ok = verify_certificate(g, S.quotient, cert)
    if args.json:
        print(json.dumps({"feasible": True, "walk": list(cert.walk), "length": cert.length, "valid": ok}))
    else:
        print(f"walk: {' '.join(map(str, cert.walk))}")
        print(f"length: {cert.length}")
        print("valid" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_UNAVAILABLE


def cmd_oracle(args, guard: int) -> int:
    g = load_graph(args.graph)
    validate_host(g)
    c = graphs.cycle(args.cycle)
    if args.cycle % 2 == 0:
        raise InputError("--cycle must be odd")
    if args.guard is not None:
        guard = args.guard
    comp = component_of_constants(g, c, guard)
    Q = quotient(len(g.arcs), theta([builtin("d1")], g).relations)
    zero = sum(1 for f in comp.loops if abelian_signature(g, c, f, Q).is_zero())
    homs = sum(1 for _ in graphs.iter_hom_images(c.n, c.edges, g, guard))
    out = {
        "component_size": len(comp),
        "loops": len(comp.loops),
        "zero_signature_loops": zero,
        "all_signatures_zero": zero == len(comp.loops),
        "homomorphisms_total": homs,
    }
    if comp.loops:
        path = path_to_constant(g, comp, comp.loops[0])
        out["cone_level"] = len(path) - 1
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigsys", description="Signature systems of graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named graph")
    p.add_argument("name", choices=list(graphs.NAMED) + ["mycielski"])
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--base", help="base graph file for mycielski")
    p.add_argument("--levels", type=int)

    p = sub.add_parser("group", help="presentation of Z^A(H) / theta(D)")
    p.add_argument("graph")
    _add_dset_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="solve the signature system and report verdicts")
    p.add_argument("graph")
    _add_dset_flags(p)
    _add_param_flags(p)
    p.add_argument("--target", help="target graph for a no-homomorphism test")
    p.add_argument("--certificate", action="store_true", help="include a walk certificate")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("certify", help="extract and verify an odd closed walk certificate")
    p.add_argument("graph")
    _add_dset_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="brute-force component of the constants in H^C")
    p.add_argument("graph")
    p.add_argument("--cycle", type=int, default=3)
    p.add_argument("--guard", type=int)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        guard = env_guard(DEFAULT_ORACLE_GUARD if args.command == "oracle" else graphs.DEFAULT_HOM_GUARD)
        handler = {"group": cmd_group, "analyze": cmd_analyze, "certify": cmd_certify, "oracle": cmd_oracle}
        return handler[args.command](args, guard)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
