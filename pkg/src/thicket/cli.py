"""Command-line front end: ``thicket analyze | typetree | eh | lowerbound | verify``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .complexity import (
    BudgetExceeded,
    ConsistencyError,
    dim_witness,
    dual_dim,
    phi,
    rho,
    sauer_shelah_report,
    sigma,
    thicket_dim,
    vc_dim,
)
from .decision import lower_bound_experiment
from .graphs import GraphError, PIVOTS, eh_extract, eh_size_bound, path_split, type_tree, type_tree_violations
from .ladders import max_ladder
from .report import AnalysisReport, ReportError, load_input, load_report, tree_record, verify_results
from .setsystem import ParseError, SetSystemError
from .trees import LabeledTree, realization_certificate, to_dot

EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_CONSISTENCY = 3


def _guarded(fn):
    """Run one sub-analysis; budget exhaustion becomes a record instead of an abort."""
    try:
        return fn()
    except BudgetExceeded as exc:
        rec = {"status": "budget-exceeded", "message": str(exc)}
        if getattr(exc, "best", None) is not None and hasattr(exc.best, "to_record"):
            rec["best_found"] = exc.best.to_record()
        return rec


def _dim_section(system) -> dict:
    d = thicket_dim(system)
    rec = {"value": d, "witness_tree": None}
    labels = dim_witness(system)
    if labels is not None:
        tree = LabeledTree.from_labels(labels)
        rec["witness_tree"] = tree_record(labels, realization_certificate(tree, system))
    return rec


def _sigma_section(system, nmax: int) -> dict:
    if not system.family:
        return {"status": "undefined"}
    top = (1 << (nmax + 1)) - 1
    return {str(n): sigma(system, n) for n in range(1, top + 1)}


def _ladder_section(system, strict: bool, budget: int) -> dict:
    lad = max_ladder(system, k_max=2 * system.domain_size + 1, strict=strict, budget=budget)
    return {"length": len(lad), **lad.to_record()}


def analyze(args) -> AnalysisReport:
    desc, system, graph = load_input(args.input, args.format)
    flags = {"nmax": args.nmax, "budget": args.budget, "format": desc["format"]}
    res: dict = {"domain_size": system.domain_size, "family_size": len(system.family)}
    res["dim"] = _dim_section(system)
    res["dual_dim"] = dual_dim(system)
    res["vc_dim"] = vc_dim(system)
    d = res["dim"]["value"]
    res["rho"] = [rho(system, n) for n in range(args.nmax + 1)]
    res["phi"] = [phi(n, d) for n in range(args.nmax + 1)]
    res["sigma"] = _sigma_section(system, args.nmax)
    res["max_ladder"] = _guarded(lambda: _ladder_section(system, False, args.budget))
    res["max_strict_ladder"] = _guarded(lambda: _ladder_section(system, True, args.budget))
    table = sauer_shelah_report(system, args.nmax, strict=False)
    res["sauer_shelah"] = {"status": "ok" if not table.violations else "violated", "violations": table.violations}
    if table.violations:
        raise ConsistencyError("; ".join(table.violations))
    return AnalysisReport(desc, "analyze", flags, res)


def _need_graph(graph):
    if graph is None:
        raise GraphError("this command needs an edge-list input")
    return graph


def typetree(args) -> tuple[AnalysisReport, str]:
    desc, system, graph = load_input(args.input, args.format, prefer="edges")
    graph = _need_graph(graph)
    tt = type_tree(graph, None, args.pivot, args.seed)
    bad = type_tree_violations(graph, tt)
    if bad:
        raise ConsistencyError("; ".join(bad))
    splits = []
    for end in tt.leaves():
        q, r = path_split(graph, tt, end)
        splits.append({"end": end or "root", "clique": sorted(q), "independent": sorted(r)})
    res = {"type_tree": tt.to_record(), "depth": tt.depth, "path_splits": splits}
    flags = {"pivot": args.pivot, "seed": args.seed, "format": desc["format"]}
    names = [graph.name(v) for v in range(graph.n)]
    dot = to_dot(tt.element_tree(), system, names=names, title="TypeTree")
    return AnalysisReport(desc, "typetree", flags, res), dot


def eh(args) -> AnalysisReport:
    desc, system, graph = load_input(args.input, args.format, prefer="edges")
    graph = _need_graph(graph)
    hom = eh_extract(graph, args.pivot, args.seed)
    rec = hom.to_record()
    rec["bound_from_dim"] = eh_size_bound(graph.n, max(hom.dim, 0))
    rec["meets_depth_bound"] = rec["size"] >= rec["bound_from_depth"]
    rec["meets_dim_bound"] = rec["size"] >= rec["bound_from_dim"]
    bad = verify_results({"homogeneous": rec}, system, graph)
    if bad or not (rec["meets_depth_bound"] and rec["meets_dim_bound"]):
        raise ConsistencyError("; ".join(bad) or "homogeneous set below its guaranteed size")
    flags = {"pivot": args.pivot, "seed": args.seed, "format": desc["format"]}
    return AnalysisReport(desc, "eh", flags, {"homogeneous": rec})


def lowerbound(args) -> AnalysisReport:
    rows = lower_bound_experiment(args.structure, range(args.nmin, args.nmax + 1), args.depth_cap, args.budget)
    flags = {"structure": args.structure, "nmin": args.nmin, "nmax": args.nmax, "budget": args.budget, "depth_cap": args.depth_cap}
    res = {"rows": [r.to_record() for r in rows], "expected_equality": [1 << (n - 1) for n in range(args.nmin, args.nmax + 1)]}
    return AnalysisReport({"file": None}, "lowerbound", flags, res)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thicket", description="Thicket complexity of set systems and graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=1_000_000):
        sp.add_argument("input", type=Path)
        sp.add_argument("--format", choices=("incidence", "edges", "auto"), default="auto")
        sp.add_argument("--out", type=Path)
        sp.add_argument("--budget", type=int, default=budget)

    a = sub.add_parser("analyze", help="dimensions, shatter tables, ladders")
    common(a)
    a.add_argument("--nmax", type=int, default=3)

    for name, text in (("typetree", "type tree of a graph"), ("eh", "homogeneous set from a type tree")):
        t = sub.add_parser(name, help=text)
        common(t)
        t.add_argument("--pivot", choices=PIVOTS, default="lowest")
        t.add_argument("--seed", type=int, default=0)
        if name == "typetree":
            t.add_argument("--dot", type=Path)

    lb = sub.add_parser("lowerbound", help="minimum decision depth for {x < 2^(n-1)}")
    lb.add_argument("--structure", choices=("equality", "order"), default="equality")
    lb.add_argument("--nmin", type=int, default=2)
    lb.add_argument("--nmax", type=int, default=4)
    lb.add_argument("--budget", type=int, default=200_000)
    lb.add_argument("--depth-cap", type=int, default=16)
    lb.add_argument("--out", type=Path)

    v = sub.add_parser("verify", help="re-check the witnesses in a saved report")
    v.add_argument("report", type=Path)
    v.add_argument("--input", type=Path)
    return p


def _emit(report: AnalysisReport, out: Path | None) -> None:
    text = report.to_text()
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze" and not 0 <= args.nmax <= 24:
        print("thicket: --nmax must lie in 0..24", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "lowerbound" and not 1 <= args.nmin <= args.nmax:
        print("thicket: need 1 <= --nmin <= --nmax", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "analyze":
            _emit(analyze(args), args.out)
        elif args.command == "typetree":
            report, dot = typetree(args)
            _emit(report, args.out)
            dot_path = args.dot or (args.out.with_suffix(".dot") if args.out else None)
            if dot_path is not None:
                dot_path.write_text(dot)
            else:
                sys.stdout.write(dot)
        elif args.command == "eh":
            _emit(eh(args), args.out)
        elif args.command == "lowerbound":
            _emit(lowerbound(args), args.out)
        else:
            rep = load_report(args.report, args.input)
            print(f"ok: {rep.command} report verified")
    except (ParseError, SetSystemError, GraphError, OSError, UnicodeDecodeError) as exc:
        print(f"thicket: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConsistencyError, ReportError) as exc:
        print(f"thicket: consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    return 0


if __name__ == "__main__":
    sys.exit(main())
