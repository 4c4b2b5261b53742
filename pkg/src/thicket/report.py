"""Analysis reports: deterministic JSON records whose witnesses re-verify on load."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .graphs import (
    Graph,
    is_clique,
    is_independent,
    neighborhood_system,
    parse_edges,
    type_tree_violations,
    TypeTree,
)
from .ladders import Ladder, ladder_violations
from .setsystem import ParseError, SetSystem, parse_incidence
from .trees import LabeledTree, TreeError, is_full


class ReportError(ValueError):
    pass


@dataclass
class AnalysisReport:
    input: dict
    command: str
    flags: dict
    results: dict = field(default_factory=dict)
    version: str = __version__

    def to_text(self) -> str:
        body = {
            "toolkit_version": self.version,
            "command": self.command,
            "flags": self.flags,
            "input": self.input,
            "results": self.results,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, text: str) -> AnalysisReport:
        raw = json.loads(text)
        return cls(raw["input"], raw["command"], raw["flags"], raw["results"], raw["toolkit_version"])


def detect_format(text: str, prefer: str = "incidence") -> str:
    """'edges' when the first line after the header has two tokens.

    A header with no body (an edgeless graph or a family with no sets) is
    ambiguous and resolves to ``prefer``.
    """
    rows = [ln.split("#")[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if len(rows) < 2:
        return prefer
    return "edges" if len(rows[1]) == 2 else "incidence"


def load_input(path: str | Path, fmt: str = "auto", prefer: str = "incidence") -> tuple[dict, SetSystem, Graph | None]:
    data = Path(path).read_bytes()
    text = data.decode()
    if fmt == "auto":
        fmt = detect_format(text, prefer)
    if fmt == "edges":
        graph = parse_edges(text)
        system = neighborhood_system(graph)
    elif fmt == "incidence":
        graph = None
        system = parse_incidence(text)
    else:
        raise ParseError(1, f"unknown format {fmt!r}")
    desc = {"file": Path(path).name, "format": fmt, "sha256": hashlib.sha256(data).hexdigest()}
    return desc, system, graph


def tree_record(labels: dict[str, int], cert: dict[str, int | None] | None = None) -> dict:
    rec = {"labels": {v or "root": x for v, x in sorted(labels.items())}}
    if cert is not None:
        rec["witnesses"] = {v or "root": f for v, f in sorted(cert.items())}
    return rec


def _labels_from_record(rec: dict) -> dict[str, int]:
    return {("" if v == "root" else v): x for v, x in rec["labels"].items()}


def verify_results(results: dict, system: SetSystem, graph: Graph | None) -> list[str]:
    """Re-check every witness embedded in ``results``; returns the failures."""
    bad = []
    dim = results.get("dim")
    if isinstance(dim, dict) and dim.get("witness_tree") is not None:
        try:
            tree = LabeledTree.from_labels(_labels_from_record(dim["witness_tree"]))
        except TreeError as exc:
            bad.append(f"dimension witness tree is malformed: {exc}")
        else:
            if tree.depth != max(dim["value"], 0) or not is_full(tree, system):
                bad.append("dimension witness tree is not full at the reported depth")
    for key in ("max_ladder", "max_strict_ladder"):
        rec = results.get(key)
        if isinstance(rec, dict) and "elements" in rec:
            lad = Ladder(tuple(rec["elements"]), tuple(rec["sets"]), rec["strict"])
            if ladder_violations(system, lad):
                bad.append(f"{key} violates the ladder pattern")
    tt = results.get("type_tree")
    if isinstance(tt, dict) and graph is not None:
        labels = _labels_from_record(tt)
        tree = TypeTree(labels, {x: v for v, x in labels.items()})
        if type_tree_violations(graph, tree):
            bad.append("type tree invariants fail")
    for split in results.get("path_splits", []) if graph is not None else []:
        if not is_clique(graph, split["clique"]) or not is_independent(graph, split["independent"]):
            bad.append(f"path split at {split['end']!r} is not a clique/independent pair")
    hom = results.get("homogeneous")
    if isinstance(hom, dict) and graph is not None:
        check = is_clique if hom["kind"] == "clique" else is_independent
        if not check(graph, hom["vertices"]):
            bad.append("homogeneous set is not homogeneous")
    return bad


def load_report(path: str | Path, input_path: str | Path | None = None) -> AnalysisReport:
    """Parse a report and re-verify its witnesses against the input it names."""
    report = AnalysisReport.from_text(Path(path).read_text())
    if report.input.get("file") is None:
        return report
    src = Path(input_path) if input_path is not None else Path(path).parent / report.input["file"]
    desc, system, graph = load_input(src, report.input["format"])
    if desc["sha256"] != report.input["sha256"]:
        raise ReportError("input file changed since the report was written")
    bad = verify_results(report.results, system, graph)
    if bad:
        raise ReportError("; ".join(bad))
    return report
