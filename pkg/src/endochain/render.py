"""Text renderings of tables, derivation reports and closures.

Every renderer returns a string; the CLI decides where it goes. Labels are
``a_k`` for elements of a two-anchor string and ``a_k_l`` (canonical) for
longer strings.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .chain_core import Carrier, Chain, ChainEndomorphism, add, compose, leq
from .derivations import SelfMap, SemilatticeReport, orbit_trace
from .strings import StringType2, StringTypeM

SCHEMA = 1


class BadFormat(ValueError):
    pass


def element_label(string: StringType2 | StringTypeM, e: ChainEndomorphism) -> str:
    if e not in string:
        return str(e)
    return string.label(string.index_of(e))


def element_index(string: StringType2 | StringTypeM, e: ChainEndomorphism):
    """JSON-friendly index: ``k`` or ``[k, l]``."""
    idx = string.index_of(e)
    return idx if isinstance(string, StringType2) else [idx.k, idx.l]


def anchors_of(string: StringType2 | StringTypeM) -> list[int]:
    if isinstance(string, StringType2):
        return [string.a, string.b]
    return list(string.anchors)


@dataclass(frozen=True)
class Grid:
    """A labelled two-dimensional table of strings."""

    corner: str
    col_labels: tuple[str, ...]
    row_labels: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]


def grid_ascii(grid: Grid) -> str:
    rows = [(grid.corner, *grid.col_labels)]
    rows += [(label, *row) for label, row in zip(grid.row_labels, grid.cells)]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for pos, row in enumerate(rows):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
        if pos == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def grid_csv(grid: Grid) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow([grid.corner, *grid.col_labels])
    for label, row in zip(grid.row_labels, grid.cells):
        writer.writerow([label, *row])
    return out.getvalue()


def _dump(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def covering_edges(elements: Sequence[ChainEndomorphism]) -> list[tuple[int, int]]:
    """Hasse diagram of the pointwise order on ``elements``."""
    below = {
        (i, j)
        for i, x in enumerate(elements)
        for j, y in enumerate(elements)
        if i != j and leq(x, y)
    }
    edges = []
    for i, j in sorted(below):
        if not any((i, k) in below and (k, j) in below for k in range(len(elements))):
            edges.append((i, j))
    return edges


# -- operation tables -------------------------------------------------------


def operation_grid(string, op: str) -> Grid:
    fn = {"add": add, "mul": compose}[op]
    labels = tuple(element_label(string, e) for e in string.elements)
    cells = tuple(
        tuple(element_label(string, fn(x, y)) for y in string.elements)
        for x in string.elements
    )
    return Grid("+" if op == "add" else "*", labels, labels, cells)


def table_json(string, op: str) -> str:
    grid = operation_grid(string, op)
    fn = {"add": add, "mul": compose}[op]
    elements = [
        {"label": label, "index": element_index(string, e), "images": list(e.images)}
        for label, e in zip(grid.row_labels, string.elements)
    ]
    payload = {
        "kind": "table",
        "n": string.n,
        "anchors": anchors_of(string),
        "op": op,
        "elements": elements,
        "labels": grid.cells,
        "images": [[list(fn(x, y).images) for y in string.elements] for x in string.elements],
    }
    return _dump(payload)


def table_from_json(text: str) -> tuple[Carrier, dict]:
    """Rebuild the carrier and its operation table from :func:`table_json` output."""
    data = json.loads(text)
    if data.get("schema") != SCHEMA or data.get("kind") != "table":
        raise BadFormat("not a table document")
    chain = Chain(data["n"])
    elements = [ChainEndomorphism(chain, tuple(e["images"])) for e in data["elements"]]
    products = {}
    for x, row in zip(elements, data["images"]):
        for y, cell in zip(elements, row):
            products[x, y] = ChainEndomorphism(chain, tuple(cell))
    return Carrier(chain, tuple(elements)), products


def carrier_dot(string, name: str = "carrier") -> str:
    elements = string.elements.elements
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in elements:
        label = element_label(string, e)
        lines.append(f"  {_dot_id(label)} [label={_dot_id(label + chr(92) + 'n' + str(e))}];")
    for i, j in covering_edges(elements):
        a, b = element_label(string, elements[i]), element_label(string, elements[j])
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_table(string, op: str, fmt: str) -> str:
    if fmt == "ascii":
        return grid_ascii(operation_grid(string, op))
    if fmt == "csv":
        return grid_csv(operation_grid(string, op))
    if fmt == "json":
        return table_json(string, op)
    if fmt == "dot":
        return carrier_dot(string)
    raise BadFormat(fmt)


# -- derivation sets --------------------------------------------------------


def delta_labels(report: SemilatticeReport, string: StringType2) -> list[str]:
    # Each class is named after its smallest parameter index.
    return [f"delta(a_{min(members)})" for members in report.classes]


def composition_grid(report: SemilatticeReport, labels: list[str]) -> Grid:
    cells = tuple(
        tuple("-" if c is None else labels[c] for c in row) for row in report.table
    )
    return Grid("then", tuple(labels), tuple(labels), cells)


def action_grid(report: SemilatticeReport, string: StringType2, labels: list[str]) -> Grid:
    cols = tuple(element_label(string, e) for e in string.elements)
    cells = tuple(
        tuple(element_label(string, m(x)) for x in string.elements)
        for m in report.representatives
    )
    return Grid("map", cols, tuple(labels), cells)


def semilattice_edges(report: SemilatticeReport) -> list[tuple[int, int]]:
    """Covering pairs of ``x <= y`` iff composing ``x`` then ``y`` gives ``y``."""
    size = report.distinct_maps
    rel = {(i, j) for i in range(size) for j in range(size) if i != j and report.table[i][j] == j}
    return sorted(
        (i, j) for i, j in rel
        if not any((i, k) in rel and (k, j) in rel for k in range(size) if k not in (i, j))
    )


def derivations_json(report: SemilatticeReport, string: StringType2) -> str:
    labels = delta_labels(report, string)
    maps = []
    for label, members, m in zip(labels, report.classes, report.representatives):
        maps.append({
            "label": label,
            "parameters": list(members),
            "action": [string.index_of(m(x)) for x in string.elements],
        })
    payload = {
        "kind": "derivations",
        "n": string.n,
        "anchors": anchors_of(string),
        "maps": maps,
        "table": [list(row) for row in report.table],
        "closed": report.closed,
        "commutative": report.commutative,
        "idempotent": report.idempotent,
        "identity": _param(report, report.identity),
        "absorbing": _param(report, report.absorbing),
    }
    return _dump(payload)


def _param(report: SemilatticeReport, pos: int | None) -> int | None:
    return None if pos is None else min(report.classes[pos])


def derivations_ascii(report: SemilatticeReport, string: StringType2) -> str:
    labels = delta_labels(report, string)
    out = [f"STR{{{string.a},{string.b}}} over C_{string.n}: {report.distinct_maps} distinct maps"]
    for label, members in zip(labels, report.classes):
        out.append(f"  {label} = " + " = ".join(f"delta(a_{k})" for k in members))
    out.append("")
    out.append("action:")
    out.append(grid_ascii(action_grid(report, string, labels)))
    out.append("composition (row first, then column):")
    out.append(grid_ascii(composition_grid(report, labels)))
    flags = ", ".join(f"{name}={'yes' if value else 'no'}" for name, value in (
        ("closed", report.closed), ("commutative", report.commutative),
        ("idempotent", report.idempotent)))
    out.append(flags)
    for name, pos in (("identity", report.identity), ("absorbing", report.absorbing)):
        out.append(f"{name}: {'none' if pos is None else labels[pos]}")
    return "\n".join(out) + "\n"


def derivations_dot(report: SemilatticeReport, string: StringType2) -> str:
    labels = delta_labels(report, string)
    lines = ["digraph derivations {", "  rankdir=BT;"]
    lines += [f"  {_dot_id(label)};" for label in labels]
    for i, j in semilattice_edges(report):
        lines.append(f"  {_dot_id(labels[i])} -> {_dot_id(labels[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_derivations(report: SemilatticeReport, string: StringType2, fmt: str) -> str:
    if fmt == "ascii":
        return derivations_ascii(report, string)
    if fmt == "csv":
        return grid_csv(composition_grid(report, delta_labels(report, string)))
    if fmt == "json":
        return derivations_json(report, string)
    if fmt == "dot":
        return derivations_dot(report, string)
    raise BadFormat(fmt)


# -- closures ---------------------------------------------------------------


def closure_traces(R: Carrier, I: Carrier, d: SelfMap) -> list[tuple[list, bool]]:
    return [orbit_trace(x, d, I) for x in R]


def render_closure(string, R: Carrier, I: Carrier, d: SelfMap, closure: Carrier, fmt: str) -> str:
    lab = lambda e: element_label(string, e)  # noqa: E731
    traces = closure_traces(R, I, d)
    if fmt == "json":
        payload = {
            "kind": "closure",
            "n": string.n,
            "anchors": anchors_of(string),
            "derivation": d.label,
            "domain": [element_index(string, e) for e in R],
            "ideal": [element_index(string, e) for e in I],
            "closure": [element_index(string, e) for e in closure],
            "labels": [lab(e) for e in closure],
            "traces": [
                {"element": lab(x), "iterates": [lab(y) for y in trace], "entered": entered}
                for x, (trace, entered) in zip(R, traces)
            ],
        }
        return _dump(payload)
    if fmt == "ascii":
        out = [
            f"closure of {{{', '.join(map(lab, I))}}} under {d.label}:",
            "  {" + ", ".join(map(lab, closure)) + "}",
            "",
            "iterates:",
        ]
        for x, (trace, entered) in zip(R, traces):
            tail = "in" if entered else "cycle"
            out.append(f"  {lab(x)}: " + " -> ".join(map(lab, trace)) + f"  [{tail}]")
        return "\n".join(out) + "\n"
    if fmt == "dot":
        lines = ["digraph closure {"]
        for x in R:
            style = "doublecircle" if x in I else ("box" if x in closure else "ellipse")
            lines.append(f"  {_dot_id(lab(x))} [shape={style}];")
        for x in R:
            lines.append(f"  {_dot_id(lab(x))} -> {_dot_id(lab(d(x)))};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise BadFormat(fmt)


# -- verification reports ---------------------------------------------------


def render_results(results, fmt: str) -> str:
    if fmt == "json":
        from .verifier import suite_passed

        return _dump({
            "kind": "verify",
            "passed": suite_passed(results),
            "results": [r.to_record() for r in results],
        })
    if fmt == "ascii":
        # Timings are left out so repeated runs print identical text.
        lines = []
        for r in results:
            line = f"{r.claim:<5} n={r.params['n']:<3} {r.status}"
            if r.witness is not None and r.status == "fail":
                line += "  " + json.dumps(r.witness, sort_keys=True)
            lines.append(line)
        counts = {}
        for r in results:
            counts[r.status] = counts.get(r.status, 0) + 1
        lines.append(", ".join(f"{k}: {counts[k]}" for k in sorted(counts)) or "no results")
        return "\n".join(lines) + "\n"
    raise BadFormat(fmt)
