"""Tables on the stdout console and JSON on stdout; the same rows feed both."""

from __future__ import annotations

from typing import Sequence

import typer
from pydantic import BaseModel, TypeAdapter
from rich.table import Table

from src.cluster.dimvecs import ClusterDimVectorSet
from src.cluster.search import SearchMatch
from src.forms import RootSet, UnitForm
from src.logging_setup import console
from src.quiver import Quiver
from src.reports import ClassificationRow, ClusterRow, RootRow, TiltingRow, VerificationReport
from src.tilting import TiltingModule


def _vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"


def _emit_json(rows: Sequence[BaseModel] | BaseModel) -> None:
    if isinstance(rows, BaseModel):
        typer.echo(rows.model_dump_json(indent=2))
        return
    adapter = TypeAdapter(list[type(rows[0])]) if rows else TypeAdapter(list)
    typer.echo(adapter.dump_json(list(rows), indent=2).decode())


def root_rows(form: UnitForm, roots: RootSet) -> list[RootRow]:
    return [RootRow(root=list(x), q=form(x)) for x in roots]


def render_roots(q: Quiver, form: UnitForm, roots: RootSet, fmt: str) -> None:
    rows = root_rows(form, roots)
    if fmt == "json":
        _emit_json(rows)
        return
    table = Table(title=f"Positive roots of {q.display_name()} ({len(rows)})")
    table.add_column(" ".join(q.vertex_labels))
    table.add_column("q_A", justify="right")
    for r in rows:
        table.add_row(_vec(r.root), str(r.q))
    console.print(table)


def tilting_rows(tiltings: Sequence[TiltingModule]) -> list[TiltingRow]:
    return [
        TiltingRow(
            index=k,
            summands=t.labels,
            preprojective=t.preprojective,
            mixed=len(t.classification.mixed),
        )
        for k, t in enumerate(tiltings, start=1)
    ]


def render_tiltings(q: Quiver, tiltings: Sequence[TiltingModule], fmt: str) -> None:
    rows = tilting_rows(tiltings)
    if fmt == "json":
        _emit_json(rows)
        return
    table = Table(title=f"Tilting modules of {q.display_name()} ({len(rows)})")
    table.add_column("#", justify="right")
    table.add_column("summands")
    table.add_column("preprojective", justify="center")
    table.add_column("|M(T)|", justify="right")
    for r in rows:
        table.add_row(str(r.index), ", ".join(r.summands), "yes" if r.preprojective else "no", str(r.mixed))
    console.print(table)


def classification_rows(t: TiltingModule) -> list[ClassificationRow]:
    rows = []
    for row in t.classification.rows:
        entry = t.catalog[row.index]
        rows.append(
            ClassificationRow(
                label=entry.label,
                dim=list(entry.dim),
                tag=row.tag,
                hom=list(row.hom),
                ext=list(row.ext),
                supp_g=[t.labels[i] for i in row.supp_g],
                supp_f=[t.labels[i] for i in row.supp_f],
            )
        )
    return rows


def render_classification(t: TiltingModule, fmt: str) -> None:
    rows = classification_rows(t)
    if fmt == "json":
        _emit_json(rows)
        return
    table = Table(title=f"T = {' + '.join(t.labels)}")
    for col in ("F", "G", "M(T)"):
        table.add_column(col)
    columns = {tag: [r for r in rows if r.tag == tag] for tag in ("F", "G", "M")}
    height = max(len(c) for c in columns.values())
    for k in range(height):
        cells = []
        for tag in ("F", "G", "M"):
            if k < len(columns[tag]):
                r = columns[tag][k]
                extra = f" G:{','.join(r.supp_g)} F:{','.join(r.supp_f)}" if tag == "M" else ""
                cells.append(f"{r.label} {_vec(r.dim)}{extra}")
            else:
                cells.append("")
        table.add_row(*cells)
    console.print(table)
    console.print(f"|F| = {len(columns['F'])}, |G| = {len(columns['G'])}, |M(T)| = {len(columns['M'])}")

    summands = " ".join(t.labels)
    detail = Table(title="Hom and Ext from T")
    for col, justify in (
        ("module", "left"),
        ("dim", "left"),
        ("tag", "center"),
        (f"Hom(T_i, -) [{summands}]", "left"),
        (f"Ext(T_i, -) [{summands}]", "left"),
        ("supp G", "left"),
        ("supp F", "left"),
    ):
        detail.add_column(col, justify=justify)
    for r in rows:
        detail.add_row(
            r.label,
            _vec(r.dim),
            r.tag,
            _vec(r.hom),
            _vec(r.ext),
            ",".join(r.supp_g) or "-",
            ",".join(r.supp_f) or "-",
            style="bold" if r.tag == "M" else None,
        )
    console.print(detail)


def cluster_rows(dims: ClusterDimVectorSet) -> list[ClusterRow]:
    return [
        ClusterRow(label=r.label, x=list(r.x), g=list(r.g), abs_g=list(r.abs_g), tag=r.tag, q_b=r.q_b)
        for r in dims
    ]


def render_cluster(dims: ClusterDimVectorSet, fmt: str) -> None:
    rows = cluster_rows(dims)
    if fmt == "json":
        _emit_json(rows)
        return
    table = Table(title=f"Cluster dimension vectors, T = {' + '.join(dims.tilting.labels)}")
    for col, justify in (("module", "left"), ("x", "left"), ("g(x)", "left"), ("abs g(x)", "left"), ("tag", "center"), ("q_B", "right")):
        table.add_column(col, justify=justify)
    for r in rows:
        style = "bold" if r.tag == "M" else None
        table.add_row(r.label, _vec(r.x), _vec(r.g), _vec(r.abs_g), r.tag, str(r.q_b), style=style)
    console.print(table)


def render_matches(matches: Sequence[SearchMatch], fmt: str) -> None:
    if fmt == "json":
        typer.echo(
            TypeAdapter(list[dict]).dump_json(
                [
                    {
                        "pattern": m.name,
                        "quiver": m.quiver.display_name(),
                        "arrows": [[m.quiver.vertex_labels[s], m.quiver.vertex_labels[t]] for s, t in m.quiver.arrows],
                        "summands": m.tilting.labels,
                        "values": [{"vector": list(v), "q_b": val} for v, val in sorted(m.values.items())],
                    }
                    for m in matches
                ],
                indent=2,
            ).decode()
        )
        return
    for m in matches:
        q = m.quiver
        arrows = " ".join(f"{q.vertex_labels[s]}->{q.vertex_labels[t]}" for s, t in q.arrows)
        table = Table(title=f"{m.name}: {q.display_name()} [{arrows}], T = {' + '.join(m.tilting.labels)}")
        table.add_column("abs g(x)")
        table.add_column("q_B", justify="right")
        for v, val in sorted(m.values.items()):
            table.add_row(_vec(v), str(val), style="bold" if val == 3 else None)
        console.print(table)


def render_report(report: VerificationReport, fmt: str) -> None:
    if fmt == "json":
        _emit_json(report)
        return
    status = "[green]PASS[/green]" if report.passed else "[bold red]FAIL[/bold red]"
    console.print(f"{status} {report.property} on {report.subject} ({report.checked} checked)")
    for note in report.notes:
        console.print(f"  note: {note}")
    for ex in report.counterexamples[:20]:
        console.print(f"  [red]{ex.detail}[/red] {ex.data}")
    if len(report.counterexamples) > 20:
        console.print(f"  ... {len(report.counterexamples) - 20} more")
