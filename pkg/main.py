"""
qcw: quiver cluster workbench.

Usage:
  uv run qcw roots quivers/a5.quiver
  uv run qcw tilt quivers/t33.quiver "P1,P3,P3',I3,I3'"
  uv run qcw cluster quivers/t33.quiver "P1,P3,P3',I3,I3'"
  uv run qcw cluster quivers/a4.quiver --seed-search
  uv run qcw verify quivers/a5.quiver --property thm1 --all
  uv run qcw graph quivers/t33.quiver re "P1,P3,P3',I3,I3'"

Exit codes: 0 pass, 1 verification failure or internal error, 2 input error.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Annotated, Callable, Optional

import typer

from src.logging_setup import log
from src.settings import format_settings_for_log, settings

app = typer.Typer(
    name="qcw",
    help="Tilting modules, torsion pairs and cluster dimension vectors of quivers.",
    add_completion=False,
    no_args_is_help=True,
)


class OutputFormat(str, Enum):
    table = "table"
    json = "json"


class Property(str, Enum):
    separation = "separation"
    lemmas234 = "lemmas234"
    prop4 = "prop4"
    prop5 = "prop5"
    prop6 = "prop6"
    thm1 = "thm1"
    thm2b = "thm2b"
    thm2c_proxy = "thm2c-proxy"
    prop7 = "prop7"
    regular_witness = "regular-witness"


class GraphKind(str, Enum):
    ar = "ar"
    re = "re"


QuiverArg = Annotated[Path, typer.Argument(help="Quiver file (vertices:/arrows: format)")]
SpecArg = Annotated[Optional[str], typer.Argument(help="Comma-separated module labels, e.g. P1,P3,I3")]
DepthOpt = Annotated[Optional[int], typer.Option("--depth", help="Knitting depth for non-Dynkin quivers")]
RootCapOpt = Annotated[Optional[int], typer.Option("--root-cap", help="Coordinate cap for root enumeration")]
FormatOpt = Annotated[Optional[OutputFormat], typer.Option("--format", help="table or json")]


def _configure(depth: int | None = None, root_cap: int | None = None, fmt: OutputFormat | None = None) -> str:
    if depth is not None:
        settings.knit_depth = depth
    if root_cap is not None:
        settings.root_cap = root_cap
    if fmt is not None:
        settings.output_format = fmt.value
    log.set_level(settings.log_level)
    log.debug("Settings:\n" + format_settings_for_log(settings))
    return settings.output_format


def _run(body: Callable[[], int]) -> None:
    """Map the error classes onto exit codes."""
    try:
        code = body()
    except (ValueError, OSError) as e:
        log.error(str(e))
        raise typer.Exit(2) from None
    except RuntimeError as e:
        log.exception(f"Internal error: {e}")
        raise typer.Exit(1) from None
    raise typer.Exit(code)


def _load(path: Path):
    from src.quiver import load_quiver

    q = load_quiver(path)
    log.debug(f"Loaded {q.display_name()}: {q.n} vertices, {len(q.arrows)} arrows")
    return q


def _catalog(path: Path, depth: int | None):
    from src.catalog import Catalog

    return Catalog.build(_load(path), depth)


@app.command()
def roots(quiver: QuiverArg, root_cap: RootCapOpt = None, format: FormatOpt = None) -> None:
    """Positive roots of the Euler form, with their q_A values."""
    fmt = _configure(root_cap=root_cap, fmt=format)

    def body() -> int:
        from src.forms import UnitForm, enumerate_positive_roots
        from src.quiver import euler_matrix
        from src.render import render_roots

        q = _load(quiver)
        form = UnitForm(euler_matrix(q), labels=q.vertex_labels)
        render_roots(q, form, enumerate_positive_roots(form, root_cap), fmt)
        return 0

    _run(body)


@app.command()
def tilt(quiver: QuiverArg, spec: SpecArg = None, depth: DepthOpt = None, format: FormatOpt = None) -> None:
    """List tilting modules (Dynkin quivers), or classify the catalog against one."""
    fmt = _configure(depth=depth, fmt=format)

    def body() -> int:
        from src.render import render_classification, render_tiltings
        from src.tilting import enumerate_tilting, tilting_module

        catalog = _catalog(quiver, depth)
        if spec:
            render_classification(tilting_module(catalog, spec), fmt)
        else:
            tiltings = enumerate_tilting(catalog)
            log.info(f"{len(tiltings)} tilting modules")
            render_tiltings(catalog.quiver, tiltings, fmt)
        return 0

    _run(body)


@app.command()
def cluster(
    quiver: QuiverArg,
    spec: SpecArg = None,
    seed_search: Annotated[
        bool, typer.Option("--seed-search", help="Search all orientations for the value-3 patterns")
    ] = False,
    pattern: Annotated[
        Optional[list[str]],
        typer.Option("--pattern", help="Value-3 vector for --seed-search, e.g. 1,1,0,0 (repeatable)"),
    ] = None,
    depth: DepthOpt = None,
    format: FormatOpt = None,
) -> None:
    """Cluster dimension vectors abs g(x) with tags and q_B values."""
    fmt = _configure(depth=depth, fmt=format)

    def body() -> int:
        from src.cluster.dimvecs import cluster_dimvecs
        from src.cluster.search import parse_pattern, search_value_patterns
        from src.render import render_cluster, render_matches
        from src.tilting import tilting_module

        if seed_search:
            patterns = None
            if pattern:
                patterns = {"custom": frozenset(parse_pattern(p) for p in pattern)}
            matches = search_value_patterns(_load(quiver), patterns, depth)
            render_matches(matches, fmt)
            wanted = 1 if pattern else 2
            return 0 if len(matches) == wanted else 1
        if not spec:
            raise ValueError("A tilting module (comma-separated labels) or --seed-search is required")
        render_cluster(cluster_dimvecs(tilting_module(_catalog(quiver, depth), spec)), fmt)
        return 0

    _run(body)


@app.command()
def verify(
    quiver: QuiverArg,
    spec: SpecArg = None,
    prop: Annotated[Property, typer.Option("--property", "-p", help="Property to check")] = Property.thm1,
    all_: Annotated[bool, typer.Option("--all", help="Check every tilting module (Dynkin quivers)")] = False,
    bound: Annotated[Optional[int], typer.Option("--bound", help="Dimension bound for regular-witness")] = None,
    depth: DepthOpt = None,
    root_cap: RootCapOpt = None,
    format: FormatOpt = None,
) -> None:
    """Check a property; exit 0 on pass and 1 with counterexamples on failure."""
    fmt = _configure(depth=depth, root_cap=root_cap, fmt=format)

    def body() -> int:
        from src.cluster import checks, rform, witness
        from src.render import render_report
        from src.report_log import ReportLog, clear_report_dir, resolve_report_dir
        from src.tilting import enumerate_tilting, tilting_module

        verifiers = {
            Property.separation: checks.verify_separation,
            Property.lemmas234: checks.verify_lemmas_2_3_4,
            Property.prop4: rform.verify_prop4,
            Property.prop5: checks.verify_prop5,
            Property.prop6: checks.verify_prop6,
            Property.thm1: checks.verify_theorem1,
            Property.thm2b: checks.verify_theorem2b,
            Property.thm2c_proxy: checks.verify_theorem2c_proxy,
            Property.prop7: checks.verify_prop7,
            Property.regular_witness: lambda t: witness.verify_regular_witness(t, bound),
        }
        check = verifiers[prop]
        catalog = _catalog(quiver, depth)
        if spec:
            report = check(tilting_module(catalog, spec))
        elif all_ or prop is Property.thm1:
            report = checks.sweep(prop.value, catalog, enumerate_tilting(catalog), check)
        else:
            raise ValueError(f"--property {prop.value} needs a tilting module or --all")

        if settings.report_dir:
            report_dir = resolve_report_dir(settings.report_dir)
            if settings.report_clear_on_start:
                clear_report_dir(report_dir)
            ReportLog(report_dir).log(report, quiver=str(quiver))
        render_report(report, fmt)
        return 0 if report.passed else 1

    _run(body)


@app.command()
def graph(
    quiver: QuiverArg,
    kind: Annotated[GraphKind, typer.Argument(help="ar: preprojective component; re: bigraph of r_E")],
    spec: SpecArg = None,
    depth: DepthOpt = None,
) -> None:
    """DOT output of the AR component or of the r_E bigraph."""
    _configure(depth=depth)

    def body() -> int:
        from src.artheory import knit_preprojective
        from src.cluster.rform import build_rE
        from src.tilting import tilting_module

        if kind is GraphKind.ar:
            q = _load(quiver)
            typer.echo(knit_preprojective(q, depth).to_dot(name=q.display_name()), nl=False)
            return 0
        if not spec:
            raise ValueError("graph re needs a tilting module")
        re = build_rE(tilting_module(_catalog(quiver, depth), spec))
        typer.echo(re.bigraph.to_dot(elide_isolated=True, name="rE"), nl=False)
        return 0

    _run(body)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
