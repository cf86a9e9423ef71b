"""Command-line entry points."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import materials
from .formgen import form_schema
from .ontology import Iri, load_builtin_ontology, set_prefix_expansion
from .records import fluence_quantity
from .store import DataManager, seed_demo
from .turtle_io import dataset_from_graph, parse_turtle, serialize_turtle, graph_from_dataset
from .validation import validate_dataset


@click.group()
@click.option(
    "--data-root",
    envvar="IRRADKIT_DATA_ROOT",
    default="./irradkit-data",
    show_default=True,
    help="Directory holding records, counters and the audit log.",
)
@click.option(
    "--base-iri",
    envvar="IRRADKIT_BASE_IRI",
    default=None,
    help="Override the base IRI of the iedm namespace.",
)
@click.pass_context
def main(ctx: click.Context, data_root: str, base_iri: str | None):
    """Irradiation-experiment data management toolkit."""
    if base_iri:
        set_prefix_expansion("iedm", base_iri)
    ctx.obj = {"data_root": data_root}


def _store(ctx: click.Context) -> DataManager:
    return DataManager(ctx.obj["data_root"])


@main.command()
@click.argument("turtle_file", type=click.Path(exists=True, path_type=Path))
@click.option("--draft", is_flag=True, help="Soften cardinality under-counts to warnings.")
def validate(turtle_file: Path, draft: bool):
    """Check a Turtle dataset against the built-in constraints."""
    graph = parse_turtle(turtle_file.read_text())
    ontology = load_builtin_ontology()
    ds, issues = dataset_from_graph(graph, ontology)
    for issue in issues:
        click.echo(f"IMPORT {issue}", err=True)
    report = validate_dataset(ds, ontology, draft=draft)
    click.echo(report.to_text())
    if report.violations:
        sys.exit(1)


@main.command()
@click.argument("experiment_id")
@click.option("-o", "--output", type=click.Path(path_type=Path), default=None)
@click.pass_context
def export(ctx: click.Context, experiment_id: str, output: Path | None):
    """Export an experiment as Turtle."""
    text, warnings = _store(ctx).export_experiment(experiment_id)
    for warning in warnings:
        click.echo(f"WARNING {warning}", err=True)
    if output:
        output.write_text(text)
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)


@main.command(name="import")
@click.argument("turtle_file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def import_cmd(ctx: click.Context, turtle_file: Path):
    """Validate a Turtle dataset and archive its normalized form."""
    store = _store(ctx)
    graph = parse_turtle(turtle_file.read_text())
    ds, issues = dataset_from_graph(graph, store.ontology)
    for issue in issues:
        click.echo(f"IMPORT {issue}", err=True)
    report = validate_dataset(ds, store.ontology, draft=True)
    click.echo(report.to_text())
    target = store.root / "imports" / (turtle_file.stem + ".ttl")
    target.write_text(serialize_turtle(graph_from_dataset(ds, store.ontology)))
    click.echo(f"archived normalized copy at {target}")
    if report.violations:
        sys.exit(1)


@main.command()
@click.argument("stack_file", type=click.Path(exists=True, path_type=Path))
def occupancy(stack_file: Path):
    """Occupancy percentages for a layer-stack file (material thickness_cm)."""
    stack = materials.parse_stack_file(stack_file.read_text())
    click.echo(materials.occupancy_report(stack))


@main.command()
@click.argument("class_iri")
def formgen(class_iri: str):
    """Print the form schema derived for a class."""
    schema = form_schema(Iri.parse(class_iri), load_builtin_ontology())
    click.echo(schema.to_json())


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_context
def serve(ctx: click.Context, port: int, host: str):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(_store(ctx)), host=host, port=port)


@main.command(name="seed-demo")
@click.pass_context
def seed_demo_cmd(ctx: click.Context):
    """Populate the data root with the demo experiment and samples."""
    experiment = seed_demo(_store(ctx))
    click.echo(f"seeded experiment {experiment.id} with 5 samples")


@main.group()
def sample():
    """Sample registry commands."""


@sample.command(name="list")
@click.option("--query", default="")
@click.option("--experiment", default=None)
@click.option("--page", default=1)
@click.option("--page-size", default=50)
@click.option("--user", default=None)
@click.pass_context
def sample_list(ctx, query, experiment, page, page_size, user):
    result = _store(ctx).list_samples(
        query=query, experiment_id=experiment, page=page, page_size=page_size, user=user
    )
    for record in result.items:
        occ = materials.format_occupancy(*record.occupancy)
        click.echo(
            f"{record.last_update}  {record.id}  {record.name}  "
            f"{record.requested_fluence.value:g}  {occ}  {record.last_updated_by}  "
            f"v{record.version}"
        )
    click.echo(f"total: {result.total}")


@sample.command(name="new")
@click.option("--name", required=True)
@click.option("--category-note", default="")
@click.option("--fluence", type=float, required=True, help="Requested fluence in 1/cm2.")
@click.option("--experiment", required=True)
@click.option("--user", required=True)
@click.option("--occupancy", default=None, help="Three comma-separated percentages.")
@click.pass_context
def sample_new(ctx, name, category_note, fluence, experiment, user, occupancy):
    occ = tuple(float(v) for v in occupancy.split(",")) if occupancy else None
    record = _store(ctx).create_sample(
        name=name,
        category_note=category_note,
        requested_fluence=fluence_quantity(fluence),
        experiment_id=experiment,
        user=user,
        occupancy=occ,
    )
    click.echo(f"created {record.id} (version {record.version})")


@sample.command(name="update")
@click.argument("sample_id")
@click.option("--version", type=int, required=True, help="Expected stored version.")
@click.option("--user", required=True)
@click.option("--name", default=None)
@click.option("--category-note", default=None)
@click.option("--fluence", type=float, default=None)
@click.option("--occupancy", default=None, help="Three comma-separated percentages.")
@click.pass_context
def sample_update(ctx, sample_id, version, user, name, category_note, fluence, occupancy):
    patch: dict = {}
    if name is not None:
        patch["name"] = name
    if category_note is not None:
        patch["categoryNote"] = category_note
    if fluence is not None:
        patch["requestedFluence"] = fluence
    if occupancy is not None:
        patch["occupancy"] = [float(v) for v in occupancy.split(",")]
    record = _store(ctx).update_sample(sample_id, patch, user, version)
    click.echo(f"updated {record.id} to version {record.version}")


if __name__ == "__main__":
    main()
