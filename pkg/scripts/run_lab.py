"""Command-line front end of the toric lab.

Usage:
    # Exact volume of a polytope file
    python scripts/run_lab.py volume square.json

    # Mixed volume / mixed area measure of a tuple of polytopes
    python scripts/run_lab.py mixed-volume bodies.json --oracle
    python scripts/run_lab.py area-measure bodies.json

    # Toric dictionary
    python scripts/run_lab.py toric width fan.json --ray 0
    python scripts/run_lab.py toric restricted-volume fan.json --ray 0 --t 1/2

    # Seeded verification batches
    python scripts/run_lab.py verify minkowski --dim 2 --seeds 0..99
    python scripts/run_lab.py reproduce count-su --n 2 --eps 1/2 --t 1/2
    python scripts/run_lab.py manifest configs/acceptance.yaml

Reports go to stdout, the summary and logs to stderr. Exit status is 0 when
every check holds, 1 on a failed check, 2 on malformed input and 3 on
infeasible geometry.
"""

import sys
from pathlib import Path

import click

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import GeometryError, InputFormatError, LabError  # noqa: E402


class LabGroup(click.Group):
    """Click group that turns lab errors into the documented exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except InputFormatError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(2)
        except GeometryError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(3)
        except LabError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(1)


def _emit(obj):
    from src.utils.serialization import dumps

    click.echo(dumps(obj))


def _emit_reports(ctx, reports, fmt=None):
    """Write reports to stdout, the summary to stderr; exit 1 if any failed."""
    from src.lab.batch import summarize
    from src.utils.console import print_summary
    from src.utils.serialization import format_reports

    fmt = fmt or ctx.obj["config"].output.format
    click.echo(format_reports(reports, fmt), nl=fmt != "csv")
    if not ctx.obj["quiet"]:
        print_summary(summarize(reports))
    if not all(r.holds for r in reports):
        ctx.exit(1)


def _ray_option(f):
    return click.option("--ray", "ray_index", required=True, type=int, help="Index of the ray in the toric data")(f)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Report format (default from config)"
)


@click.group(cls=LabGroup)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True), help="YAML merged over the defaults")
@click.option("--verbose", is_flag=True, help="Debug logging")
@click.option("--quiet", is_flag=True, help="No progress bar or summary table")
@click.pass_context
def cli(ctx, config_path, verbose, quiet):
    """Toric lab - exact convex geometry and inequality verification."""
    from src.utils.config import load_config
    from src.utils.console import setup_logging

    setup_logging(verbose, quiet)
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_path)
    ctx.obj["quiet"] = quiet


# ── Geometry ────────────────────────────────────────────────────────────────


@cli.command()
@click.argument("polytope_file", type=click.Path())
def volume(polytope_file):
    """Exact Euclidean volume of a polytope."""
    from src.geometry.polytope import volume as polytope_volume
    from src.utils.loaders import load_json, polytope_from_dict

    P = polytope_from_dict(load_json(polytope_file))
    _emit({"volume": polytope_volume(P)})


@cli.command("mixed-volume")
@click.argument("bodies_file", type=click.Path())
@click.option("--oracle", is_flag=True, help="Also evaluate the polynomial-fit oracle")
def mixed_volume_cmd(bodies_file, oracle):
    """Mixed volume V(P_1, ..., P_n) of n polytopes."""
    from src.geometry.mixed_volume import mixed_volume, mixed_volume_oracle
    from src.utils.loaders import load_json, polytopes_from_json

    bodies = polytopes_from_json(load_json(bodies_file))
    result = {"mixed_volume": mixed_volume(bodies)}
    if oracle:
        result["oracle"] = mixed_volume_oracle(bodies)
    _emit(result)


@cli.command("area-measure")
@click.argument("bodies_file", type=click.Path())
@click.option("--dim", default=None, type=int, help="Ambient dimension (needed when the tuple is empty)")
def area_measure(bodies_file, dim):
    """Mixed area measure S(P_1, ..., P_{n-1}) as atoms on primitive normals."""
    from src.geometry.area_measure import mixed_area_measure
    from src.utils.loaders import load_json, polytopes_from_json

    bodies = polytopes_from_json(load_json(bodies_file))
    _emit(mixed_area_measure(bodies, dim=dim))


@cli.command("minkowski-check")
@click.option("--bodies", "bodies_file", required=True, type=click.Path(), help="n-1 polytopes P_i")
@click.option("--q", "q_file", required=True, type=click.Path(), help="Inner body Q")
@click.option("--qprime", "qprime_file", required=True, type=click.Path(), help="Outer body Q'")
@format_option
@click.pass_context
def minkowski_check(ctx, bodies_file, q_file, qprime_file, fmt):
    """Minkowski volume formula for Q inside Q'."""
    from src.geometry.area_measure import minkowski_formula_check
    from src.utils.loaders import load_json, polytope_from_dict, polytopes_from_json

    bodies = polytopes_from_json(load_json(bodies_file))
    Q = polytope_from_dict(load_json(q_file))
    Qprime = polytope_from_dict(load_json(qprime_file))
    _emit_reports(ctx, [minkowski_formula_check(bodies, Q, Qprime)], fmt)


# ── Toric dictionary ────────────────────────────────────────────────────────


@cli.group()
def toric():
    """Newton polytopes, Lelong numbers, widths and restricted volumes."""


def _load_body(data, body_file):
    from src.toric.dictionary import NewtonBody, class_body
    from src.utils.loaders import load_json, newton_body_from_dict, polytope_from_dict

    if body_file is None:
        return class_body(data)
    obj = load_json(body_file)
    if isinstance(obj, dict) and "body" in obj:
        return newton_body_from_dict(obj, ambient=data)
    return NewtonBody(data, polytope_from_dict(obj))


@toric.command("newton-polytope")
@click.argument("toric_file", type=click.Path())
def newton_polytope_cmd(toric_file):
    """P_H of the toric data."""
    from src.toric.dictionary import newton_polytope
    from src.utils.loaders import load_json, toric_from_dict

    _emit(newton_polytope(toric_from_dict(load_json(toric_file))))


@toric.command()
@click.argument("toric_file", type=click.Path())
@_ray_option
@click.option("--body", "body_file", default=None, type=click.Path(), help="Newton body (default: P_H)")
def lelong(toric_file, ray_index, body_file):
    """Lelong number of a Newton body along a ray."""
    from src.toric.dictionary import current_volume, lelong_number
    from src.utils.loaders import load_json, toric_from_dict

    body = _load_body(toric_from_dict(load_json(toric_file)), body_file)
    _emit({"lelong": lelong_number(body, ray_index), "volume": current_volume(body)})


@toric.command()
@click.argument("toric_file", type=click.Path())
@_ray_option
def width(toric_file, ray_index):
    """nu, nu_max and width of the class along a ray."""
    from src.toric.dictionary import nu_max_and_width
    from src.utils.loaders import load_json, toric_from_dict

    nu_max, wid = nu_max_and_width(toric_from_dict(load_json(toric_file)), ray_index)
    _emit({"nu": nu_max - wid, "nu_max": nu_max, "width": wid})


@toric.command("restricted-volume")
@click.argument("toric_file", type=click.Path())
@_ray_option
@click.option("--t", "t", required=True, help="Height, as 'p/q'")
@click.option("--body", "body_file", default=None, type=click.Path(), help="Newton body (default: P_H)")
def restricted_volume_cmd(toric_file, ray_index, t, body_file):
    """Restricted volume of T - tD."""
    from src.geometry.rational import to_rat
    from src.toric.dictionary import restricted_volume
    from src.utils.loaders import load_json, toric_from_dict

    body = _load_body(toric_from_dict(load_json(toric_file)), body_file)
    _emit({"restricted_volume": restricted_volume(body, ray_index, to_rat(t, name="t"))})


# ── Verification ────────────────────────────────────────────────────────────


@cli.command()
@click.argument("statement")
@click.option("--dim", default=2, type=int, help="Ambient dimension")
@click.option("--seeds", default=None, help="Seed range 'a..b' (default from config)")
@format_option
@click.pass_context
def verify(ctx, statement, dim, seeds, fmt):
    """Run a seeded batch of STATEMENT and report every instance."""
    from src.lab.batch import parse_seed_range, run_batch

    config = ctx.obj["config"]
    seed_range = parse_seed_range(seeds or config.batch.default_seeds)
    reports = run_batch(statement, dim, seed_range, config, progress=not ctx.obj["quiet"])
    _emit_reports(ctx, reports, fmt)


@cli.command()
@click.argument("manifest_file", type=click.Path())
@format_option
@click.pass_context
def manifest(ctx, manifest_file, fmt):
    """Run every batch listed in a YAML manifest."""
    from src.lab.batch import run_manifest

    reports = run_manifest(manifest_file, ctx.obj["config"], progress=not ctx.obj["quiet"])
    _emit_reports(ctx, reports, fmt)


@cli.group()
def reproduce():
    """Reproduce worked examples exactly."""


@reproduce.command("count-su")
@click.option("--n", "n", default=2, type=int, help="Dimension, 2..5")
@click.option("--eps", default="1/2", help="Slope parameter, as 'p/q'")
@click.option("--t", "t_values", multiple=True, help="Cut heights in (0, 1); repeatable (default 1/10..9/10)")
@format_option
@click.pass_context
def count_su(ctx, n, eps, t_values, fmt):
    """Volume lost by cutting the thin simplex at x1 >= t, against t^n eps^(n-1) / n!."""
    from fractions import Fraction

    from src.lab.checks import reproduce_count_su

    t_grid = list(t_values) or [Fraction(k, 10) for k in range(1, 10)]
    _emit_reports(ctx, reproduce_count_su(n, eps, t_grid), fmt)


@cli.group()
def oracle():
    """Independent oracles."""


@oracle.command("mc-volume")
@click.argument("polytope_file", type=click.Path())
@click.option("--samples", default=None, type=int, help="Sample count (default from config)")
@click.option("--seed", default=0, type=int, help="Random seed")
@format_option
@click.pass_context
def mc_volume(ctx, polytope_file, samples, seed, fmt):
    """Exact volume against a rejection-sampling estimate."""
    from src.lab.checks import check_mc_volume
    from src.utils.loaders import load_json, polytope_from_dict

    config = ctx.obj["config"]
    P = polytope_from_dict(load_json(polytope_file))
    report = check_mc_volume(
        P,
        samples or config.oracle.mc_samples,
        seed,
        sigmas=config.oracle.mc_sigmas,
        chunk=config.oracle.mc_chunk,
    )
    _emit_reports(ctx, [report], fmt)


def run(argv=None):
    """Run the CLI on `argv` and return the exit status."""
    try:
        result = cli.main(args=argv, prog_name="toriclab", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
