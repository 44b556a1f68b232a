"""Command-line front end.

One subcommand per library operation, plus instance generation, oracle
verification, and the doubling benchmark.  Exit codes: 0 success, 1 input or
validation error, 2 verification mismatch.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import bench as bench_mod
from .core import (
    PATTERNS,
    GeneralPositionError,
    PointSet,
    RectihullError,
    SignPattern,
    format_points,
    format_points_json,
    load_points,
    perturb,
    validate_general_position,
)
from .generators import FAMILIES, GeneratorSpec, cylinder_window, generate
from .hull import (
    components,
    euler_characteristic,
    export_off,
    layers,
    rch3,
    rch3_events,
    slabs_to_json,
    slice_at,
)
from .maxima import maxima3d, rch_vertices
from .oracle import brute_active_intervals, brute_maxima
from .rotate import active_intervals


class VerificationError(RectihullError):
    """Fast path disagrees with the oracle (exit code 2)."""


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RECTIHULL_THREADS", "1")))
    except ValueError:
        return 1


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") or not text else text + "\n")
    else:
        click.echo(text.rstrip("\n"))


def _load(path: str, perturb_eps: float | None) -> PointSet:
    pset = load_points(path)
    report = validate_general_position(pset)
    if report.ok:
        return pset
    if perturb_eps is None:
        raise GeneralPositionError(
            f"{len(report.violations)} coordinate collisions in {path!r}; "
            "re-run with --perturb EPS"
        )
    return perturb(pset, 0, perturb_eps)


_fmt_opt = click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "csv", "off"]),
    default="text", show_default=True,
)
_out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None)
_perturb_opt = click.option(
    "--perturb", "perturb_eps", type=float, default=None,
    help="Perturbation magnitude applied when the input violates general position.",
)


@click.group()
def cli():
    """Rectilinear convex hulls of 3D point sets."""


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _parse_params(pairs) -> tuple:
    out = []
    for pair in pairs:
        name, _, value = pair.partition("=")
        if not _:
            raise click.BadParameter(f"expected NAME=VALUE, got {pair!r}")
        try:
            num = int(value)
        except ValueError:
            num = float(value)
        out.append((name, num))
    return tuple(sorted(out))


@cli.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
              help="Family parameter, repeatable (e.g. --param radius=2.0).")
@click.option("--report-window", is_flag=True,
              help="cylinder-geodesic: print the rotation window [alpha, beta].")
@_fmt_opt
@_out_opt
def gen(family, n, seed, params, report_window, fmt, out):
    """Generate a deterministic point-set instance."""
    spec = GeneratorSpec(family, n, seed, _parse_params(params))
    pset = generate(spec)
    if family == "cylinder-geodesic" and n > 1:
        verts = rch_vertices(pset)
        missing = sorted(set(range(n)) - verts)
        if missing:
            raise VerificationError(
                f"geodesic points {missing} are not hull vertices; "
                "adjust the anchor parameters"
            )
    text = format_points_json(pset) if fmt == "json" else format_points(pset)
    _emit(text, out)
    if report_window:
        if family != "cylinder-geodesic":
            raise click.BadParameter("--report-window requires cylinder-geodesic")
        win = cylinder_window(pset, n)
        click.echo(f"window [{win.lo:.12g}, {win.hi:.12g}]", err=out is None)


# ---------------------------------------------------------------------------
# point-set computations
# ---------------------------------------------------------------------------


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--pattern", "pattern_k", type=click.IntRange(1, 8), default=None,
              help="Single dominance pattern; default reports all eight.")
@_perturb_opt
@_fmt_opt
@_out_opt
def maxima(input, pattern_k, perturb_eps, fmt, out):
    """Maximal point ids under the eight dominance patterns."""
    pset = _load(input, perturb_eps)
    ks = [pattern_k] if pattern_k else list(range(1, 9))
    result = {
        k: sorted(maxima3d(pset, SignPattern.from_index(k), validated=True).ids)
        for k in ks
    }
    if fmt == "json":
        _emit(json.dumps({str(k): v for k, v in result.items()}), out)
    elif fmt == "csv":
        rows = ["pattern,id"] + [f"{k},{i}" for k, ids in result.items() for i in ids]
        _emit("\n".join(rows), out)
    else:
        _emit("\n".join(
            f"pattern {k}: {' '.join(map(str, ids))}" for k, ids in result.items()
        ), out)


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@_perturb_opt
@_fmt_opt
@_out_opt
def vertices(input, perturb_eps, fmt, out):
    """Ids of the rectilinear hull vertices (maximal under some pattern)."""
    pset = _load(input, perturb_eps)
    ids = sorted(rch_vertices(pset, validated=True))
    if fmt == "json":
        _emit(json.dumps(ids), out)
    else:
        _emit(" ".join(map(str, ids)), out)


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--events-only", is_flag=True,
              help="Emit per-pattern sweep event streams instead of the mesh.")
@click.option("--triangulate", is_flag=True, help="Triangulate OFF faces.")
@_perturb_opt
@_fmt_opt
@_out_opt
def hull(input, events_only, triangulate, perturb_eps, fmt, out):
    """The 3D rectilinear convex hull as a slab mesh."""
    pset = _load(input, perturb_eps)
    if events_only:
        events = rch3_events(pset, validated=True)
        _emit(json.dumps({str(k): v for k, v in events.items()}), out)
        return
    mesh = rch3(pset, validated=True)
    if fmt == "off":
        _emit(export_off(mesh, triangulate=triangulate), out)
    elif fmt == "json":
        _emit(json.dumps({
            "vertices": sorted(mesh.vertex_ids),
            "slabs": slabs_to_json(mesh),
        }), out)
    else:
        lines = [
            f"points: {len(pset)}",
            f"hull vertices: {len(mesh.vertex_ids)}",
            f"slabs: {len(mesh.slabs)}",
            f"components: {components(mesh)}",
        ]
        try:
            lines.append(f"euler characteristic: {euler_characteristic(mesh)}")
        except RectihullError:
            lines.append("euler characteristic: undefined (no solid volume)")
        _emit("\n".join(lines), out)


@cli.command("slice")
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--z", "z", type=float, required=True)
@_perturb_opt
@_fmt_opt
@_out_opt
def slice_cmd(input, z, perturb_eps, fmt, out):
    """Horizontal cross-section of the hull at height z."""
    pset = _load(input, perturb_eps)
    region = slice_at(pset, z)
    if fmt == "json":
        _emit(json.dumps(region.to_json()), out)
    else:
        if region.is_empty:
            _emit("empty", out)
            return
        lines = []
        for i, r in enumerate(region):
            x0, y0, x1, y1 = r.bbox
            lines.append(f"region {i}: {r.kind}, bbox [{x0:g},{x1:g}]x[{y0:g},{y1:g}]")
        _emit("\n".join(lines), out)


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@_perturb_opt
@_fmt_opt
@_out_opt
def intervals(input, perturb_eps, fmt, out):
    """Per-point activity intervals over the quarter-turn rotation period."""
    pset = _load(input, perturb_eps)
    tab = active_intervals(pset, validated=True)
    if fmt == "json":
        _emit(json.dumps(tab.to_json()), out)
    else:
        lines = []
        for rec in tab.to_json():
            parts = ", ".join(
                f"[{iv['lo']:.9g}, {iv['hi']:.9g}{', wraps' if iv['wraps'] else ''}]"
                for iv in rec["intervals"]
            )
            lines.append(f"id {rec['id']}: {parts if parts else '(never active)'}")
        _emit("\n".join(lines), out)


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--theta", type=float, required=True)
@_perturb_opt
@_fmt_opt
@_out_opt
def active(input, theta, perturb_eps, fmt, out):
    """Ids of the points active at rotation angle theta."""
    pset = _load(input, perturb_eps)
    tab = active_intervals(pset, validated=True)
    ids = sorted(tab.active_at(theta))
    _emit(json.dumps(ids) if fmt == "json" else " ".join(map(str, ids)), out)


@cli.command("layers")
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@_perturb_opt
@_fmt_opt
@_out_opt
def layers_cmd(input, perturb_eps, fmt, out):
    """Rectilinear convex layers (iterated hull-vertex peeling)."""
    pset = _load(input, perturb_eps)
    result = [sorted(layer) for layer in layers(pset, validated=True)]
    if fmt == "json":
        _emit(json.dumps(result), out)
    else:
        _emit("\n".join(
            f"layer {i + 1}: {' '.join(map(str, ids))}"
            for i, ids in enumerate(result)
        ), out)


@cli.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("--triangulate", is_flag=True)
@_perturb_opt
@_out_opt
def export(input, triangulate, perturb_eps, out):
    """Export the hull mesh in OFF format."""
    pset = _load(input, perturb_eps)
    mesh = rch3(pset, validated=True)
    _emit(export_off(mesh, triangulate=triangulate), out)


# ---------------------------------------------------------------------------
# verify / bench
# ---------------------------------------------------------------------------


def _verify_one(what: str, n: int, seed: int) -> int:
    pset = generate(GeneratorSpec("uniform-box", n, seed))
    bad = 0
    if what == "maxima":
        for k, pattern in enumerate(PATTERNS, start=1):
            fast = maxima3d(pset, pattern, validated=True).ids
            if fast != brute_maxima(pset, pattern):
                bad += 1
    elif what == "vertices":
        brute = frozenset().union(*(brute_maxima(pset, p) for p in PATTERNS))
        bad += rch_vertices(pset, validated=True) != brute
    elif what == "intervals":
        fast = active_intervals(pset, validated=True)
        brute = brute_active_intervals(pset, cap=max(n, 1))
        for i in range(n):
            a, b = fast.merged[i].intervals, brute.merged[i].intervals
            if len(a) != len(b) or any(
                abs(x.lo - y.lo) > 1e-7 or abs(x.hi - y.hi) > 1e-7
                for x, y in zip(a, b)
            ):
                bad += 1
    else:
        raise click.BadParameter(f"unknown verification subject {what!r}")
    return bad


@cli.command()
@click.option("--what", type=click.Choice(["maxima", "vertices", "intervals"]),
              required=True)
@click.option("--n", type=int, default=200, show_default=True)
@click.option("--seeds", type=int, default=20, show_default=True)
def verify(what, n, seeds):
    """Compare the fast path against the brute-force oracle."""
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        counts = list(pool.map(lambda s: _verify_one(what, n, s), range(seeds)))
    mismatches = sum(counts)
    click.echo(f"verify {what}: n={n} seeds={seeds} mismatches={mismatches}")
    if mismatches:
        raise VerificationError(f"{mismatches} oracle mismatches for {what}")


@cli.command("bench")
@click.option("--subject", type=click.Choice(bench_mod.SUBJECTS), default="maxima",
              show_default=True)
@click.option("--sizes", default="1024,4096,16384", show_default=True,
              help="Comma-separated ascending instance sizes.")
@click.option("--seeds", type=int, default=3, show_default=True)
@click.option("--compare-backends", is_flag=True,
              help="Time the raw kernels under every importable backend instead.")
@_out_opt
def bench_cmd(subject, sizes, seeds, compare_backends, out):
    """Doubling benchmark; emits a CSV report."""
    if compare_backends:
        rows = bench_mod.compare_backends(seeds=seeds)
    else:
        try:
            size_list = [int(s) for s in sizes.split(",") if s.strip()]
        except ValueError as exc:
            raise click.BadParameter(str(exc))
        rows = bench_mod.run_bench(subject, size_list, seeds=seeds)
    _emit(bench_mod.rows_to_csv(rows), out)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="rectihull", standalone_mode=False)
    except VerificationError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (RectihullError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
