"""Command line: votes -> ideal points -> coalitions -> regions -> figures."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .coalitions import (
    ModelKind,
    classify_case,
    edp_allowed,
    edp_allowed_1d,
    enumerate_allowed,
    tioli_allowed_1d,
)
from .embedding import (
    IdealPointConfig,
    OrientationSpec,
    classical_mds,
    load_config,
    orient,
    perturb_to_general_position,
    stress,
)
from .errors import SpatialVoteError
from .geometry import CoalitionMask, Grid, all_masks
from .regions import (
    refine_until_stable,
    region_polygon,
    soi_outcome_regions,
    tioli_outcome_region,
)
from .render import LineLayer, PlotSpec, render_svg, soi_figure, tioli_figure
from .vote_data import (
    agreement_matrix,
    dissimilarity,
    matrix_to_csv,
    matrix_to_json,
    parse_votes,
    slice_by_natural_court,
)

SCHEMA_VERSION = 1
PERTURB_EPS = 1e-6


def _csv_list(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _anchor(text: str) -> tuple[str, str]:
    items = _csv_list(text)
    if len(items) != 2:
        raise argparse.ArgumentTypeError("anchor must be two labels: LEFT,RIGHT")
    return items[0], items[1]


def _positive_grid(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("grid resolution must be >= 2")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatialvote",
        description="Spatial voting models and coalition geometry for roll-call data.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, points=True):
        if points:
            p.add_argument("--points", required=True, help="ideal points (JSON or CSV)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0, help="perturbation seed")

    p = sub.add_parser("ideal-points", help="MDS ideal points from a vote file")
    common(p, points=False)
    p.add_argument("--votes", required=True, help="justice-centered vote CSV")
    court = p.add_mutually_exclusive_group(required=True)
    court.add_argument("--court", help="natural court id")
    court.add_argument("--justices", type=_csv_list, help="explicit justice list")
    p.add_argument("--dim", type=int, choices=(1, 2), default=2)
    p.add_argument(
        "--anchor", type=_anchor, action="append", default=[],
        help="LEFT,RIGHT anchor; repeat for the second axis",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--matrix-out", help="also write the agreement matrix (.csv or .json)")

    p = sub.add_parser("enumerate", help="list allowed coalitions")
    common(p)
    p.add_argument("--model", choices=[m.value for m in ModelKind], required=True)
    p.add_argument("--k", type=int, help="coalition size (default: every size)")

    p = sub.add_parser("classify", help="classify one coalition under all models")
    common(p)
    p.add_argument("--coalition", type=_csv_list, required=True)

    p = sub.add_parser("regions", help="outcome-location regions for a coalition")
    common(p)
    p.add_argument("--coalition", type=_csv_list, required=True)
    p.add_argument("--model", choices=("soi", "tioli"), default="tioli")
    p.add_argument("--grid", type=_positive_grid, default=201)
    p.add_argument("--box-inflate", type=float, default=1.0)
    p.add_argument("--levels", type=_int_list, help="nested grid schedule for refinement")
    p.add_argument("--format", choices=("json", "svg"), default="json")

    p = sub.add_parser("plot", help="render an SVG figure")
    common(p)
    p.add_argument("--coalition", type=_csv_list, help="coalition to bold")
    p.add_argument("--model", choices=[m.value for m in ModelKind])
    p.add_argument("--grid", type=_positive_grid, default=201)
    p.add_argument("--box-inflate", type=float, default=1.0)
    p.add_argument("--format", choices=("svg",), default="svg")
    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2) + "\n"


def _planar(config: IdealPointConfig, seed: int) -> tuple[IdealPointConfig, bool]:
    fixed = perturb_to_general_position(config, PERTURB_EPS, seed)
    return fixed, fixed is not config


def _coalition(config, names) -> CoalitionMask:
    return CoalitionMask.from_labels(config.labels, names)


def _read_votes_text(path) -> str:
    # database exports are often cp1252 rather than UTF-8
    raw = Path(path).read_bytes()
    try:
        return raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        return raw.decode("cp1252", errors="replace")


def cmd_ideal_points(args) -> str:
    records = parse_votes(_read_votes_text(args.votes))
    court = slice_by_natural_court(records, args.court if args.court else args.justices)
    A = agreement_matrix(court)
    D = dissimilarity(A)
    if args.matrix_out:
        text = matrix_to_json(A) if args.matrix_out.endswith(".json") else matrix_to_csv(A)
        Path(args.matrix_out).write_text(text, encoding="utf-8")
    config = classical_mds(D, args.dim)
    if args.anchor:
        config = orient(config, OrientationSpec(tuple(args.anchor)))
    fit = stress(D, config)
    if args.dim == 2:
        config, _ = _planar(config, args.seed)
    if args.format == "csv":
        return config.to_csv()
    return _dump(
        {
            **config.to_dict(),
            "court": court.court_id,
            "cases": len(court.cases),
            "stress": fit,
        }
    )


def cmd_enumerate(args) -> str:
    config = load_config(args.points)
    n = len(config)
    sizes = [args.k] if args.k is not None else list(range(1, n))
    for k in sizes:
        if not 1 <= k <= n - 1:
            raise ValueError(f"--k must be in [1, {n - 1}]")
    model = ModelKind(args.model)
    found = set()
    perturbed = False
    if config.dim == 1:
        xs = config.points[:, 0]
        test = tioli_allowed_1d if model is ModelKind.TIOLI else edp_allowed_1d
        for k in sizes:
            found.update(m for m in all_masks(n, k) if test(xs, m))
    else:
        if model is not ModelKind.TIOLI:
            config, perturbed = _planar(config, args.seed)
        for k in sizes:
            found.update(enumerate_allowed(config, model, k))
    coalitions = sorted(m.labels(config.labels) for m in found)
    return _dump(
        {
            "model": model.value,
            "k": args.k,
            "perturbed": perturbed,
            "count": len(coalitions),
            "coalitions": coalitions,
        }
    )


def cmd_classify(args) -> str:
    config = load_config(args.points)
    mask = _coalition(config, args.coalition)
    if config.dim == 1:
        xs = config.points[:, 0]
        edp = edp_allowed_1d(xs, mask)
        report = {
            "coalition": mask.labels(config.labels),
            "complement": mask.complement().labels(config.labels),
            "edp": {"allowed": edp},
            "soi": {"allowed": edp},
            "tioli": {"allowed": tioli_allowed_1d(xs, mask)},
        }
    else:
        report = classify_case(config, mask).to_dict(config.labels)
    return _dump(report)


def cmd_regions(args) -> str:
    config = load_config(args.points)
    if config.dim != 2:
        raise ValueError("regions need a two-dimensional configuration")
    mask = _coalition(config, args.coalition)
    grid = Grid.around(config, args.grid, args.box_inflate)
    if args.model == "soi":
        samples = list(soi_outcome_regions(config, mask, grid))
    else:
        samples = [tioli_outcome_region(config, mask, grid)]
    if args.format == "svg":
        if args.model == "soi":
            spec = soi_figure(config, mask, *samples)
        else:
            spec = tioli_figure(config, mask, samples[0])
        return render_svg(spec)
    polygons = [
        region_polygon(config, s.mask, grid.box).to_dict(config.labels)
        for s in samples
        if s.mask.is_proper()
    ]
    result = {
        "model": args.model,
        "grid": grid.to_dict(),
        "polygons": polygons,
        "samples": [s.to_dict(config.labels) for s in samples],
    }
    if args.levels:
        sets, stable = refine_until_stable(config, args.model, args.levels, args.box_inflate)
        result["refinement"] = {
            "levels": args.levels,
            "allowed": [sorted(m.labels(config.labels) for m in s) for s in sets],
            "stable": stable,
        }
    return _dump(result)


def cmd_plot(args) -> str:
    config = load_config(args.points)
    mask = _coalition(config, args.coalition) if args.coalition else None
    if args.model and mask is None:
        raise ValueError("--model needs --coalition")
    if not args.model or config.dim == 1:
        return render_svg(PlotSpec(config, mask))
    model = ModelKind(args.model)
    grid = Grid.around(config, args.grid, args.box_inflate)
    if model is ModelKind.EDP:
        _, line = edp_allowed(config, mask)
        layers = [LineLayer(line)] if line is not None else []
        return render_svg(PlotSpec(config, mask, layers))
    if model is ModelKind.SOI:
        return render_svg(soi_figure(config, mask, *soi_outcome_regions(config, mask, grid)))
    return render_svg(tioli_figure(config, mask, tioli_outcome_region(config, mask, grid)))


COMMANDS = {
    "ideal-points": cmd_ideal_points,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "regions": cmd_regions,
    "plot": cmd_plot,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
        _emit(text, args.out)
    except SpatialVoteError as exc:
        print(f"spatialvote {args.command}: {exc.operation} failed: {exc}", file=sys.stderr)
        return 1
    except (KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"spatialvote {args.command}: {msg}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
