"""Command-line front end.

Usage::

    nobeltree validate --nodes nodes.csv --edges edges.csv
    nobeltree closeness --nodes ... --edges ... --direction all --top 20
    nobeltree trends frac_no_ancestry --nodes ... --edges ... --out results/

Exit status: 0 on success, 1 on data errors, 2 on argument errors.
The output directory defaults to ``$GENEALOGY_OUT`` or ``./out``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import export, stats
from .closeness import HolderParams, closeness_report, kinship_neighborhood
from .errors import GenealogyError
from .graph import FIELDS, Field, GenealogyGraph, nearest_common_ancestor, weak_components
from .ingest import DatasetManifest, Diagnostic, load_dataset


@dataclass(frozen=True)
class RunConfig:
    manifest: DatasetManifest
    h: float = -1.0
    subset: str = "laureates"
    field: Field | None = None
    max_n: int | None = None
    prior_only: bool = False
    out_dir: Path = Path("out")
    threads: int | None = None
    top: int = 10

    def params(self, g: GenealogyGraph) -> HolderParams:
        if self.subset == "all":
            members = frozenset(g.ids)
        elif self.subset == "field":
            members = frozenset(x for x in g.laureates if self.field in g.scholars[x].fields)
        else:
            members = None
        return HolderParams(h=self.h, subset=members)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonzero_float(text: str) -> float:
    value = float(text)
    if value == 0:
        raise argparse.ArgumentTypeError("h must be non-zero")
    return value


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = p.add_argument_group("dataset and run options")
    d.add_argument("--manifest", type=Path, help="JSON manifest naming the nodes and edges files")
    d.add_argument("--nodes", type=Path, help="nodes file (CSV or .json)")
    d.add_argument("--edges", type=Path, help="edges file (CSV or .json)")
    d.add_argument("--h", type=_nonzero_float, default=-1.0, help="Hölder exponent (default -1)")
    d.add_argument("--subset", choices=("laureates", "field", "all"), default="laureates",
                   help="reference set for closeness")
    d.add_argument("--field", choices=[f.value for f in FIELDS], help="field for --subset field")
    d.add_argument("--max-n", type=_positive_int, help="deepest generation for sideways measures")
    d.add_argument("--prior-only", action="store_true", help="count only relatives awarded earlier")
    d.add_argument("--top", type=_positive_int, default=10, help="rows shown on stdout")
    d.add_argument("--out", type=Path, default=None, help="output directory")
    d.add_argument("--threads", type=_positive_int, default=None, help="parallelism cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="nobeltree", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="parse, build and summarise a dataset")
    p = sub.add_parser("closeness", parents=[common], help="rank nodes by closeness to the subset")
    p.add_argument("--direction", choices=("out", "in", "cross", "total", "all"), default="all")
    sub.add_parser("tables", parents=[common], help="field cross tables and ancestry summary")
    p = sub.add_parser("trends", parents=[common], help="award-year cohort series")
    p.add_argument("metrics", nargs="+", metavar="METRIC", help=f"one of {', '.join(stats.METRICS)} or 'all'")
    sub.add_parser("pairs", parents=[common], help="laureate advisor/ancestor pair counts")
    p = sub.add_parser("nca", parents=[common], help="nearest common ancestor of some ids")
    p.add_argument("ids", nargs="+")
    p = sub.add_parser("neighborhood", parents=[common], help="academic siblings and cousins of a node")
    p.add_argument("id")
    p.add_argument("--lineage-only", action="store_true",
                   help="keep laureates and ancestors of laureates only")
    sub.add_parser("classify", parents=[common], help="tie class of every laureate")
    p = sub.add_parser("export", parents=[common], help="write DOT or GraphML")
    p.add_argument("format", choices=("dot", "graphml"))
    p.add_argument("--size-rule", choices=("total_closeness", "uniform"), default="total_closeness")
    p.add_argument("--scale", type=float, default=1.0)
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--component", metavar="ID", help="only the family tree containing ID")
    sel.add_argument("--lineage", metavar="ID", help="only ID and its descendants")
    return parser


def _config(args, parser) -> RunConfig:
    if args.manifest is not None:
        if args.nodes or args.edges:
            parser.error("--manifest cannot be combined with --nodes/--edges")
        manifest = DatasetManifest.from_json(args.manifest)
    elif args.nodes and args.edges:
        manifest = DatasetManifest(args.nodes, args.edges)
    else:
        parser.error("give --nodes and --edges, or --manifest")
    if args.subset == "field" and not args.field:
        parser.error("--subset field requires --field")
    out = args.out if args.out is not None else Path(os.environ.get("GENEALOGY_OUT", "out"))
    return RunConfig(
        manifest=manifest,
        h=args.h,
        subset=args.subset,
        field=Field(args.field) if args.field else None,
        max_n=args.max_n,
        prior_only=args.prior_only,
        out_dir=out,
        threads=args.threads,
        top=args.top,
    )


def _table_text(table: stats.CrossTable) -> str:
    head = f"{'':<10}" + "".join(f"{h:>10}" for h in export.TABLE_HEADER[1:])
    rows = [head]
    for f in FIELDS:
        rows.append(f"{f.value:<10}" + "".join(f"{v:>10}" for v in table.row(f)))
    return "\n".join(rows)


def cmd_validate(cfg: RunConfig, g: GenealogyGraph, diags: list[Diagnostic], args) -> int:
    for d in diags:
        print(f"warning: {d}", file=sys.stderr)
    census = weak_components(g)
    print(f"{len(g)} nodes")
    print(f"{g.num_edges} edges")
    print(f"{len(g.laureates)} laureates")
    print(f"{len(census.components)} components")
    hist = ", ".join(f"{k}: {v}" for k, v in census.histogram.items())
    print(f"laureates per component -> count: {{{hist}}}")
    print(f"max depth {g.depth}")
    return 0


def cmd_closeness(cfg, g, diags, args) -> int:
    report = closeness_report(g, cfg.params(g), max_n=cfg.max_n, threads=cfg.threads)
    path = export.export_closeness_csv(report, cfg.out_dir / "closeness.csv")
    key = "total" if args.direction == "all" else args.direction
    print(f"rank  id  {key}_closeness")
    for r, rec in enumerate(report.ranked(key, cfg.top), start=1):
        value = getattr(rec, f"{key}_closeness")
        print(f"{r:>4}  {rec.id}  {export.fmt(value)}")
    print(f"wrote {path}")
    return 0


def cmd_tables(cfg, g, diags, args) -> int:
    prox = stats.cross_table(g, "proximate")
    dist = stats.cross_table(g, "distal")
    summary = stats.ancestry_summary(g)
    paths = export.export_tables_csv(cfg.out_dir, proximate=prox, distal=dist, summary=summary)
    print("laureates as advisors (proximate)")
    print(_table_text(prox))
    print()
    print("laureates as ancestors (distal)")
    print(_table_text(dist))
    print()
    anc = summary["any"]["ancestors"]
    print(f"mean laureate ancestors per laureate {export.fmt(anc.mean)} (se {export.fmt(anc.se)})")
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_trends(cfg, g, diags, args) -> int:
    names = stats.METRICS if "all" in args.metrics else [stats.canonical_metric(m) for m in args.metrics]
    for name in names:
        series = stats.cohort_series(g, name, cfg.prior_only)
        (csv_path,) = export.export_tables_csv(cfg.out_dir, series=[series])
        svg_path = csv_path.with_suffix(".svg")
        if series.points:
            export.export_svg_scatter(series, svg_path)
        print(f"{name}: {len(series.points)} award years, slope {export.fmt(series.trend_slope)} per year")
        print(f"wrote {csv_path}")
        if series.points:
            print(f"wrote {svg_path}")
    return 0


def cmd_pairs(cfg, g, diags, args) -> int:
    pc = stats.laureate_pair_counts(g)
    text = export.csv_text(pc._fields, [[str(v) for v in pc]])
    path = export.write_text(cfg.out_dir / "pairs.csv", text)
    print(f"advisor-student pairs: {pc.direct} ({pc.direct_same_field} same field)")
    print(f"ancestor-descendant pairs: {pc.transitive} ({pc.transitive_same_field} same field)")
    print(f"wrote {path}")
    return 0


def cmd_nca(cfg, g, diags, args) -> int:
    result = nearest_common_ancestor(g, args.ids)
    row = ["", "", ""] if result is None else [result[0], str(result[1]), str(result[2])]
    path = export.write_text(cfg.out_dir / "nca.csv", export.csv_text(("id", "max_distance", "sum_distance"), [row]))
    if result is None:
        print("no common ancestor")
    else:
        print(f"nearest common ancestor: {result[0]} (max distance {result[1]}, total {result[2]})")
    print(f"wrote {path}")
    return 0


def cmd_neighborhood(cfg, g, diags, args) -> int:
    max_n = cfg.max_n if cfg.max_n is not None else 2
    kin = kinship_neighborhood(g, args.id, max_n, lineage_only=args.lineage_only)
    rows = [[k.id, str(k.generation), export.fmt(k.overlap)] for k in kin]
    path = export.write_text(cfg.out_dir / f"neighborhood_{args.id}.csv",
                         export.csv_text(("id", "generation", "overlap"), rows))
    print(f"{len(kin)} relatives of {args.id} within {max_n} generations")
    for k in kin[: cfg.top]:
        print(f"  {k.id}  generation {k.generation}  overlap {export.fmt(k.overlap)}")
    print(f"wrote {path}")
    return 0


def cmd_classify(cfg, g, diags, args) -> int:
    classes = stats.tie_classification(g)
    path = export.write_text(cfg.out_dir / "classification.csv",
                         export.csv_text(("id", "class"), [[k, v.value] for k, v in classes.items()]))
    for c in stats.TieClass:
        print(f"{c.value}: {sum(v is c for v in classes.values())}")
    print(f"wrote {path}")
    return 0


def cmd_export(cfg, g, diags, args) -> int:
    include = None
    if args.component:
        include = export.component_of(g, args.component)
    elif args.lineage:
        include = export.lineage_of(g, args.lineage)
    spec = export.RenderSpec(size_rule=args.size_rule, scale_factor=args.scale, include=include)
    report = None
    if args.size_rule == "total_closeness" or args.format == "graphml":
        report = closeness_report(g, cfg.params(g), max_n=cfg.max_n, threads=cfg.threads)
    if args.format == "dot":
        path = export.export_dot(g, report, spec, cfg.out_dir / "genealogy.dot")
    else:
        path = export.export_graphml(g, report, spec, cfg.out_dir / "genealogy.graphml")
    print(f"wrote {path}")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "closeness": cmd_closeness,
    "tables": cmd_tables,
    "trends": cmd_trends,
    "pairs": cmd_pairs,
    "nca": cmd_nca,
    "neighborhood": cmd_neighborhood,
    "classify": cmd_classify,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "trends":
        try:
            [stats.canonical_metric(m) for m in args.metrics if m != "all"]
        except ValueError as exc:
            parser.error(str(exc))
    try:
        cfg = _config(args, parser)
        diags: list[Diagnostic] = []
        g = load_dataset(cfg.manifest, diags)
        return COMMANDS[args.command](cfg, g, diags, args)
    except GenealogyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
