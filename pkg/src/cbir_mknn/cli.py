"""Command-line interface for the retrieval engine.

Subcommands: ``index``, ``query``, ``classify``, ``label-unlabeled``,
``evaluate``, ``compare``.  Human-readable tables go to standard output
(suppressed by ``--quiet``); the ``evaluate`` and ``compare`` subcommands
can additionally write one JSON object per line to a ``--records`` file.
Exit status is 0 on success, 1 on a runtime error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CbirError, InputError
from .evalharness import (
    compare_classifiers,
    default_benchmark_spec,
    evaluate_retrieval,
    load_spec_file,
)
from .features import ExtractionParams, extract_features
from .mknn import ClassifierConfig, TrainSample, classify_knn, classify_mknn, validate_samples
from .retrieval import label_unlabeled, query_by_example
from .store import build_index, load_index, save_index


def _write_records(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")


def cmd_index(args) -> int:
    params = ExtractionParams(bins_per_channel=args.bins)
    index, skipped = build_index(args.images, label_map=args.labels, params=params)
    save_index(index, args.out)
    for skip in skipped:
        print(f"skipped {skip.path}: {skip.reason}", file=sys.stderr)
    if not args.quiet:
        print(
            f"indexed {len(index)} images ({len(index.labeled())} labeled, "
            f"{len(index.unlabeled())} unlabeled, {len(skipped)} skipped)"
        )
    return 0


def cmd_query(args) -> int:
    index = load_index(args.index)
    results = query_by_example(index, args.image, top_n=args.top)
    if not args.quiet:
        width = max(len(r.id) for r in results)
        width = max(width, len("id"))
        print(f"rank  {'id':<{width}}  distance  label")
        for rank, result in enumerate(results, start=1):
            label = result.label if result.label is not None else "-"
            print(f"{rank:>4}  {result.id:<{width}}  {result.distance:.6f}  {label}")
    return 0


def cmd_classify(args) -> int:
    index = load_index(args.index)
    config = ClassifierConfig(k=args.k, h=args.h)
    vector = extract_features(args.image, index.params)
    labeled = index.labeled()
    if not labeled:
        raise InputError("index has no labeled entries to classify against")
    samples = [TrainSample(e.id, e.vector, e.label) for e in labeled]
    if args.method == "mknn":
        # Validities are recomputed from the requested --h rather than
        # trusting any stored ones, so output depends only on the flags.
        result = classify_mknn(
            validate_samples(samples, config.validity_neighbors), vector, config
        )
    else:
        result = classify_knn(samples, vector, config.k)
    if not args.quiet:
        print(f"predicted: {result.predicted_label}")
        print(f"confidence: {result.confidence:.6f}")
        print("class totals:")
        width = max(len(label) for label in result.per_class_totals)
        for label, total in result.per_class_totals.items():
            print(f"  {label:<{width}}  {total:.6f}")
    return 0


def cmd_label_unlabeled(args) -> int:
    index = load_index(args.index)
    config = ClassifierConfig(k=args.k, h=args.h)
    assignments, new_index = label_unlabeled(index, config)
    save_index(new_index, args.out)
    if not args.quiet:
        print(f"assigned {len(assignments)} labels")
        if assignments:
            width = max(max(len(a.id) for a in assignments), len("id"))
            lwidth = max(max(len(a.assigned_label) for a in assignments), len("label"))
            print(f"{'id':<{width}}  {'label':<{lwidth}}  confidence")
            for a in assignments:
                print(f"{a.id:<{width}}  {a.assigned_label:<{lwidth}}  {a.confidence:.6f}")
    return 0


def cmd_evaluate(args) -> int:
    index = load_index(args.index)
    report = evaluate_retrieval(index, top_n=args.top)
    if args.records:
        _write_records(
            args.records,
            (
                {
                    "query_id": q.query_id,
                    "recall": q.recall,
                    "precision": q.precision,
                    "fallout": q.fallout,
                }
                for q in report.per_query
            ),
        )
    if not args.quiet:
        print(f"queries: {report.queries} ({report.skipped} skipped)")
        for name in ("recall", "precision", "fallout"):
            value = getattr(report.macro, name)
            print(f"{name}: " + ("undefined" if value is None else f"{value:.6f}"))
    return 0


def cmd_compare(args) -> int:
    spec = load_spec_file(args.spec) if args.spec else default_benchmark_spec()
    config = ClassifierConfig(k=args.k, h=args.h)
    report = compare_classifiers(spec, config, n_seeds=args.seeds)
    if args.records:
        _write_records(
            args.records,
            (
                {
                    "seed": r.seed,
                    "knn_accuracy": r.knn_accuracy,
                    "mknn_accuracy": r.mknn_accuracy,
                }
                for r in report.per_seed
            ),
        )
    if not args.quiet:
        print(f"seeds: {report.seeds}  k: {report.k}  h: {report.h}")
        print(f"knn mean accuracy: {report.knn_accuracy:.6f}")
        print(f"mknn mean accuracy: {report.mknn_accuracy:.6f}")
        print(f"mknn wins or ties: {report.mknn_win_or_tie_fraction:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--quiet", action="store_true", help="suppress tables on standard output"
    )

    parser = argparse.ArgumentParser(
        prog="cbir-mknn",
        description=(
            "Index images by color histogram, search by example, and classify "
            "with validity-weighted nearest neighbors."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser(
        "index", parents=[common], help="build an index from a directory of images"
    )
    p.add_argument("--images", required=True, metavar="DIR", help="image directory")
    p.add_argument(
        "--labels", metavar="FILE", help="tab-separated id/label map (optional)"
    )
    p.add_argument(
        "--bins", type=int, default=16, metavar="N", help="histogram bins per channel (default 16)"
    )
    p.add_argument("--out", required=True, metavar="FILE", help="index file to write")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser(
        "query", parents=[common], help="rank indexed images by distance to a query image"
    )
    p.add_argument("--index", required=True, metavar="FILE", help="index file")
    p.add_argument("--image", required=True, metavar="FILE", help="query image")
    p.add_argument(
        "--top", type=int, default=10, metavar="N", help="results to return (default 10)"
    )
    p.set_defaults(func=cmd_query)

    p = sub.add_parser(
        "classify", parents=[common], help="predict a label for an image"
    )
    p.add_argument("--index", required=True, metavar="FILE", help="index file")
    p.add_argument("--image", required=True, metavar="FILE", help="image to classify")
    p.add_argument("--k", type=int, default=5, metavar="K", help="voting neighbors (default 5)")
    p.add_argument(
        "--h", type=int, default=None, metavar="H", help="validity neighbors (default: K)"
    )
    p.add_argument(
        "--method",
        choices=("mknn", "knn"),
        default="mknn",
        help="validity-weighted vote or plain majority vote (default mknn)",
    )
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "label-unlabeled",
        parents=[common],
        help="label every unlabeled index entry from the labeled ones",
    )
    p.add_argument("--index", required=True, metavar="FILE", help="index file")
    p.add_argument("--k", type=int, default=5, metavar="K", help="voting neighbors (default 5)")
    p.add_argument(
        "--h", type=int, default=None, metavar="H", help="validity neighbors (default: K)"
    )
    p.add_argument("--out", required=True, metavar="FILE", help="index file to write")
    p.set_defaults(func=cmd_label_unlabeled)

    p = sub.add_parser(
        "evaluate",
        parents=[common],
        help="leave-one-out recall/precision/fallout over a labeled index",
    )
    p.add_argument("--index", required=True, metavar="FILE", help="index file")
    p.add_argument(
        "--top", type=int, default=10, metavar="N", help="retrieved set size (default 10)"
    )
    p.add_argument(
        "--records", metavar="FILE", help="write one JSON record per query to FILE"
    )
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser(
        "compare",
        parents=[common],
        help="compare weighted and plain voting on synthetic clusters",
    )
    p.add_argument(
        "--spec",
        metavar="FILE",
        help="JSON cluster spec (default: built-in two-cluster benchmark)",
    )
    p.add_argument("--k", type=int, default=5, metavar="K", help="voting neighbors (default 5)")
    p.add_argument(
        "--h", type=int, default=None, metavar="H", help="validity neighbors (default: K)"
    )
    p.add_argument(
        "--seeds", type=int, default=1, metavar="S", help="number of seeds (default 1)"
    )
    p.add_argument(
        "--records", metavar="FILE", help="write one JSON record per seed to FILE"
    )
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CbirError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
