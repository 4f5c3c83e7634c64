"""Command-line interface.

Commands: validate, cv, stats, train, predict.  Exit codes follow one
discipline everywhere: 0 success, 1 domain findings (bad labels,
duplicates, failed lookups), 2 usage or I/O errors.  Reports embed the
run configuration and a SHA-256 of the dataset, and all outputs are
byte-identical for identical inputs, seed, and flags.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, classifiers
from ._json import canonical_json
from .classifiers.params import KINDS, InvalidParamsError, algorithm_spec
from .classifiers.serialize import ModelFormatError
from .corpus import DatasetError, load_labeled, validate
from .evaluation import (
    cross_validate,
    rbp,
    read_score_matrix,
    report_to_dict,
    report_to_markdown,
    score_matrix_from_reports,
    score_matrix_to_markdown,
    write_score_matrix,
)
from .nvd import CveNotFoundError, NvdClient, NvdError
from .pipeline import load_text_model, save_text_model, train_text_model
from .stats import conover, friedman, stats_to_dict, stats_to_markdown

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2


def _positive_k(value: str) -> int:
    k = int(value)
    if k < 2:
        raise argparse.ArgumentTypeError(f"k must be >= 2, got {k}")
    return k


def _positive_workers(value: str) -> int:
    w = int(value)
    if w < 1:
        raise argparse.ArgumentTypeError(f"workers must be >= 1, got {w}")
    return w


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vulnchar",
        description="Characterize CVE descriptions and reproduce the evaluation pipeline",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a JSONL dataset")
    p_validate.add_argument("--dataset", required=True)
    p_validate.add_argument("--out", default=None, help="output directory (default: stdout only)")
    p_validate.add_argument("--format", choices=("json", "markdown", "both"), default="json")
    p_validate.add_argument("--min-count", type=int, default=2)

    p_cv = sub.add_parser("cv", help="stratified k-fold cross-validation")
    p_cv.add_argument("--dataset", required=True)
    p_cv.add_argument("--algo", required=True, choices=KINDS + ("all",))
    p_cv.add_argument("--k", type=_positive_k, default=10)
    p_cv.add_argument("--seed", type=int, default=123)
    p_cv.add_argument("--out", default=".")
    p_cv.add_argument("--format", choices=("json", "markdown", "both"), default="json")
    p_cv.add_argument("--workers", type=_positive_workers, default=1)

    p_stats = sub.add_parser("stats", help="Friedman and Conover tests on a score matrix CSV")
    p_stats.add_argument("scores", help="CSV with a 'class' column plus one column per classifier")
    p_stats.add_argument("--out", default=None)
    p_stats.add_argument("--format", choices=("json", "markdown", "both"), default="json")

    p_train = sub.add_parser("train", help="train on a full dataset and save the model")
    p_train.add_argument("--dataset", required=True)
    p_train.add_argument("--algo", required=True, choices=KINDS)
    p_train.add_argument("--seed", type=int, default=123)
    p_train.add_argument("--model", default=None, help="output path (default: model_<algo>.json)")
    p_train.add_argument("--workers", type=_positive_workers, default=1)

    p_predict = sub.add_parser("predict", help="classify a description or a CVE id")
    p_predict.add_argument("--model", required=True)
    group = p_predict.add_mutually_exclusive_group(required=True)
    group.add_argument("text", nargs="?", help="description text")
    group.add_argument("--cve", help="CVE id to fetch (cached NVD lookup)")
    return parser


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, "utf-8")
    print(f"wrote {path}")


def _emit(out_dir: str | None, stem: str, fmt: str, payload: dict, markdown: str) -> None:
    if out_dir is None:
        sys.stdout.write(canonical_json(payload) if fmt != "markdown" else markdown)
        return
    base = Path(out_dir)
    if fmt in ("json", "both"):
        _write(base / f"{stem}.json", canonical_json(payload))
    if fmt in ("markdown", "both"):
        _write(base / f"{stem}.md", markdown)


def cmd_validate(args) -> int:
    run = {
        "command": "validate",
        "dataset": args.dataset,
        "dataset_sha256": _sha256(args.dataset),
        "min_count": args.min_count,
    }
    try:
        corpus = load_labeled(args.dataset)
    except DatasetError as e:
        payload = {"run": run, "ok": False, "errors": [str(e)], "warnings": [], "class_counts": {}}
        _emit(args.out, "validation_report", args.format, payload, f"# Validation\n\nerror: {e}\n")
        return EXIT_FINDINGS
    report = validate(corpus, min_count=args.min_count)
    payload = {
        "run": run,
        "ok": report.ok,
        "errors": report.errors,
        "warnings": report.warnings,
        "class_counts": {c.name: n for c, n in report.class_counts.items()},
    }
    lines = ["# Validation", ""]
    lines += [f"- ERROR: {e}" for e in report.errors]
    lines += [f"- warning: {w}" for w in report.warnings]
    lines += ["", "| class | count |", "| --- | --- |"]
    lines += [
        f"| {c.name} | {n} |"
        for c, n in sorted(report.class_counts.items(), key=lambda item: item[0].index)
    ]
    _emit(args.out, "validation_report", args.format, payload, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FINDINGS


def cmd_cv(args) -> int:
    corpus = load_labeled(args.dataset)
    report_findings = validate(corpus)
    if not report_findings.ok or report_findings.below_minimum:
        for line in report_findings.errors + report_findings.warnings:
            print(f"dataset error: {line}", file=sys.stderr)
        return EXIT_FINDINGS

    # workers is an execution detail, not configuration: reports must be
    # byte-identical no matter how many threads produced them
    run = {
        "command": "cv",
        "dataset": args.dataset,
        "dataset_sha256": _sha256(args.dataset),
        "algo": args.algo,
        "k": args.k,
        "seed": args.seed,
        "format": args.format,
    }
    kinds = list(KINDS) if args.algo == "all" else [args.algo]
    reports = {}
    for kind in kinds:
        spec = algorithm_spec(kind, seed=args.seed)
        report = cross_validate(spec, corpus, k=args.k, seed=args.seed, workers=args.workers)
        reports[kind] = report
        payload = {"run": {**run, "algo": kind}, **report_to_dict(report)}
        _emit(args.out, f"cv_{kind}", args.format, payload, report_to_markdown(report, f"{kind} ({args.k}-fold)"))

    if args.algo == "all":
        matrix = score_matrix_from_reports(reports, corpus.classes())
        csv_path = Path(args.out) / "score_matrix.csv"
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        write_score_matrix(matrix, csv_path)
        print(f"wrote {csv_path}")
        result = rbp(matrix)
        payload = {
            "run": run,
            "wins": result.wins,
            "ratios": result.ratios,
            "num_classes": result.num_classes,
        }
        _emit(args.out, "rbp", args.format, payload, score_matrix_to_markdown(matrix, result))
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        matrix = read_score_matrix(args.scores)
        friedman_result = friedman(matrix)
        pairwise = conover(matrix)
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    run = {
        "command": "stats",
        "scores": args.scores,
        "scores_sha256": _sha256(args.scores),
    }
    payload = {"run": run, **stats_to_dict(friedman_result, pairwise)}
    _emit(args.out, "significance", args.format, payload, stats_to_markdown(friedman_result, pairwise))
    return EXIT_OK


def cmd_train(args) -> int:
    corpus = load_labeled(args.dataset)
    spec = algorithm_spec(args.algo, seed=args.seed)
    text_model = train_text_model(spec, corpus, workers=args.workers)
    path = Path(args.model) if args.model else Path(f"model_{args.algo}.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    save_text_model(text_model, path)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_predict(args) -> int:
    text_model = load_text_model(args.model)
    if args.cve:
        record = NvdClient().fetch(args.cve)
        text = record.description
        source = record.cve_id
    else:
        text = args.text
        source = None
    prediction = text_model.predict_text(text)
    payload = {
        "label": prediction.label.name,
        "category": prediction.label.category.value,
        "scores": prediction.scores,
        "tokens": prediction.tokens,
    }
    if source is not None:
        payload["cve_id"] = source
    sys.stdout.write(canonical_json(payload))
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "cv": cmd_cv,
    "stats": cmd_stats,
    "train": cmd_train,
    "predict": cmd_predict,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FileNotFoundError, PermissionError, IsADirectoryError) as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ModelFormatError as e:
        print(f"model format error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, classifiers.SingleClassError, CveNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FINDINGS
    except (InvalidParamsError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NvdError as e:
        print(f"nvd error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
