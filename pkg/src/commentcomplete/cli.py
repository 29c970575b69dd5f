"""Command-line entry point: one subcommand per pipeline stage, files as the only state."""

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import MINI_CORPUS, __version__, adapter, datasetgen, report
from .corpus import CorpusError, load_corpus, read_corpus, write_corpus
from .fileio import SchemaError, dumps, fingerprint, read_meta, sha256_file, write_json, write_meta
from .ngram import NgramError, NgramModel, predict_tasks, sweep_orders
from .preprocess import PreprocessConfig, run_pipeline
from .tokens import tokenize

logger = logging.getLogger("commentcomplete")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
ENV_PREFIX = "COMMENTCOMPLETE_"
NO_PREDICTION_MARKER = "<no-prediction>"


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, default: Any) -> Any:
    return os.environ.get(ENV_PREFIX + name, default)


def _orders(text: str) -> List[int]:
    try:
        values = sorted({int(x) for x in str(text).split(",") if x.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order list {text!r}")
    if not values or min(values) < 2:
        raise argparse.ArgumentTypeError("orders must be integers >= 2")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _order(text: str) -> int:
    value = _positive(text)
    if value < 2:
        raise argparse.ArgumentTypeError("order must be >= 2")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _artifact_meta(command: str, config: Dict[str, Any], inputs: Dict[str, str], **extra) -> Dict[str, Any]:
    meta = {
        "command": command,
        "config": config,
        "config_fingerprint": fingerprint(config),
        "inputs": inputs,
        "tool_version": __version__,
    }
    meta.update(extra)
    return meta


def _require_file(path: str, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{what} not found: {path}")
    return p


def _dataset_meta(dataset: str) -> Dict[str, Any]:
    try:
        return datasetgen.read_metadata(dataset)
    except FileNotFoundError as exc:
        raise InputError(str(exc))


def _load_tasks(dataset: str, split: str):
    try:
        return datasetgen.load_split(dataset, split)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    except FileNotFoundError as exc:
        raise InputError(str(exc))


def _emit(obj: Any, out: Optional[str], fmt: str, text: Optional[str] = None) -> None:
    body = text if fmt == "text" and text is not None else dumps(obj) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- commands ----------------------------------------------------------------

def cmd_ingest(args) -> int:
    source = MINI_CORPUS if args.source == "mini" else args.source
    instances, stats = load_corpus(source)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_corpus(instances, args.out)
    summary = {"instances": len(instances), "skipped": stats.skipped, "reasons": dict(sorted(stats.reasons.items()))}
    write_meta(args.out, _artifact_meta("ingest", {}, {}, corpus_fingerprint=sha256_file(args.out), **summary))
    print(f"ingested {len(instances)} instances ({stats.skipped} skipped) -> {args.out}")
    return EXIT_OK


def _preprocess_config(args) -> PreprocessConfig:
    cfg = PreprocessConfig(token_budget=args.token_budget, min_comment_words=args.min_words)
    for name in ("token_budget_filter", "ascii_filter", "length_filter", "satd_filter", "commented_code_filter",
                 "normalize", "orphan_filter", "merge_inline", "dedupe"):
        if name in args.disable:
            setattr(cfg, name, False)
    return cfg


def cmd_preprocess(args) -> int:
    src = _require_file(args.input, "corpus")
    try:
        corpus = read_corpus(src)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{src}: {exc}")
    cfg = _preprocess_config(args)
    kept, rep = run_pipeline(corpus, cfg)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_corpus(kept, args.out)
    config = {k: v for k, v in vars(cfg).items()}
    write_meta(args.out, _artifact_meta("preprocess", config, {"corpus": sha256_file(src)},
                                        corpus_fingerprint=sha256_file(args.out), report=rep.to_dict()))
    _emit(rep.to_dict(), None, args.format, _report_lines(rep.to_dict()))
    return EXIT_OK


def _report_lines(d: Dict[str, Any]) -> str:
    return "".join(f"{k:>24}: {v}\n" for k, v in d.items())


def cmd_build_dataset(args) -> int:
    src = _require_file(args.input, "corpus")
    corpus = read_corpus(src)
    ratios = _ratios(args)
    ds = datasetgen.build_dataset(corpus, args.seed, ratios["pretrain"], ratios["finetune"])
    config = {"seed": args.seed, "pretrain_ratio": str(ratios["pretrain"]),
              "finetune_ratios": [str(r) for r in ratios["finetune"]]}
    meta = datasetgen.write_dataset(ds, args.out, {
        "config": config,
        "config_fingerprint": fingerprint(config),
        "inputs": {"corpus": sha256_file(src)},
    })
    _emit({"fingerprint": meta["fingerprint"], "task_counts": meta["task_counts"], "origins": meta["origins"]},
          None, args.format,
          "".join(f"{name:>6}: {row}\n" for name, row in meta["task_counts"].items())
          + f"fingerprint: {meta['fingerprint']}\n")
    return EXIT_OK


def _ratios(args) -> Dict[str, Any]:
    try:
        pretrain = Fraction(args.pretrain_ratio)
        finetune = [Fraction(x) for x in args.finetune_ratios.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError("ratios must be fractions or decimals")
    if not 0 <= pretrain <= 1 or len(finetune) != 3 or sum(finetune) != 1 or min(finetune) < 0:
        raise UsageError("need 0 <= pretrain ratio <= 1 and three non-negative finetune ratios summing to 1")
    return {"pretrain": pretrain, "finetune": finetune}


def _train_sequences(dataset: str):
    return datasetgen.training_sequences(_load_tasks(dataset, datasetgen.TRAIN))


def cmd_train(args) -> int:
    dmeta = _dataset_meta(args.dataset)
    seqs = _train_sequences(args.dataset)
    if not seqs:
        raise InputError("training split is empty")
    model = NgramModel.train(seqs, args.order)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    model.save(args.out)
    config = {"order": args.order}
    write_meta(args.out, _artifact_meta("train", config, {"dataset": dmeta["fingerprint"]},
                                        seed=dmeta.get("seed"), dataset_fingerprint=dmeta["fingerprint"],
                                        model=model.header()))
    print(f"trained {args.order}-gram: {model.history_count} histories, {len(model.vocabulary)} types -> {args.out}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    dmeta = _dataset_meta(args.dataset)
    seqs = _train_sequences(args.dataset)
    if not seqs:
        raise InputError("training split is empty")
    eval_tasks = _load_tasks(args.dataset, args.split or datasetgen.EVAL)
    result = sweep_orders(seqs, eval_tasks, args.orders)
    out = {"rows": result.rows, "best_order": result.best_order, "seed": dmeta.get("seed"),
           "dataset_fingerprint": dmeta["fingerprint"], "config_fingerprint": fingerprint({"orders": args.orders})}
    lines = [f"{'order':>5} {'javadoc':>12} {'inner':>12} {'overall':>12}"]
    for row in result.rows:
        cells = [f"{row[p]['perfect']}/{row[p]['total']}" for p in ("javadoc", "inner", "overall")]
        lines.append(f"{row['order']:>5} {cells[0]:>12} {cells[1]:>12} {cells[2]:>12}")
    lines.append(f"best order: {result.best_order}")
    _emit(out, args.out, args.format, "\n".join(lines) + "\n")
    return EXIT_OK


def _load_model(path: str) -> NgramModel:
    return NgramModel.load(_require_file(path, "model"))


def cmd_predict(args) -> int:
    dmeta = _dataset_meta(args.dataset)
    split = args.split or datasetgen.TEST
    tasks = _load_tasks(args.dataset, split)
    model = _load_model(args.model)
    preds = predict_tasks(model, tasks, args.k, args.label or "")
    config = {"k": args.k, "split": datasetgen.SPLIT_FILES.get(split, split), "order": model.order}
    adapter.write_predictions(preds, args.out, _artifact_meta(
        "predict", config, {"model": sha256_file(args.model), "dataset": dmeta["fingerprint"]},
        seed=dmeta.get("seed"), dataset_fingerprint=dmeta["fingerprint"], model=preds[0].model if preds else "",
        count=len(preds)))
    made = sum(p.status == "ok" for p in preds)
    print(f"{made}/{len(preds)} predictions -> {args.out}")
    return EXIT_OK


def cmd_export_tasks(args) -> int:
    dmeta = _dataset_meta(args.dataset)
    split = args.split or datasetgen.TEST
    tasks = _load_tasks(args.dataset, split)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    adapter.export_tasks(tasks, args.out, _artifact_meta(
        "export-tasks", {"split": datasetgen.SPLIT_FILES.get(split, split)}, {"dataset": dmeta["fingerprint"]},
        seed=dmeta.get("seed"), dataset_fingerprint=dmeta["fingerprint"]))
    print(f"exported {len(tasks)} tasks -> {args.out}")
    return EXIT_OK


def cmd_import_predictions(args) -> int:
    dmeta = _dataset_meta(args.dataset)
    split = args.split or datasetgen.TEST
    tasks = _load_tasks(args.dataset, split)
    src = _require_file(args.input, "predictions")
    preds, stats = adapter.import_predictions(src, tasks, args.label or "")
    adapter.write_predictions(preds, args.out, _artifact_meta(
        "import-predictions", {"split": datasetgen.SPLIT_FILES.get(split, split)},
        {"predictions": sha256_file(src), "dataset": dmeta["fingerprint"]},
        seed=dmeta.get("seed"), dataset_fingerprint=dmeta["fingerprint"], model=preds[0].model if preds else "",
        count=len(preds), import_stats=stats.to_dict()))
    print(f"imported {stats.records - stats.skipped} records ({stats.skipped} skipped, "
          f"{stats.missing} tasks without prediction) -> {args.out}")
    return EXIT_OK


def _checked_predictions(path: str, dmeta: Dict[str, Any]):
    p = _require_file(path, "predictions")
    meta = read_meta(p)
    if meta is None:
        raise InputError(f"{path}: no metadata sidecar; run import-predictions first")
    if meta.get("dataset_fingerprint") != dmeta["fingerprint"]:
        raise InputError(f"{path}: dataset fingerprint {meta.get('dataset_fingerprint')!r} "
                         f"does not match dataset {dmeta['fingerprint']!r}")
    return adapter.read_predictions(p), meta


def _evaluate(args, paths: Sequence[str]) -> int:
    dmeta = _dataset_meta(args.dataset)
    split = args.split or datasetgen.TEST
    tasks = _load_tasks(args.dataset, split)
    loaded = {}
    for path in paths:
        preds, meta = _checked_predictions(path, dmeta)
        label = meta.get("model") or (preds[0].model if preds else "") or Path(path).stem
        if label in loaded:
            raise InputError(f"model label {label!r} appears twice; relabel one prediction file")
        loaded[label] = preds
    meta = {"split": datasetgen.SPLIT_FILES.get(split, split), "seed": dmeta.get("seed"),
            "dataset_fingerprint": dmeta["fingerprint"]}
    try:
        rep = report.build_report(tasks, loaded, meta)
    except report.ReportError as exc:
        raise InputError(str(exc))
    _emit(rep, args.out, args.format, report.render_text(rep))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    if len(args.predictions) > 2:
        raise UsageError("evaluate takes one or two prediction files")
    return _evaluate(args, args.predictions)


def cmd_compare(args) -> int:
    return _evaluate(args, [args.predictions_a, args.predictions_b])


def cmd_complete(args) -> int:
    model = _load_model(args.model)
    stream = sys.stdin
    interactive = args.interactive or stream.isatty()
    while True:
        if interactive:
            sys.stdout.write("comment> ")
            sys.stdout.flush()
        line = stream.readline()
        if not line:
            break
        prefix = tokenize(line.strip())
        if not prefix:
            continue
        tokens, probs = model.complete(prefix, args.k)
        pred = model.predict_sequence(prefix, len(tokens)) if tokens else None
        if pred is None or pred.status != "ok":
            print(NO_PREDICTION_MARKER)
        else:
            print(f"{' '.join(pred.tokens)}\t{pred.confidence:.4f}")
        sys.stdout.flush()
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = _env("FORMAT", "machine")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("machine", "text"), default=fmt,
                        help="machine (JSON) or text output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="commentcomplete", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def dataset_split(p, default_split=None):
        p.add_argument("--dataset", required=True, help="dataset directory from build-dataset")
        p.add_argument("--split", default=_env("SPLIT", default_split),
                       help="train, eval or test (default: test)")

    p = add("ingest", cmd_ingest, "extract methods and comments into a corpus file")
    p.add_argument("source", help="directory, .java file, JSONL records, or 'mini' for the bundled corpus")
    p.add_argument("--out", required=True)

    p = add("preprocess", cmd_preprocess, "filter and normalize a corpus")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--token-budget", type=_positive, default=int(_env("TOKEN_BUDGET", 256)))
    p.add_argument("--min-words", type=_positive, default=int(_env("MIN_WORDS", 3)))
    p.add_argument("--disable", action="append", default=[], metavar="FILTER",
                   choices=("token_budget_filter", "ascii_filter", "length_filter", "satd_filter",
                            "commented_code_filter", "normalize", "orphan_filter", "merge_inline", "dedupe"),
                   help="turn off one pipeline step (repeatable)")

    p = add("build-dataset", cmd_build_dataset, "generate completion tasks and splits")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_seed, default=_seed(str(_env("SEED", 42))))
    p.add_argument("--pretrain-ratio", default=_env("PRETRAIN_RATIO", "2/3"))
    p.add_argument("--finetune-ratios", default=_env("FINETUNE_RATIOS", "8/10,1/10,1/10"))

    p = add("train", cmd_train, "train an n-gram model on the fine-tuning train split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--order", type=_order, default=_order(str(_env("ORDER", 5))))
    p.add_argument("--out", required=True)

    p = add("sweep", cmd_sweep, "compare n-gram orders on the eval split")
    dataset_split(p)
    p.add_argument("--orders", type=_orders, default=_orders(_env("ORDERS", "3,5,7")))
    p.add_argument("--out")

    p = add("predict", cmd_predict, "run an n-gram model over a split")
    dataset_split(p)
    p.add_argument("--model", required=True)
    p.add_argument("--k", type=_positive, default=_env("K", None), help="cap on predicted tokens")
    p.add_argument("--label", help="model label (default: '<order>-gram')")
    p.add_argument("--out", required=True)

    p = add("export-tasks", cmd_export_tasks, "write a split for an external model")
    dataset_split(p)
    p.add_argument("--out", required=True)

    p = add("import-predictions", cmd_import_predictions, "pair external predictions with a split")
    dataset_split(p)
    p.add_argument("input")
    p.add_argument("--label")
    p.add_argument("--out", required=True)

    p = add("evaluate", cmd_evaluate, "metric report for one or two models")
    dataset_split(p)
    p.add_argument("predictions", nargs="+")
    p.add_argument("--out")

    p = add("compare", cmd_compare, "report with paired comparison of two models")
    dataset_split(p)
    p.add_argument("predictions_a")
    p.add_argument("predictions_b")
    p.add_argument("--out")

    p = add("complete", cmd_complete, "complete comment prefixes read from stdin")
    p.add_argument("--model", required=True)
    p.add_argument("--k", type=_positive, default=int(_env("K", 5) or 5))
    p.add_argument("--interactive", action="store_true", help="prompt for each line")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser()
    except (argparse.ArgumentTypeError, ValueError) as exc:
        print(f"commentcomplete: bad environment override: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    if isinstance(getattr(args, "k", None), str):
        try:
            args.k = _positive(args.k)
        except argparse.ArgumentTypeError as exc:
            parser.error(f"{ENV_PREFIX}K: {exc}")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"commentcomplete: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, SchemaError, CorpusError, NgramError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"commentcomplete: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last-resort guard
        logger.debug("internal error", exc_info=True)
        print(f"commentcomplete: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
