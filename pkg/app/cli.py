"""Command-line front end: resample, evaluate, compare, predict, serve.

Exit codes: 0 success, 2 usage error, 3 data or file error. JSON and CSV payloads go
to stdout; diagnostics and logs go to stderr.
"""

import argparse
import logging
import sys
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from .compare import compare
from .config import Settings
from .dataset import apply_standardizer, load_csv, load_scoring_csv, write_csv
from .exceptions import ResamplingError
from .metrics import write_roc_csv
from .model import load_model, predict_labels, predict_scores, save_model
from .models import EvaluateRequest, TrainingConfig
from .pipeline import evaluate, resample

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="input CSV with a header row")
    parser.add_argument("--label-col", required=True, help="name of the label column")
    parser.add_argument("--positive-label", required=True, help="label value of the minority class")


def _add_resampler_flags(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument("--k", type=int, default=settings.DEFAULT_K, help="nearest neighbors (default %(default)s)")
    parser.add_argument("--seed", type=int, default=None, help="seed; falls back to $RESAMPLE_SEED")
    amount = parser.add_mutually_exclusive_group()
    amount.add_argument("--n", type=int, default=None, help="SMOTE: synthetic samples (default: balance classes)")
    amount.add_argument("--beta", type=float, default=None, help="ADASYN: balance level in (0, 1] (default 1)")
    parser.add_argument("--delta", type=float, default=None, help="fix the interpolation coefficient")


def _add_evaluation_flags(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument("--train-frac", type=float, default=settings.TRAIN_FRACTION)
    parser.add_argument("--learning-rate", type=float, default=settings.LEARNING_RATE)
    parser.add_argument("--epochs", type=int, default=settings.EPOCHS)
    parser.add_argument("--threshold", type=float, default=settings.DECISION_THRESHOLD)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resampling-lab",
        description="Rebalance two-class CSV data with SMOTE/ADASYN and measure the effect.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("resample", help="append synthetic minority rows to a CSV")
    _add_data_flags(cmd)
    cmd.add_argument("output", help="output CSV: input rows followed by synthetic rows")
    cmd.add_argument("--method", choices=("smote", "adasyn"), required=True)
    _add_resampler_flags(cmd, settings)

    cmd = commands.add_parser("evaluate", help="split, resample train, fit, report measures as JSON")
    _add_data_flags(cmd)
    cmd.add_argument("--method", choices=("none", "smote", "adasyn"), default="none")
    _add_resampler_flags(cmd, settings)
    _add_evaluation_flags(cmd, settings)
    cmd.add_argument("--roc-out", default=None, help="write ROC points as fpr,tpr CSV")
    cmd.add_argument("--model-out", default=None, help="save the trained model")

    cmd = commands.add_parser("compare", help="evaluate none, smote and adasyn on one split")
    _add_data_flags(cmd)
    _add_resampler_flags(cmd, settings)
    _add_evaluation_flags(cmd, settings)

    cmd = commands.add_parser("predict", help="score a CSV with a saved model")
    cmd.add_argument("input")
    cmd.add_argument("--model", required=True)
    cmd.add_argument("--label-col", default=None, help="label column to ignore, if the CSV has one")
    cmd.add_argument("--output", default=None, help="score CSV path (default stdout)")

    cmd = commands.add_parser("serve", help="run the HTTP service")
    cmd.add_argument("--host", default="0.0.0.0")
    cmd.add_argument("--port", type=int, default=8000)
    return parser


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    return settings.RESAMPLE_SEED if args.seed is None else args.seed


def _evaluate_request(args: argparse.Namespace, settings: Settings, method: str) -> EvaluateRequest:
    return EvaluateRequest(
        method=method,
        label_column=args.label_col,
        positive_label=args.positive_label,
        train_fraction=args.train_frac,
        seed=_seed(args, settings),
        k=args.k,
        n_synthetic=args.n,
        beta=1.0 if args.beta is None else args.beta,
        delta_override=args.delta,
        threshold=args.threshold,
        training=TrainingConfig(learning_rate=args.learning_rate, epochs=args.epochs),
    )


def cmd_resample(args: argparse.Namespace, settings: Settings) -> int:
    ds = load_csv(args.input, args.label_col, args.positive_label)
    result = resample(
        ds,
        args.method,
        k=args.k,
        seed=_seed(args, settings),
        n_synthetic=args.n,
        beta=1.0 if args.beta is None else args.beta,
        delta_override=args.delta,
    )
    write_csv(result.dataset, args.output)
    logger.info("wrote %d rows (%d synthetic) to %s", result.dataset.n_rows, len(result.samples), args.output)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, settings: Settings) -> int:
    request = _evaluate_request(args, settings, args.method)
    ds = load_csv(args.input, request.label_column, request.positive_label)
    evaluation = evaluate(ds, request)
    if args.roc_out:
        write_roc_csv(evaluation.curve, args.roc_out)
    if args.model_out:
        save_model(evaluation.model, args.model_out)
    print(evaluation.report.model_dump_json(indent=2))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    request = _evaluate_request(args, settings, "none")
    ds = load_csv(args.input, request.label_column, request.positive_label)
    print(compare(ds, request).model_dump_json(indent=2))
    return EXIT_OK


def cmd_predict(args: argparse.Namespace, settings: Settings) -> int:
    model = load_model(args.model)
    ds = load_scoring_csv(
        args.input,
        model.column_names,
        model.categories,
        positive_label=model.positive_label,
        negative_label=model.negative_label,
        label_column=args.label_col,
    )
    if model.standardizer is not None:
        ds = apply_standardizer(model.standardizer, ds)
    frame = pd.DataFrame({
        "score": [repr(score) for score in predict_scores(model, ds)],
        "predicted": predict_labels(model, ds, settings.DECISION_THRESHOLD),
    })
    frame.to_csv(args.output or sys.stdout, index=False, lineterminator="\n")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, settings: Settings) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {
    "resample": cmd_resample,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
    "predict": cmd_predict,
    "serve": cmd_serve,
}


def _one_line(exc: ValidationError) -> str:
    error = exc.errors()[0]
    where = ".".join(str(part) for part in error["loc"]) or "value"
    return f"{where}: {error['msg']}"


def main(argv: Optional[List[str]] = None) -> int:
    settings = Settings()
    logging.basicConfig(
        level=settings.LOG_LEVEL.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if getattr(args, "method", None) == "smote" and args.beta is not None:
        print("error: --beta applies to adasyn only", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "method", None) == "adasyn" and args.n is not None:
        print("error: --n applies to smote only", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, settings)
    except ValidationError as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except ResamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
