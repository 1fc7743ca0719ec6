"""Command-line entry point for all pipelines.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .agreement import (
    UndefinedAlphaError,
    accuracy,
    coincidence,
    krippendorff_alpha,
    pairwise_metrics,
    read_coincidence,
)
from .annotations import (
    AnnotationSchemaError,
    aggregate_annotations,
    read_annotations,
    reliability_from_annotations,
)
from .builder import BuildError, DictionaryOracle, SemanticResource, build
from .evaluate import read_eval_corpus, regenerate_and_match
from .lexicon import Lexicon, LexiconError, parse_lexicon, serialize_lexicon
from .prepmodel import CorpusFormatError, PrepModel, read_tagged_corpus, train
from .realiser import expand

_DATA_ERRORS = (
    LexiconError,
    CorpusFormatError,
    BuildError,
    AnnotationSchemaError,
    UndefinedAlphaError,
    OSError,
    ValueError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_lexicon(path: str | None) -> Lexicon:
    if path is None:
        from .resources import load_seed_lexicon

        return load_seed_lexicon()
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def _load_model(path: str | None) -> PrepModel:
    if path is None:
        from .resources import load_seed_model

        return load_seed_model()
    return PrepModel.loads(Path(path).read_text(encoding="utf-8"))


def _cmd_expand(args) -> int:
    if not args.words:
        raise UsageError("expand requires at least one word")
    lex = _load_lexicon(args.lexicon)
    model = _load_model(args.model)
    result = expand(
        args.words,
        lex,
        model,
        top_k=args.top_k,
        contractions=not args.no_contractions,
    )
    for candidate in result.candidates:
        print(f"{candidate.score:.6g}\t{candidate.text}")
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return 0 if result.candidates else 2


def _cmd_build_lexicon(args) -> int:
    sources = []
    for item in args.source:
        if "=" not in item:
            raise UsageError(f"--source must be id=path, got {item!r}")
        source_id, path = item.split("=", 1)
        sources.append((source_id, Path(path).read_text(encoding="utf-8")))
    oracle = DictionaryOracle.from_text(
        Path(args.dictionary).read_text(encoding="utf-8")
    )
    semantics = SemanticResource.from_text(
        Path(args.semantics).read_text(encoding="utf-8")
    )
    fallback = None
    if args.fallback_semantics:
        fallback = SemanticResource.from_text(
            Path(args.fallback_semantics).read_text(encoding="utf-8")
        )
    lexicon, report = build(sources, oracle, (semantics, fallback))
    Path(args.out).write_text(serialize_lexicon(lexicon), encoding="utf-8")
    Path(args.report).write_text(report.text(), encoding="utf-8")
    print(
        f"built {report.verified_total} entries "
        f"({report.merged_total} merged) -> {args.out}"
    )
    return 0


def _cmd_train_prep(args) -> int:
    lex = _load_lexicon(args.lexicon)
    corpus = read_tagged_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    model = train(corpus, lex)
    Path(args.out).write_text(model.dumps(), encoding="utf-8")
    print(f"trained {len(model)} (verb, tag) pairs -> {args.out}")
    if args.extend_lexicon:
        from .prepmodel import extend_lexicon

        extended = extend_lexicon(lex, model)
        Path(args.extend_lexicon).write_text(
            serialize_lexicon(extended), encoding="utf-8"
        )
        print(f"extended lexicon with learned prepositions -> {args.extend_lexicon}")
    return 0


def _cmd_evaluate(args) -> int:
    lex = _load_lexicon(args.lexicon)
    model = _load_model(args.model)
    corpus = read_eval_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    report = regenerate_and_match(corpus, lex, model, top_k=args.top_k)
    summary = report.to_dict()
    if args.report:
        Path(args.report).write_text(
            json.dumps(summary, indent=2) + "\n", encoding="utf-8"
        )
    print(
        f"{summary['exact']}/{summary['total']} exact "
        f"({summary['exact_pct']}%), "
        f"{summary['capitalization_only']} capitalization-only, "
        f"{summary['mismatch']} mismatched"
    )
    return 0


def _cmd_agreement(args) -> int:
    if bool(args.annotations) == bool(args.coincidence):
        raise UsageError("provide exactly one of --annotations or --coincidence")
    payload: dict
    if args.coincidence:
        cm = read_coincidence(Path(args.coincidence).read_text(encoding="utf-8"))
        alpha = krippendorff_alpha(cm)
        acc = accuracy(cm)
        payload = {"alpha": alpha, "accuracy": acc, "n": cm.n}
    else:
        docs = []
        names = sorted(Path(args.annotations).glob("*.xml"))
        if len(names) < 2:
            raise BuildError(
                f"{args.annotations}: need at least two annotation files"
            )
        for name in names:
            docs.append(read_annotations(name.read_text(encoding="utf-8")))
        reliability = reliability_from_annotations(docs)
        cm = coincidence(reliability)
        alpha = krippendorff_alpha(cm)
        acc = accuracy(cm)
        pair_alpha, pair_acc = pairwise_metrics(reliability)
        consensus = aggregate_annotations(docs)
        payload = {
            "alpha": alpha,
            "accuracy": acc,
            "n": cm.n,
            "annotators": [p.name for p in names],
            "pairwise_alpha": pair_alpha,
            "pairwise_accuracy": pair_acc,
            "consensus": consensus.to_dict(),
        }
    print(f"alpha={payload['alpha']:.3f}")
    print(f"accuracy={payload['accuracy']:.3f}")
    if "pairwise_alpha" in payload:
        print("pairwise alpha:")
        _print_pairwise(payload["pairwise_alpha"])
        print("pairwise accuracy:")
        _print_pairwise(payload["pairwise_accuracy"])
    if args.out:
        Path(args.out).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
    return 0


def _print_pairwise(matrix) -> None:
    for row in matrix:
        cells = ["-" if value is None else f"{value:.3f}" for value in row]
        print("\t".join(cells))


def _cmd_serve(args) -> int:
    from .service import serve

    port = args.port
    env_port = os.environ.get("EXPANDO_PORT")
    if env_port:
        try:
            port = int(env_port)
        except ValueError:
            raise UsageError(f"EXPANDO_PORT is not an integer: {env_port!r}")
    lex = _load_lexicon(args.lexicon)
    model = _load_model(args.model)
    serve(port=port, host=args.host, lex=lex, model=model)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="expando", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("expand", help="expand keywords into ranked sentences")
    p.add_argument("words", nargs="*", help="keywords in subject-verb-object order")
    p.add_argument("--lexicon", help="lexicon XML (default: bundled seed)")
    p.add_argument("--model", help="preposition model TSV (default: bundled seed)")
    p.add_argument("--top-k", type=int, default=5)
    p.add_argument("--no-contractions", action="store_true")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("build-lexicon", help="build a lexicon from source files")
    p.add_argument("--source", action="append", required=True, metavar="ID=PATH")
    p.add_argument("--dictionary", required=True)
    p.add_argument("--semantics", required=True)
    p.add_argument("--fallback-semantics")
    p.add_argument("--out", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(func=_cmd_build_lexicon)

    p = sub.add_parser("train-prep", help="train the preposition model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--out", required=True)
    p.add_argument(
        "--extend-lexicon",
        metavar="PATH",
        help="also write the lexicon with learned prepositions filled in",
    )
    p.set_defaults(func=_cmd_train_prep)

    p = sub.add_parser("evaluate", help="regenerate a corpus and report matches")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--model")
    p.add_argument("--report", help="write the full JSON report here")
    p.add_argument("--top-k", type=int, default=5)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("agreement", help="compute inter-annotator agreement")
    p.add_argument("--annotations", help="directory of annotator XML files")
    p.add_argument("--coincidence", help="coincidence matrix fixture file")
    p.add_argument("--out", help="write metrics JSON here")
    p.set_defaults(func=_cmd_agreement)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--lexicon")
    p.add_argument("--model")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
