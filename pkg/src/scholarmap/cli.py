"""Command-line entry point: build, serve, query, export.

Exit codes: 0 success, 1 input/validation error, 2 query error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import clustering, embedding, mapstate, textproc
from .errors import EmptyQueryError, ScholarMapError
from .ingest import PublicationSet, parse_dataset
from .mapstate import MapParams

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_QUERY_ERROR = 2

DATASET_ENV = "SCHOLAR_MAP_DATASET"


def _add_dataset_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "dataset",
        nargs="?",
        default=os.environ.get(DATASET_ENV),
        help=f"path to the researcher CSV (default: ${DATASET_ENV})",
    )


def _add_param_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pubset", choices=[p.value for p in PublicationSet], default=PublicationSet.MOST_CITED.value)
    parser.add_argument("--emphasis", type=int, default=mapstate.DEFAULT_EMPHASIS)
    parser.add_argument("--k", type=int, default=None, help="cluster count (default: min(5, n))")
    parser.add_argument("--seed", type=int, default=clustering.DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scholarmap", description="Map researchers into an explorable 2D space.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="parse and validate a dataset")
    _add_dataset_arg(p_build)
    _add_param_args(p_build)

    p_query = sub.add_parser("query", help="rank researchers against a topic")
    _add_dataset_arg(p_query)
    p_query.add_argument("query_text")
    p_query.add_argument("--top", type=int, default=embedding.DEFAULT_TOP_K)
    _add_param_args(p_query)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    _add_dataset_arg(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    _add_param_args(p_serve)

    p_export = sub.add_parser("export", help="write static JSON files for file-based hosting")
    _add_dataset_arg(p_export)
    p_export.add_argument("--out", default="export")
    _add_param_args(p_export)

    return parser


def _load_dataset(args):
    if not args.dataset:
        print(f"error: no dataset given and ${DATASET_ENV} is not set", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)
    path = Path(args.dataset)
    if not path.is_file():
        print(f"error: dataset file not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)
    try:
        return parse_dataset(path.read_bytes())
    except (ScholarMapError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR) from exc


def _params(args, dataset) -> MapParams:
    k = args.k if args.k is not None else clustering.default_k(len(dataset.researchers))
    try:
        return MapParams(
            pub_set=PublicationSet(args.pubset),
            emphasis=args.emphasis,
            k=k,
            seed=args.seed,
        )
    except (ScholarMapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR) from exc


def cmd_build(args) -> int:
    dataset = _load_dataset(args)
    params = _params(args, dataset)
    documents = [
        textproc.build_document(r, params.pub_set, params.emphasis) for r in dataset.researchers
    ]
    try:
        vocab = embedding.build_vocabulary(documents)
        vocab_size = len(vocab)
    except ScholarMapError:
        vocab_size = 0
    print(f"{len(dataset.researchers)} researchers, vocabulary {vocab_size} terms")
    for warning in dataset.warnings:
        print(f"warning: {warning}")
    for doc in documents:
        if doc.is_empty():
            print(f"warning: researcher {doc.researcher_id} has an empty document")
    return EXIT_OK


def cmd_query(args) -> int:
    dataset = _load_dataset(args)
    params = _params(args, dataset)
    if args.top < 1:
        print("error: --top must be >= 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        state = mapstate.build_map_state(dataset, params)
        result = mapstate.query_map(state, args.query_text, args.top)
    except EmptyQueryError:
        print("error: no query term matches the vocabulary", file=sys.stderr)
        return EXIT_QUERY_ERROR
    except ScholarMapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    names = {s.id: s.name for s in state.summaries}
    for rank, (rid, score) in enumerate(result["top"], start=1):
        print(f"{rank}\t{rid}\t{names[rid]}\t{score:.4f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ApiConfig, create_app

    dataset = _load_dataset(args)
    params = _params(args, dataset)
    try:
        config = ApiConfig(host=args.host, port=args.port, dataset_path=args.dataset)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    app = create_app(dataset, params)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


def cmd_export(args) -> int:
    from .service import export_static

    dataset = _load_dataset(args)
    params = _params(args, dataset)
    try:
        written = export_static(dataset, params, args.out)
    except (OSError, ScholarMapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    for path in written:
        print(path)
    return EXIT_OK


_COMMANDS = {"build": cmd_build, "query": cmd_query, "serve": cmd_serve, "export": cmd_export}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
