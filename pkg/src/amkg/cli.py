"""Operator command line.

Subcommands: validate (seed inventory check), query (one-shot natural
language), cypher (raw guarded query), repl (interactive loop), serve
(HTTP service). Exit codes: 0 success, 1 failed validation or pipeline
error, 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .cypher import CypherError, execute
from .domain import SeedError, load_seed, validate_dataset
from .domain.build import default_seed_text
from .nl import Engine, answer, guard
from .service import ENV_SEED_PATH, ENV_TRANSLATOR_MODE, serve

_COUNT_LINES = ("materials", "families", "processes", "feedstocks")


def _read_seed(seed_flag: str | None) -> str:
    path = seed_flag or os.environ.get(ENV_SEED_PATH)
    if path:
        return Path(path).read_text(encoding="utf-8")
    return default_seed_text()


def _engine(args: argparse.Namespace) -> Engine:
    mode = getattr(args, "mode", None) or os.environ.get(ENV_TRANSLATOR_MODE, "rule")
    return Engine.from_seed_text(_read_seed(args.seed), mode=mode)


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        dataset = load_seed(_read_seed(args.seed))
    except SeedError as exc:
        print(f"seed error: {exc}", file=sys.stderr)
        return 1
    report = validate_dataset(dataset)
    for key in _COUNT_LINES:
        print(f"{key}: {report.counts[key]}")
    if report.ok:
        print("ok: no violations")
        return 0
    for violation in report.violations:
        print(f"violation: {violation}")
    return 1


def _cmd_query(args: argparse.Namespace) -> int:
    result = answer(args.text, _engine(args))
    if args.show_cypher and result.cypher:
        print(f"Cypher: {result.cypher}")
    print(result.text)
    return 0 if result.status != "error" else 1


def _format_table(columns, rows) -> str:
    out = [" | ".join(columns)]
    for row in rows:
        out.append(" | ".join("null" if cell is None else str(cell) for cell in row))
    return "\n".join(out)


def _cmd_cypher(args: argparse.Namespace) -> int:
    engine = _engine(args)
    try:
        validated = guard(args.query, engine.schema)
    except CypherError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1
    table = execute(engine.graph, validated)
    print(_format_table(table.columns, table.rows))
    return 0


def _cmd_repl(args: argparse.Namespace) -> int:
    engine = _engine(args)
    print("amkg repl; empty line or 'exit' to quit")
    while True:
        try:
            line = input("amkg> ")
        except EOFError:
            print()
            return 0
        line = line.strip()
        if not line or line in ("exit", "quit"):
            return 0
        result = answer(line, engine)
        if result.cypher:
            print(f"[{result.intent}] {result.cypher}")
        print(result.text)


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(engine=_engine(args), bind_addr=args.bind)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amkg",
        description="Decision support over the metal additive manufacturing knowledge graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", metavar="PATH", help="seed JSON file (default: shipped dataset)")

    def add_mode(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--mode",
            choices=("rule", "remote", "fallback"),
            help="translator mode (default: rule, or AMKG_TRANSLATOR_MODE)",
        )

    p_validate = sub.add_parser("validate", help="validate the seed dataset inventory")
    add_seed(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    p_query = sub.add_parser("query", help="answer one natural-language question")
    p_query.add_argument("text", help="the question")
    add_seed(p_query)
    add_mode(p_query)
    p_query.add_argument("--show-cypher", action="store_true", help="print the generated Cypher")
    p_query.set_defaults(func=_cmd_query)

    p_cypher = sub.add_parser("cypher", help="run a raw (guarded) Cypher query")
    p_cypher.add_argument("query", help="Cypher text")
    add_seed(p_cypher)
    p_cypher.set_defaults(func=_cmd_cypher)

    p_repl = sub.add_parser("repl", help="interactive question loop")
    add_seed(p_repl)
    add_mode(p_repl)
    p_repl.set_defaults(func=_cmd_repl)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    add_seed(p_serve)
    p_serve.add_argument("--bind", metavar="HOST:PORT", help="bind address (default 127.0.0.1:8080)")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SeedError as exc:
        print(f"seed error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
