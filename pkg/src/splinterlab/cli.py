"""Command line: run scenarios, list the registry, manage the report cache."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .cache import ReportCache, cache_key
from .errors import (
    BudgetExceeded,
    CacheCorrupt,
    DegenerateMap,
    DegreeMismatch,
    NonNormalCone,
    NotMonicInVariable,
    UnsupportedDimension,
    ValidationError,
    WindowError,
)
from .report import canonical_bytes, render_table
from .scenarios import REGISTRY, list_scenarios, resolve_params, run_scenario

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3

INVALID = (ValidationError, NonNormalCone, UnsupportedDimension, DegenerateMap, WindowError,
           DegreeMismatch, NotMonicInVariable)


class UsageError(Exception):
    pass


def _collect_params(pairs: list[str] | None, extras: list[str]) -> dict:
    """--param k=v entries plus free-form '--k v' / '--k=v' tokens."""
    out: dict[str, str] = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        out[key] = val
    i = 0
    while i < len(extras):
        tok = extras[i]
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key, sep, val = tok[2:].partition("=")
        if not sep:
            if i + 1 >= len(extras):
                raise UsageError(f"missing value for --{key}")
            val = extras[i + 1]
            i += 1
        out[key.replace("-", "_")] = val
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="splinterlab", description=__doc__, allow_abbrev=False)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", allow_abbrev=False, help="run a scenario; scenario parameters go as --NAME VALUE")
    run.add_argument("name")
    run.add_argument("--param", action="append", metavar="KEY=VALUE")
    run.add_argument("--out", type=Path, help="write the canonical report here")
    run.add_argument("--format", choices=["table", "machine"], default="table")
    run.add_argument("--no-cache", action="store_true")
    run.add_argument("--timing", action="store_true", help="print wall time to stderr")

    ls = sub.add_parser("list", help="list scenarios and their parameters")
    ls.add_argument("filter", nargs="?")
    ls.add_argument("--format", choices=["table", "machine"], default="table")

    cache = sub.add_parser("cache", allow_abbrev=False, help="inspect or manage the report cache")
    cache.add_argument("action", choices=["get", "put", "clear"])
    cache.add_argument("name", nargs="?")
    cache.add_argument("--param", action="append", metavar="KEY=VALUE")
    return ap


def _report_bytes(name: str, raw: dict, use_cache: bool) -> bytes:
    sc = REGISTRY.get(name)
    if sc is None:
        raise ValidationError(f"unknown scenario {name!r}")
    params = resolve_params(sc, raw)
    cache = ReportCache()
    key = cache_key(__version__, name, params)
    if use_cache:
        try:
            hit = cache.get(key)
        except CacheCorrupt as exc:
            print(f"warning: {exc}; recomputing", file=sys.stderr)
            hit = None
        if hit is not None:
            return hit
    body = canonical_bytes(run_scenario(name, params))
    if use_cache:
        try:
            cache.put(key, body)
        except OSError as exc:
            print(f"warning: cache not written: {exc}", file=sys.stderr)
    return body


def _cmd_run(args, extras: list[str]) -> int:
    raw = _collect_params(args.param, extras)
    t0 = time.perf_counter_ns()
    body = _report_bytes(args.name, raw, not args.no_cache)
    elapsed_ms = (time.perf_counter_ns() - t0) // 1_000_000
    report = json.loads(body)
    if args.out:
        args.out.write_bytes(body)
    if args.format == "machine":
        sys.stdout.write(body.decode())
    else:
        sys.stdout.write(render_table(report))
    if args.timing:
        print(f"time_ms {elapsed_ms}", file=sys.stderr)
    return EXIT_OK if report["status"] == "ok" else EXIT_MISMATCH


def _cmd_list(args) -> int:
    scs = list_scenarios(args.filter)
    if args.format == "machine":
        body = {"scenarios": [{"name": s.name, "summary": s.summary, "params": s.schema()} for s in scs]}
        sys.stdout.write(canonical_bytes(body).decode())
        return EXIT_OK
    for s in scs:
        print(f"{s.name}  {s.summary}")
        for p in s.params:
            print(f"    --{p.name} <{p.kind}>  default {p.default}  {p.help}")
    return EXIT_OK


def _cmd_cache(args, extras: list[str]) -> int:
    cache = ReportCache()
    if args.action == "clear":
        print(f"cleared {cache.clear()} entries from {cache.root}")
        return EXIT_OK
    if not args.name:
        raise UsageError(f"cache {args.action} needs a scenario name")
    sc = REGISTRY.get(args.name)
    if sc is None:
        raise ValidationError(f"unknown scenario {args.name!r}")
    params = resolve_params(sc, _collect_params(args.param, extras))
    key = cache_key(__version__, args.name, params)
    if args.action == "put":
        body = canonical_bytes(run_scenario(args.name, params))
        print(f"stored {key} at {cache.put(key, body)}")
        return EXIT_OK
    try:
        hit = cache.get(key)
    except CacheCorrupt as exc:
        print(f"corrupt: {exc}")
        return EXIT_INTERNAL
    if hit is None:
        print(f"miss {key}")
        return EXIT_OK
    sys.stdout.write(hit.decode())
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args, extras = ap.parse_known_args(argv)
    try:
        if args.command == "list":
            if extras:
                ap.error(f"unrecognized arguments: {' '.join(extras)}")
            return _cmd_list(args)
        if args.command == "run":
            return _cmd_run(args, extras)
        return _cmd_cache(args, extras)
    except UsageError as exc:
        ap.error(str(exc))
    except INVALID as exc:
        name = getattr(args, "name", None)
        print(f"error: {name}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - the CLI reports every failure through its exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
