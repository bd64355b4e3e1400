"""Canonical report encoding: sorted keys, integers only, no floating point."""

from __future__ import annotations

import json
from typing import Any

SCHEMA_VERSION = 1


def _check(obj: Any, path: str = "$") -> None:
    if isinstance(obj, float):
        raise TypeError(f"floating point value at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key at {path}")
            _check(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check(v, f"{path}[{i}]")
    elif not (obj is None or isinstance(obj, (str, int, bool))):
        raise TypeError(f"unsupported value {type(obj).__name__} at {path}")


def canonical_bytes(report: dict) -> bytes:
    _check(report)
    return (json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n").encode()


def canonical_params(params: dict) -> str:
    _check(params)
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def render_table(report: dict) -> str:
    """Human-readable summary: scenario, verdicts, expectation checks."""
    lines = [f"scenario  {report['scenario']['name']}  {canonical_params(report['scenario']['params'])}"]
    lines.append(f"status    {report['status']}")
    width = max([len(k) for k in report["verdicts"]] + [8])
    for k in sorted(report["verdicts"]):
        lines.append(f"  {k.ljust(width)}  {_fmt(report['verdicts'][k])}")
    for chk in report["expectations"]:
        mark = "ok  " if chk["match"] else "FAIL"
        lines.append(f"  [{mark}] {chk['key']} expected {_fmt(chk['expected'])} ({chk['provenance']})")
    for claim in report.get("claims", []):
        lines.append(f"  claim: {claim['claim']} -> {claim['computed']}")
    return "\n".join(lines) + "\n"
