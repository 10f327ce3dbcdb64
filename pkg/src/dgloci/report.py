"""Deterministic rendering of command results as JSON or plain text."""

from __future__ import annotations

import json


SET_KEYS = {"reg", "cm_exact", "cm_dense_open", "strata", "union"}


def _is_strata(key, value) -> bool:
    return (
        key in SET_KEYS
        and isinstance(value, list)
        and all(isinstance(s, dict) and set(s) == {"closed", "removed"} for s in value)
    )


def format_strata(strata: list[dict]) -> str:
    if not strata:
        return "(empty)"
    parts = []
    for s in strata:
        closed = "V(" + (", ".join(s["closed"]) or "0") + ")"
        if s["removed"] == ["1"]:
            parts.append(closed)
        else:
            parts.append(closed + " \\ V(" + ", ".join(s["removed"]) + ")")
    return " u ".join(parts)


def _text(value, indent: int, out: list[str]):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_strata(k, v):
                out.append(f"{pad}{k}: {format_strata(v)}")
            elif isinstance(v, (dict, list)) and v and not _flat_list(v):
                out.append(f"{pad}{k}:")
                _text(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                out.append(f"{pad}-")
                _text(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(pad + _scalar(value))


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit_report(result: dict, fmt: str = "text") -> bytes:
    """Same input, same bytes: JSON keys are sorted, text follows insertion order."""
    if fmt in ("json", "structured"):
        return (json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    out: list[str] = []
    _text(result, 0, out)
    return ("\n".join(out) + "\n").encode("utf-8")
