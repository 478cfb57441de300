"""Machine-readable reports.

A report is a flat JSON object with sorted keys, so identical inputs and
seed give byte-identical output.
"""

import json

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "error", "verdict")
EXIT_CODES = {"pass": 0, "verdict": 0, "fail": 1, "error": 2}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if hasattr(x, "to_dict"):
        return _jsonable(x.to_dict())
    return str(x)


def make_report(command, inputs, status, details, seed):
    from . import __version__

    if status not in STATUSES:
        raise ValueError(f"unknown status {status!r}")
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "status": status,
        "details": _jsonable(details),
        "version": __version__,
        "seed": seed,
    }


def to_json(report, compact=False):
    if compact:
        return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _text_lines(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar_text(v)}"
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_scalar_text(v)}"
    else:
        yield f"{pad}{_scalar_text(value)}"


def _scalar_text(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def to_text(report):
    head = f"{report['command']}: {report['status'].upper()}"
    body = list(_text_lines(report["details"], 1))
    tail = f"  (seed {report['seed']}, virtwist {report['version']})"
    return "\n".join([head, *body, tail])
