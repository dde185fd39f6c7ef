"""Report rendering: canonical JSON, RFC-style CSV, and Markdown tables.

Interval endpoints are rendered as the exact decimal expansion of the dyadic
value (dyadic rationals always terminate in decimal), plus a 9-digit rounded
midpoint for convenience.  JSON output contains only strings, integers,
booleans and nulls, is key-sorted and fixed-format, so parse + re-serialize
is byte-identical.
"""

from __future__ import annotations

import csv
import io
import json

from .dyadic import DyadicInterval, fraction_to_decimal, fraction_to_decimal_fixed


def interval_obj(iv: DyadicInterval) -> dict:
    return {
        "lo": fraction_to_decimal(iv.lo),
        "hi": fraction_to_decimal(iv.hi),
        "mid9": fraction_to_decimal_fixed(iv.midpoint, 9),
    }


def plain_decimal(fr) -> str:
    """Exact terminating decimal of a rational with denominator 2^a 5^b."""
    den = fr.denominator
    a = b = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    while den % 5 == 0:
        den //= 5
        b += 1
    if den != 1:
        raise ValueError(f"{fr} has no terminating decimal expansion")
    k = max(a, b)
    scaled = abs(fr.numerator) * 2 ** (k - a) * 5 ** (k - b)
    sign = "-" if fr.numerator < 0 else ""
    digits = str(scaled)
    if k == 0:
        return sign + digits
    digits = digits.rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _flatten(value, prefix: str, out: dict):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(v, f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(value, (list, tuple)):
        out[prefix] = json.dumps(value)
    else:
        out[prefix] = "" if value is None else str(value)


def flatten_rows(rows: list) -> tuple:
    flat = []
    fields: list = []
    for row in rows:
        d: dict = {}
        _flatten(row, "", d)
        for k in d:
            if k not in fields:
                fields.append(k)
        flat.append(d)
    return fields, flat


def to_csv(rows: list) -> str:
    fields, flat = flatten_rows(rows)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in flat:
        writer.writerow({k: row.get(k, "") for k in fields})
    return buf.getvalue()


def to_markdown(rows: list) -> str:
    fields, flat = flatten_rows(rows)
    if not fields:
        return "(empty)\n"
    lines = ["| " + " | ".join(fields) + " |",
             "| " + " | ".join("---" for _ in fields) + " |"]
    for row in flat:
        lines.append("| " + " | ".join(row.get(k, "") for k in fields) + " |")
    return "\n".join(lines) + "\n"
