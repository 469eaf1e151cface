"""JSON and CSV report writers.

A report is ``{"meta": {...}, "cases": [record, ...]}``.  Records are flat
dicts; CSV output is the cases table with a header row, and the meta block
goes to a sidecar ``<out>.meta.json``.  Floats are written with ``repr`` in
both formats, so the numbers round-trip at full (17 significant digit)
precision.
"""

from __future__ import annotations

import csv
import io
import json
import math

VOLATILE_META = ("elapsed_ms",)


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _clean_record(rec):
    return {k: _clean(v) for k, v in rec.items()}


def to_json(meta, cases):
    doc = {"meta": meta, "cases": [_clean_record(c) for c in cases]}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _header(cases):
    keys = []
    for rec in cases:
        for k in rec:
            if k not in keys:
                keys.append(k)
    return keys


def to_csv(cases):
    buf = io.StringIO()
    header = _header(cases)
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for rec in cases:
        writer.writerow({k: "" if v is None else _csv_value(v) for k, v in _clean_record(rec).items()})
    return buf.getvalue()


def _csv_value(v):
    if isinstance(v, float):
        return repr(v)
    return v


def strip_volatile(json_text):
    """Drop wall-clock fields so two reports can be compared byte for byte."""
    doc = json.loads(json_text)
    for key in VOLATILE_META:
        doc["meta"].pop(key, None)
    return json.dumps(doc, indent=2)


def write_report(path, meta, cases, fmt="json"):
    """Write to ``path`` (or return the text when ``path`` is None)."""
    if fmt == "json":
        text = to_json(meta, cases)
        if path is None:
            return text
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return text
    if fmt == "csv":
        text = to_csv(cases)
        if path is None:
            return text
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        with open(f"{path}.meta.json", "w", encoding="utf-8") as fh:
            fh.write(json.dumps(meta, indent=2) + "\n")
        return text
    raise ValueError(f"unknown report format {fmt!r}")
