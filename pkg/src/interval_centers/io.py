"""Reading and writing interval datasets as CSV.

Layout: an optional leading ``id`` column, then for every variable a pair
of columns ``<name>_lo`` and ``<name>_hi``.  Variables appear in the order
of their first column.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .errors import IntervalError, MalformedHeader, RowError
from .hypercube import Hypercube, HypercubeDataset
from .intervals import Interval


def _parse_header(header):
    header = [h.strip() for h in header]
    has_id = bool(header) and header[0].lower() == "id"
    cols = header[1:] if has_id else header
    if not cols:
        raise MalformedHeader("no interval columns in header")
    names, slots = [], {}
    for pos, col in enumerate(cols):
        base, sep, side = col.rpartition("_")
        if not sep or side not in ("lo", "hi") or not base:
            raise MalformedHeader(f"column {col!r} is neither 'id' nor '<name>_lo'/'<name>_hi'")
        entry = slots.setdefault(base, {})
        if side in entry:
            raise MalformedHeader(f"duplicate column {col!r}")
        if base not in names:
            names.append(base)
        entry[side] = pos + (1 if has_id else 0)
    for name in names:
        missing = {"lo", "hi"} - slots[name].keys()
        if missing:
            raise MalformedHeader(f"variable {name!r} has no matching _{missing.pop()} column")
    return has_id, names, [(slots[n]["lo"], slots[n]["hi"]) for n in names], len(header)


def _number(text, row, col):
    try:
        v = float(text)
    except ValueError:
        raise RowError(row, f"{col}: {text!r} is not a number") from None
    if not math.isfinite(v):
        raise RowError(row, f"{col}: {text!r} is not finite")
    return v


def read_csv(source) -> HypercubeDataset:
    """Parse a file path or an open text stream into a dataset."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return _read(fh)
    return _read(source)


def _read(fh) -> HypercubeDataset:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedHeader("empty file") from None
    has_id, names, pairs, width = _parse_header(header)
    ids, items = [], []
    for rownum, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != width:
            raise RowError(rownum, f"expected {width} fields, got {len(row)}")
        comps = []
        for name, (i_lo, i_hi) in zip(names, pairs):
            lo = _number(row[i_lo].strip(), rownum, f"{name}_lo")
            hi = _number(row[i_hi].strip(), rownum, f"{name}_hi")
            if lo > hi:
                raise RowError(rownum, f"{name}: lo > hi ({lo} > {hi})")
            comps.append(Interval(lo, hi))
        ids.append(row[0].strip() if has_id else str(len(items) + 1))
        items.append(Hypercube(tuple(comps)))
    if not items:
        raise RowError(0, "no data rows")
    try:
        return HypercubeDataset(tuple(items), tuple(names), tuple(ids))
    except IntervalError as exc:
        raise RowError(0, str(exc)) from None


def write_csv(data: HypercubeDataset, fh=None) -> str:
    """Serialize with an ``id`` column; floats are written with ``repr`` so
    that reading the output back gives the identical dataset."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["id"]
    for name in data.names:
        header += [f"{name}_lo", f"{name}_hi"]
    w.writerow(header)
    for ident, x in zip(data.ids, data.items):
        row = [ident]
        for c in x:
            row += [repr(c.lower), repr(c.upper)]
        w.writerow(row)
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
