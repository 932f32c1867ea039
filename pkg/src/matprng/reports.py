"""Stable serialization for reports: decimal strings with 30 significant
digits for all non-integer numerics, canonical JSON, and LF-terminated CSV.
Running the same computation twice must produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

import mpmath as mp

DIGITS = 30


def dec30(x) -> str:
    """Decimal string with 30 significant digits (deterministic)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numerics here")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        with mp.workdps(DIGITS + 10):
            return mp.nstr(mp.mpf(x.numerator) / mp.mpf(x.denominator), DIGITS)
    with mp.workdps(DIGITS + 10):
        return mp.nstr(mp.mpf(x), DIGITS)


def fmt_cell(x) -> str:
    """CSV cell rendering: ints in decimal, bools lowercase, exact rationals
    as num/den, everything float-like via dec30."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if x is None:
        return ""
    return dec30(x)


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_cell(x) for x in row])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return {"fraction": f"{x.numerator}/{x.denominator}", "decimal": dec30(x)}
    if isinstance(x, complex):
        return {"re": dec30(x.real), "im": dec30(x.imag)}
    return dec30(x)  # floats, mpf


def render_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"
