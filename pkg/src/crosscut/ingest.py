"""Marginal-file parsing and grid quantization.

Marginals arrive as (breakpoint, value) rows, CSV with a
'breakpoint,value' header or a JSON array of {"b": ..., "v": ...}; both
accept decimal or rational strings and are parsed into exact Fractions.
A row's value holds from its breakpoint to the next one (the last row
holds to 1).

The core library works on dyadic grids only, so ingestion quantizes:
each width 2**-N interval gets the exact average of the raw function,
rounded to the nearest multiple of 2**-(N+K) with ties toward zero.  The
L1 and sup distances between the raw and quantized functions are computed
exactly and reported, never hidden.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic
from .feasibility import Partition
from .gridset import GridParams
from .stepfn import StepFunction


class ParseError(ValueError):
    """Input file is not a readable marginal or partition."""


class NegativeValue(ParseError):
    """Marginal values must be nonnegative."""


@dataclass(frozen=True)
class RawMarginal:
    """Exact rational step function on [0,1): breakpoints[i] starts the
    plateau with values[i]."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.breakpoints or self.breakpoints[0] != 0:
            raise ParseError("first breakpoint must be 0")
        if len(self.breakpoints) != len(self.values):
            raise ParseError("need one value per breakpoint")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ParseError("breakpoints must be strictly increasing")
        if self.breakpoints[-1] >= 1:
            raise ParseError("breakpoints must lie in [0, 1)")
        for v in self.values:
            if v < 0:
                raise NegativeValue(f"negative value {v}")

    def value_at(self, x: Fraction) -> Fraction:
        i = len(self.breakpoints) - 1
        while self.breakpoints[i] > x:
            i -= 1
        return self.values[i]


@dataclass(frozen=True)
class QuantizationReport:
    """Exact distances between the raw marginal and its quantization."""

    l1_error: Fraction
    sup_error: Fraction


def _to_fraction(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def parse_marginal_text(text: str, fmt: str) -> RawMarginal:
    pairs = []
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        if not isinstance(data, list):
            raise ParseError("JSON marginal must be an array of objects")
        for row in data:
            if not isinstance(row, dict) or "b" not in row or "v" not in row:
                raise ParseError(f"JSON row needs 'b' and 'v': {row!r}")
            pairs.append((_to_fraction(row["b"]), _to_fraction(row["v"])))
    elif fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        rows = [r for r in reader if r and any(cell.strip() for cell in r)]
        if not rows:
            raise ParseError("empty CSV")
        header = [c.strip().lower() for c in rows[0]]
        if header != ["breakpoint", "value"]:
            raise ParseError("CSV header must be 'breakpoint,value'")
        for r in rows[1:]:
            if len(r) != 2:
                raise ParseError(f"CSV row needs two fields: {r!r}")
            pairs.append((_to_fraction(r[0]), _to_fraction(r[1])))
    else:
        raise ParseError(f"unknown marginal format {fmt!r}")
    if not pairs:
        raise ParseError("marginal has no rows")
    return RawMarginal(tuple(b for b, _ in pairs), tuple(v for _, v in pairs))


def load_marginal(path: str) -> RawMarginal:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        fmt = "json"
    elif path.endswith(".csv"):
        fmt = "csv"
    else:
        fmt = "json" if text.lstrip().startswith(("[", "{")) else "csv"
    return parse_marginal_text(text, fmt)


def load_partition(path: str) -> Partition:
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    try:
        parts = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(f"partition file must hold integers: {exc}") from exc
    if any(p < 0 for p in parts):
        raise ParseError("partition parts must be nonnegative")
    return Partition(parts)


def _interval_average(raw: RawMarginal, lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    cuts = [lo] + [b for b in raw.breakpoints if lo < b < hi] + [hi]
    for a, b in zip(cuts, cuts[1:]):
        total += raw.value_at(a) * (b - a)
    return total / (hi - lo)


def quantize(raw: RawMarginal, params: GridParams):
    """Snap a raw marginal to the dyadic grid.

    Returns (StepFunction, QuantizationReport).  The output is constant on
    each width 2**-N interval; values are interval averages rounded to the
    nearest multiple of 2**-(N+K), ties toward zero.
    """
    n = params.depth
    nk = params.depth + params.subres
    cells = params.side
    qvals: list[Dyadic] = []
    for j in range(cells):
        lo, hi = Fraction(j, cells), Fraction(j + 1, cells)
        avg = _interval_average(raw, lo, hi)
        q = Dyadic.round_fraction(avg, nk)
        if q < Dyadic(0):
            q = Dyadic(0)
        qvals.append(q)
    quantized = StepFunction.from_grid(qvals, n)

    # exact error integrals over the common refinement
    l1 = Fraction(0)
    sup = Fraction(0)
    grid_cuts = [Fraction(j, cells) for j in range(cells + 1)]
    cuts = sorted(set(grid_cuts) | set(raw.breakpoints))
    for a, b in zip(cuts, cuts[1:]):
        rv = raw.value_at(a)
        cell = int(a * cells)  # floor; pieces never straddle a grid cut
        qv = qvals[cell].to_fraction()
        err = abs(rv - qv)
        l1 += err * (b - a)
        sup = max(sup, err)
    return quantized, QuantizationReport(l1_error=l1, sup_error=sup)
