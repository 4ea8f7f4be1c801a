"""Dataset statistics over per-fault class labels.

Two input shapes:

* label rows (one per fault, 8 boolean flags) -> everything here can be
  recomputed from scratch;
* per-project aggregate rows (pre-tallied counts, e.g. transcribed from a
  published table) -> only summation and derived percentages apply.

Conventions, pinned by tests: population standard deviation; quartiles
are the medians of the lower/upper halves with the overall median
excluded for odd n ([1,2,2,3] -> median 2, Q1 1.5, Q3 2.5); percentages
round half-up to one decimal (Python's round() would round half-even).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from ffc.classifier import CLASS_ORDER, FaultClass, fault_type
from ffc.dataset import LabelError, LabelRow

CLASS_NAMES = [c.value for c in CLASS_ORDER]
ALL = "All"


def round_half_up(value: float, digits: int = 1) -> float:
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def percent(part: int, whole: int, digits: int = 1) -> float:
    if whole == 0:
        raise ValueError("percentage of an empty population")
    return round_half_up(100.0 * part / whole, digits)


def _mean_std(values: list[int]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


# --------------------------------------------------------------------------
# Frequencies (the per-project class-count table)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FrequencyRow:
    project: str
    counts: dict[str, int]  # class name -> number of faults in the class
    cf: int                 # pure control-flow faults
    df: int                 # pure data-flow faults
    mixed: int
    total: int
    mean: float             # mean classes per fault
    std: float              # population std of classes per fault
    kloc: int | None = None


@dataclass(frozen=True)
class FrequencyTable:
    rows: list[FrequencyRow]  # per project (sorted), "All" last

    def row(self, project: str) -> FrequencyRow:
        for r in self.rows:
            if r.project == project:
                return r
        raise KeyError(project)


def _tally(project: str, rows: list[LabelRow]) -> FrequencyRow:
    counts = {name: 0 for name in CLASS_NAMES}
    cf = df = mixed = 0
    sizes = []
    for row in rows:
        for cls in row.classes:
            counts[cls.value] += 1
        kind = fault_type(row.classes)
        if kind == "pure-CF":
            cf += 1
        elif kind == "pure-DF":
            df += 1
        else:
            mixed += 1
        sizes.append(len(row.classes))
    mean, std = _mean_std(sizes)
    return FrequencyRow(project=project, counts=counts, cf=cf, df=df,
                        mixed=mixed, total=len(rows), mean=mean, std=std)


def frequencies(rows: list[LabelRow]) -> FrequencyTable:
    """Class counts and fault-type split per project, plus the overall row."""
    if not rows:
        raise ValueError("no label rows")
    projects = sorted({row.project for row in rows})
    out = [_tally(p, [r for r in rows if r.project == p]) for p in projects]
    out.append(_tally(ALL, rows))
    return FrequencyTable(rows=out)


def percent_partition(rows: list[LabelRow]) -> dict[str, float]:
    """Share of pure control-flow / pure data-flow / mixed faults."""
    table = frequencies(rows)
    overall = table.row(ALL)
    return {
        "pure-CF": percent(overall.cf, overall.total),
        "pure-DF": percent(overall.df, overall.total),
        "mixed": percent(overall.mixed, overall.total),
    }


# --------------------------------------------------------------------------
# Co-occurrence
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CooccurrenceMatrix:
    classes: list[str]
    counts: list[list[int]]  # counts[i][j] = faults in class i and class j

    def count(self, i: int, j: int) -> int:
        return self.counts[i][j]

    def pct(self, i: int, j: int) -> float | None:
        """Row-conditional percentage; None when class i is empty."""
        base = self.counts[i][i]
        if base == 0:
            return None
        return round_half_up(100.0 * self.counts[i][j] / base)


def cooccurrence(rows: list[LabelRow]) -> CooccurrenceMatrix:
    if not rows:
        raise ValueError("no label rows")
    n = len(CLASS_NAMES)
    counts = [[0] * n for _ in range(n)]
    for row in rows:
        flags = [cls in row.classes for cls in CLASS_ORDER]
        for i in range(n):
            if not flags[i]:
                continue
            for j in range(n):
                if flags[j]:
                    counts[i][j] += 1
    return CooccurrenceMatrix(classes=list(CLASS_NAMES), counts=counts)


# --------------------------------------------------------------------------
# Distribution of classes-per-fault
# --------------------------------------------------------------------------


def quartiles(values: list[int | float]) -> tuple[float, float, float]:
    """(Q1, median, Q3): medians of the halves, overall median excluded
    for odd n.  [1, 2, 2, 3] -> (1.5, 2.0, 2.5)."""
    if not values:
        raise ValueError("no values")
    data = sorted(values)
    n = len(data)

    def median(xs) -> float:
        m = len(xs)
        mid = m // 2
        return float(xs[mid]) if m % 2 else (xs[mid - 1] + xs[mid]) / 2.0

    half = n // 2
    lower = data[:half]
    upper = data[n - half:]
    if n == 1:
        return float(data[0]), float(data[0]), float(data[0])
    return median(lower), median(data), median(upper)


@dataclass(frozen=True)
class DistributionRow:
    project: str
    total: int
    minimum: int
    q1: float
    median: float
    q3: float
    maximum: int
    histogram: dict[int, int]  # classes-per-fault -> number of faults


@dataclass(frozen=True)
class Distribution:
    rows: list[DistributionRow]

    def row(self, project: str) -> DistributionRow:
        for r in self.rows:
            if r.project == project:
                return r
        raise KeyError(project)


def _distribution_row(project: str, rows: list[LabelRow]) -> DistributionRow:
    sizes = [len(r.classes) for r in rows]
    q1, med, q3 = quartiles(sizes)
    hist = {k: 0 for k in range(1, len(CLASS_NAMES) + 1)}
    for s in sizes:
        hist[s] += 1
    return DistributionRow(project=project, total=len(rows), minimum=min(sizes),
                           q1=q1, median=med, q3=q3, maximum=max(sizes),
                           histogram=hist)


def distribution(rows: list[LabelRow], by_project: bool = False) -> Distribution:
    """Classes-per-fault five-number summaries and histograms."""
    if not rows:
        raise ValueError("no label rows")
    out = []
    if by_project:
        for p in sorted({row.project for row in rows}):
            out.append(_distribution_row(p, [r for r in rows if r.project == p]))
    out.append(_distribution_row(ALL, rows))
    return Distribution(rows=out)


# --------------------------------------------------------------------------
# Pre-tallied per-project aggregates
# --------------------------------------------------------------------------

AGGREGATE_COLUMNS = (["project", "kloc"] + CLASS_NAMES
                     + ["avg", "std", "cf", "df", "mixed", "total"])


@dataclass(frozen=True)
class ProjectAggregate:
    project: str
    kloc: int
    counts: dict[str, int]
    mean: float
    std: float
    cf: int
    df: int
    mixed: int
    total: int


def read_aggregates(path: str | Path) -> list[ProjectAggregate]:
    """Read a per-project aggregate CSV (no overall row; see `combine`)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise LabelError("cannot read %s: %s" % (path, exc)) from None
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise LabelError("%s: empty aggregate file" % path) from None
    if [h.strip() for h in header] != AGGREGATE_COLUMNS:
        raise LabelError("%s: expected header %s"
                         % (path, ",".join(AGGREGATE_COLUMNS)))
    rows = []
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not c.strip() for c in record):
            continue
        if len(record) != len(AGGREGATE_COLUMNS):
            raise LabelError("%s:%d: expected %d fields, got %d"
                             % (path, lineno, len(AGGREGATE_COLUMNS), len(record)))
        vals = dict(zip(AGGREGATE_COLUMNS, (c.strip() for c in record)))
        try:
            rows.append(ProjectAggregate(
                project=vals["project"],
                kloc=int(vals["kloc"]),
                counts={name: int(vals[name]) for name in CLASS_NAMES},
                mean=float(vals["avg"]),
                std=float(vals["std"]),
                cf=int(vals["cf"]),
                df=int(vals["df"]),
                mixed=int(vals["mixed"]),
                total=int(vals["total"]),
            ))
        except ValueError as exc:
            raise LabelError("%s:%d: %s" % (path, lineno, exc)) from None
    if not rows:
        raise LabelError("%s: no aggregate rows" % path)
    return rows


def combine(aggregates: list[ProjectAggregate]) -> ProjectAggregate:
    """Overall row: integer columns sum; the mean is fault-weighted and the
    std pools per-project second moments (exact up to input rounding)."""
    if not aggregates:
        raise ValueError("no aggregate rows")
    counts = {name: sum(a.counts[name] for a in aggregates) for name in CLASS_NAMES}
    total = sum(a.total for a in aggregates)
    mean = sum(a.mean * a.total for a in aggregates) / total
    second = sum((a.std ** 2 + a.mean ** 2) * a.total for a in aggregates) / total
    std = math.sqrt(max(second - mean ** 2, 0.0))
    return ProjectAggregate(
        project=ALL,
        kloc=sum(a.kloc for a in aggregates),
        counts=counts,
        mean=mean,
        std=std,
        cf=sum(a.cf for a in aggregates),
        df=sum(a.df for a in aggregates),
        mixed=sum(a.mixed for a in aggregates),
        total=total,
    )


def aggregate_partition(overall: ProjectAggregate) -> dict[str, float]:
    return {
        "pure-CF": percent(overall.cf, overall.total),
        "pure-DF": percent(overall.df, overall.total),
        "mixed": percent(overall.mixed, overall.total),
    }


def frequency_table_from_aggregates(aggs: list[ProjectAggregate]) -> FrequencyTable:
    rows = [FrequencyRow(project=a.project, counts=dict(a.counts), cf=a.cf,
                         df=a.df, mixed=a.mixed, total=a.total, mean=a.mean,
                         std=a.std, kloc=a.kloc) for a in aggs]
    overall = combine(aggs)
    rows.append(FrequencyRow(project=overall.project, counts=overall.counts,
                             cf=overall.cf, df=overall.df, mixed=overall.mixed,
                             total=overall.total, mean=overall.mean,
                             std=overall.std, kloc=overall.kloc))
    return FrequencyTable(rows=rows)
