"""Load the quarterly premium/GDP dataset and turn it into penetration rates.

The insurance penetration rate (IPR) is gross premium divided by GDP for the
same quarter, a dimensionless rate. Rates are always computed from the raw
premium and GDP columns — the pre-rounded percentage columns some files carry
are ignored (quotient precision beats four-decimal rounding).

A quarterly Ghana dataset (2013 Q1 - 2022 Q3) ships with the package; see
:func:`fixture_path`. Its source printed the last row's label as "2023_Q3",
an obvious typo for 2022_Q3; the bundled file keeps the verbatim label in a
`year_quarter_source` column and the corrected label in `year_quarter`.
"""

import csv
import re
import warnings
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources

from .errors import (
    DuplicatePeriodError,
    EmptyInputError,
    MalformedRowError,
    PeriodGapError,
)
from .series import TimeSeries

__all__ = [
    "PremiumRecord",
    "compute_ipr",
    "load_csv",
    "to_timeseries",
    "fixture_path",
    "load_fixture",
]

_COLUMNS = ("year_quarter", "life_premium", "nonlife_premium",
            "total_premium", "gdp")

_QUARTER_RE = re.compile(r"^(\d{4})_Q([1-4])$", re.IGNORECASE)


@dataclass(frozen=True)
class PremiumRecord:
    """One quarter of gross premiums and GDP, all in the same currency."""

    year: int
    quarter: int
    life_premium: float
    nonlife_premium: float
    total_premium: float
    gdp: float

    def __post_init__(self):
        if not 1 <= self.quarter <= 4:
            raise ValueError(f"quarter must be 1..4, got {self.quarter}")
        if self.gdp <= 0:
            raise ValueError(f"gdp must be positive, got {self.gdp}")

    @property
    def label(self):
        return f"{self.year}_Q{self.quarter}"


def compute_ipr(record, component="total"):
    """Penetration rate for one record: selected premium / GDP.

    Parameters
    ----------
    record : PremiumRecord
    component : {"total", "life", "nonlife"}
    """
    premium = {
        "total": record.total_premium,
        "life": record.life_premium,
        "nonlife": record.nonlife_premium,
    }.get(component)
    if premium is None:
        raise ValueError(f"unknown component {component!r}")
    return premium / record.gdp


def _parse_number(text, line_no, column):
    """Parse a currency/number cell: thousands separators and a trailing
    percent sign are accepted. Values go through Decimal exactly once."""
    cleaned = text.strip().replace(",", "")
    if cleaned.endswith("%"):
        cleaned = cleaned[:-1]
    try:
        return float(Decimal(cleaned))
    except InvalidOperation:
        raise MalformedRowError(
            f"line {line_no}, column {column!r}: cannot parse number {text!r}"
        ) from None


def _parse_label(text, line_no, column):
    m = _QUARTER_RE.match(text.strip())
    if m is None:
        raise MalformedRowError(
            f"line {line_no}, column {column!r}: expected a YYYY_Qn label, "
            f"got {text!r}"
        )
    return int(m.group(1)), int(m.group(2))


def _next_quarter(year, quarter):
    return (year, quarter + 1) if quarter < 4 else (year + 1, 1)


def _check_contiguous(periods):
    """Raise on duplicates or gaps; `periods` is a list of (year, quarter)."""
    seen = set()
    for period in periods:
        if period in seen:
            raise DuplicatePeriodError(
                f"duplicate quarter {period[0]}_Q{period[1]}"
            )
        seen.add(period)
    for prev, curr in zip(periods, periods[1:]):
        expected = _next_quarter(*prev)
        if curr != expected:
            missing = []
            step = expected
            while step != curr and len(missing) < 64:
                missing.append(f"{step[0]}_Q{step[1]}")
                step = _next_quarter(*step)
            raise PeriodGapError(
                "quarters are not contiguous; missing " + ", ".join(missing)
            )


def load_csv(path, schema=None):
    """Read premium records from a CSV file.

    Parameters
    ----------
    path : str or os.PathLike
    schema : mapping, optional
        Maps the logical column names (year_quarter, life_premium,
        nonlife_premium, total_premium, gdp) to the file's header names.
        Header matching is case-insensitive. Extra columns (e.g. pre-computed
        percentages) are ignored.

    Returns
    -------
    list of PremiumRecord, in file order (validated contiguous and ascending).
    """
    schema = dict(schema or {})
    wanted = {name: schema.get(name, name).lower() for name in _COLUMNS}

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInputError(f"{path}: file is empty") from None
        lookup = {name.strip().lower(): i for i, name in enumerate(header)}
        indices = {}
        for logical, actual in wanted.items():
            if actual not in lookup:
                raise MalformedRowError(
                    f"{path}: missing required column {actual!r}"
                )
            indices[logical] = lookup[actual]

        records = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < len(header):
                raise MalformedRowError(
                    f"line {line_no}: expected {len(header)} cells, "
                    f"got {len(row)}"
                )
            year, quarter = _parse_label(
                row[indices["year_quarter"]], line_no, "year_quarter")
            numbers = {
                name: _parse_number(row[indices[name]], line_no, name)
                for name in _COLUMNS[1:]
            }
            record = PremiumRecord(year=year, quarter=quarter, **numbers)
            parts = record.life_premium + record.nonlife_premium
            if parts > 0 and abs(record.total_premium - parts) > 1e-3 * parts:
                warnings.warn(
                    f"{record.label}: total premium differs from "
                    f"life+nonlife by more than 0.1%", stacklevel=2)
            records.append(record)

    if not records:
        raise EmptyInputError(f"{path}: no data rows")
    _check_contiguous([(r.year, r.quarter) for r in records])
    return records


def to_timeseries(records, component="total"):
    """Penetration-rate TimeSeries (frequency 4) from contiguous records."""
    records = list(records)
    if not records:
        raise EmptyInputError("no records")
    _check_contiguous([(r.year, r.quarter) for r in records])
    values = tuple(compute_ipr(r, component) for r in records)
    start = (records[0].year, records[0].quarter)
    return TimeSeries(values, start, frequency=4)


def fixture_path():
    """Filesystem path of the bundled Ghana dataset."""
    return resources.files("iprkit.data").joinpath("ghana_ipr.csv")


def load_fixture(component="total"):
    """The bundled Ghana penetration-rate series (39 quarters from 2013 Q1)."""
    return to_timeseries(load_csv(fixture_path()), component)
