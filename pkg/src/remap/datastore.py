"""Ingestion, validation and indexing of all input time series.

Input formats (all CSV, UTF-8):

* capacity factors (wind/solar): wide format, header
  ``timestamp,AT,BE,...`` with ISO-8601 UTC hourly timestamps,
  values as fractions in [0, 1];
* climate indices: ``date,value`` (daily) or ``year-month,value``
  (monthly);
* prices: long format ``date,country,price_eur_mwh``.

Timestamps are treated as period-beginning. The resulting
``DatasetSnapshot`` is immutable and safe to share across concurrent
readers.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .calendar import CalendarIndex
from .errors import (
    DuplicateDayForCountry,
    DuplicateTimestamp,
    GapInCalendar,
    MalformedRow,
    NonMonotoneDates,
    OutOfRange,
)

_COUNTRY_RE = re.compile(r"^[A-Z]{2}$")


def validate_country_code(code: str) -> str:
    if not _COUNTRY_RE.match(code):
        raise ValueError(f"not a 2-letter uppercase country code: {code!r}")
    return code


class Source(str, enum.Enum):
    WIND = "wind"
    SOLAR = "solar"


class Cadence(str, enum.Enum):
    DAILY = "daily"
    MONTHLY = "monthly"


@dataclass(frozen=True)
class HourlySeries:
    """Hourly capacity factors for one country and one source."""

    country: str
    source: Source
    calendar: CalendarIndex
    values: np.ndarray  # float64, len == calendar.length, all in [0, 1]

    def __post_init__(self):
        validate_country_code(self.country)
        if len(self.values) != self.calendar.length:
            raise ValueError("value vector length does not match calendar")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite capacity factor")
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise ValueError("capacity factor outside [0, 1]")
        self.values.setflags(write=False)


@dataclass(frozen=True)
class IndexSeries:
    """A named climate index at daily or monthly cadence."""

    name: str
    cadence: Cadence
    dates: np.ndarray  # datetime64[D]; first-of-month for monthly cadence
    values: np.ndarray  # float64, finite

    def __post_init__(self):
        if len(self.dates) != len(self.values):
            raise ValueError("dates/values length mismatch")
        if len(self.dates) and np.any(np.diff(self.dates) <= np.timedelta64(0, "D")):
            raise ValueError("index dates not strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite index value")
        self.dates.setflags(write=False)
        self.values.setflags(write=False)


@dataclass(frozen=True)
class PriceSeries:
    """Sparse daily day-ahead prices for one country (EUR/MWh)."""

    country: str
    dates: np.ndarray  # datetime64[D], strictly increasing; gaps allowed
    values: np.ndarray  # float64, finite; negative prices permitted

    def __post_init__(self):
        validate_country_code(self.country)
        if len(self.dates) != len(self.values):
            raise ValueError("dates/values length mismatch")
        if len(self.dates) and np.any(np.diff(self.dates) <= np.timedelta64(0, "D")):
            raise ValueError("price dates not strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite price")
        self.dates.setflags(write=False)
        self.values.setflags(write=False)


@dataclass(frozen=True)
class DatasetSnapshot:
    """Immutable, validated collection of all ingested series."""

    calendar: CalendarIndex
    wind: dict[str, HourlySeries]
    solar: dict[str, HourlySeries] = field(default_factory=dict)
    indices: dict[str, IndexSeries] = field(default_factory=dict)
    prices: dict[str, PriceSeries] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.wind:
            raise ValueError("snapshot requires at least one wind series")
        for s in self.wind.values():
            if s.calendar != self.calendar:
                raise ValueError(f"wind series {s.country} on a different calendar")
        for c, s in self.solar.items():
            if c not in self.wind:
                raise ValueError(f"solar country {c} not present in wind data")
            if s.calendar != self.calendar:
                raise ValueError(f"solar series {c} on a different calendar")

    @property
    def countries(self) -> list[str]:
        return sorted(self.wind)


def _file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


_TS_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})[T ](\d{2})(?::(\d{2})(?::(\d{2}))?)?(?:Z|\+00:00)?$"
)


def _parse_hour(text: str):
    m = _TS_RE.match(text.strip())
    if not m:
        return None
    y, mo, d, h = m.group(1), m.group(2), m.group(3), m.group(4)
    try:
        return np.datetime64(f"{y}-{mo}-{d}T{h}", "h")
    except ValueError:
        return None


def ingest_capacity_factors(path, source: Source) -> dict[str, HourlySeries]:
    """Parse a wide capacity-factor CSV into one series per country column."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRow("empty file", path=path, line=1)
        if len(header) < 2 or header[0].strip() != "timestamp":
            raise MalformedRow(
                "header must be 'timestamp,<CC>,...'", path=path, line=1
            )
        countries = [c.strip() for c in header[1:]]
        for i, c in enumerate(countries):
            if not _COUNTRY_RE.match(c):
                raise MalformedRow(
                    f"bad country code {c!r} in header", path=path, line=1, column=i + 2
                )

        stamps: list[np.datetime64] = []
        columns: list[list[float]] = [[] for _ in countries]
        prev = None
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(countries) + 1:
                raise MalformedRow(
                    f"expected {len(countries) + 1} fields, got {len(row)}",
                    path=path,
                    line=lineno,
                )
            stamp = _parse_hour(row[0])
            if stamp is None:
                raise MalformedRow(
                    f"bad timestamp {row[0]!r}", path=path, line=lineno, column=1
                )
            if prev is not None:
                delta = (stamp - prev) / np.timedelta64(1, "h")
                if delta == 0:
                    raise DuplicateTimestamp(
                        f"timestamp {row[0]} repeated", path=path, line=lineno, column=1
                    )
                if delta != 1:
                    raise GapInCalendar(
                        f"expected {prev + np.timedelta64(1, 'h')}, got {stamp}",
                        path=path,
                        line=lineno,
                        column=1,
                    )
            prev = stamp
            stamps.append(stamp)
            for i, cell in enumerate(row[1:]):
                try:
                    v = float(cell)
                except ValueError:
                    raise MalformedRow(
                        f"bad value {cell!r}", path=path, line=lineno, column=i + 2
                    )
                if not np.isfinite(v):
                    raise MalformedRow(
                        f"non-finite value {cell!r}", path=path, line=lineno, column=i + 2
                    )
                if v < 0.0 or v > 1.0:
                    raise OutOfRange(
                        f"capacity factor {v} outside [0, 1]",
                        path=path,
                        line=lineno,
                        column=i + 2,
                    )
                columns[i].append(v)

    if not stamps:
        raise MalformedRow("no data rows", path=path, line=2)
    cal = CalendarIndex(stamps[0], len(stamps))
    return {
        c: HourlySeries(c, source, cal, np.asarray(columns[i], dtype=np.float64))
        for i, c in enumerate(countries)
    }


_DAY_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_MONTH_RE = re.compile(r"^\d{4}-\d{2}$")


def ingest_climate_index(path, name: str, cadence: Cadence) -> IndexSeries:
    """Parse a two-column (date-or-month, value) CSV into an IndexSeries."""
    path = Path(path)
    cadence = Cadence(cadence)
    dates: list[np.datetime64] = []
    values: list[float] = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and not row[0].strip()[0].isdigit():
                continue  # optional header
            if len(row) != 2:
                raise MalformedRow("expected 2 fields", path=path, line=lineno)
            key = row[0].strip()
            if cadence is Cadence.DAILY:
                if not _DAY_RE.match(key):
                    raise MalformedRow(
                        f"bad date {key!r}", path=path, line=lineno, column=1
                    )
                day = np.datetime64(key, "D")
            else:
                if not _MONTH_RE.match(key):
                    raise MalformedRow(
                        f"bad year-month {key!r}", path=path, line=lineno, column=1
                    )
                day = np.datetime64(key + "-01", "D")
            try:
                v = float(row[1])
            except ValueError:
                raise MalformedRow(
                    f"bad value {row[1]!r}", path=path, line=lineno, column=2
                )
            if not np.isfinite(v):
                raise MalformedRow(
                    f"non-finite value {row[1]!r}", path=path, line=lineno, column=2
                )
            if dates and day <= dates[-1]:
                raise NonMonotoneDates(
                    f"{key} not after previous date", path=path, line=lineno, column=1
                )
            dates.append(day)
            values.append(v)
    return IndexSeries(
        name,
        cadence,
        np.asarray(dates, dtype="datetime64[D]"),
        np.asarray(values, dtype=np.float64),
    )


def ingest_prices(path) -> dict[str, PriceSeries]:
    """Parse a long-format (date, country, price) CSV into per-country series."""
    path = Path(path)
    per_country: dict[str, list[tuple[np.datetime64, float]]] = {}
    seen: set[tuple[str, str]] = set()
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and not row[0].strip()[0].isdigit():
                continue  # optional header
            if len(row) != 3:
                raise MalformedRow("expected 3 fields", path=path, line=lineno)
            day_s, country, price_s = (x.strip() for x in row)
            if not _DAY_RE.match(day_s):
                raise MalformedRow(
                    f"bad date {day_s!r}", path=path, line=lineno, column=1
                )
            if not _COUNTRY_RE.match(country):
                raise MalformedRow(
                    f"bad country {country!r}", path=path, line=lineno, column=2
                )
            try:
                price = float(price_s)
            except ValueError:
                raise MalformedRow(
                    f"bad price {price_s!r}", path=path, line=lineno, column=3
                )
            if not np.isfinite(price):
                raise MalformedRow(
                    f"non-finite price {price_s!r}", path=path, line=lineno, column=3
                )
            if (day_s, country) in seen:
                raise DuplicateDayForCountry(
                    f"({day_s}, {country}) appears twice", path=path, line=lineno
                )
            seen.add((day_s, country))
            per_country.setdefault(country, []).append(
                (np.datetime64(day_s, "D"), price)
            )

    out: dict[str, PriceSeries] = {}
    for country, rows in per_country.items():
        rows.sort(key=lambda t: t[0])
        out[country] = PriceSeries(
            country,
            np.asarray([r[0] for r in rows], dtype="datetime64[D]"),
            np.asarray([r[1] for r in rows], dtype=np.float64),
        )
    return out


class ResampleUnit(str, enum.Enum):
    DAY = "day"
    MONTH = "month"
    YEAR = "year"


def resample(series: HourlySeries, unit: ResampleUnit) -> list[tuple[str, float]]:
    """Arithmetic mean of the hourly values in each calendar period (UTC)."""
    unit = ResampleUnit(unit)
    cal = series.calendar
    if unit is ResampleUnit.DAY:
        labels = cal.days
    elif unit is ResampleUnit.MONTH:
        labels = cal.months
    else:
        labels = cal.hours.astype("datetime64[Y]")
    periods, starts, counts = np.unique(labels, return_index=True, return_counts=True)
    sums = np.add.reduceat(series.values, starts)
    means = sums / counts
    return [(str(p), float(m)) for p, m in zip(periods, means)]


def build_snapshot(
    wind: dict[str, HourlySeries],
    solar: dict[str, HourlySeries] | None = None,
    indices: dict[str, IndexSeries] | None = None,
    prices: dict[str, PriceSeries] | None = None,
    source_digests: dict[str, str] | None = None,
) -> DatasetSnapshot:
    calendar = next(iter(wind.values())).calendar
    provenance = {
        "ingested_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "sources": source_digests or {},
    }
    return DatasetSnapshot(
        calendar=calendar,
        wind=wind,
        solar=solar or {},
        indices=indices or {},
        prices=prices or {},
        provenance=provenance,
    )


def ingest_all(
    wind_path,
    solar_path=None,
    index_specs: list[tuple[str, str, Cadence]] | None = None,
    prices_path=None,
) -> DatasetSnapshot:
    """Full ingestion entry point. ``index_specs`` is (path, name, cadence)."""
    digests = {str(wind_path): _file_digest(wind_path)}
    wind = ingest_capacity_factors(wind_path, Source.WIND)
    solar = {}
    if solar_path is not None:
        digests[str(solar_path)] = _file_digest(solar_path)
        solar = ingest_capacity_factors(solar_path, Source.SOLAR)
    indices = {}
    for p, name, cadence in index_specs or []:
        digests[str(p)] = _file_digest(p)
        indices[name] = ingest_climate_index(p, name, cadence)
    prices = {}
    if prices_path is not None:
        digests[str(prices_path)] = _file_digest(prices_path)
        prices = ingest_prices(prices_path)
    return build_snapshot(wind, solar, indices, prices, digests)
