"""Low-wind-power event detection, calendars, correlation maps and overlays.

An LWP day is a day whose daily-mean region capacity factor is strictly
below the threshold (default 0.10); an event is a maximal run of
consecutive LWP days. Events are computed within the selected year and
clipped at its boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytics import (
    MixWeights,
    Region,
    blended_values,
    daily_means,
    region_values,
    require_country,
    require_year,
)
from .calendar import days_in_year
from .datastore import Cadence, DatasetSnapshot
from .errors import (
    DegenerateInput,
    IndexYearMissing,
    NoPriceData,
    UnknownIndex,
)
from .stats import (
    DEFAULT_ALPHA,
    CorrelationEntry,
    correlate,
    significance_filter,
)

DEFAULT_THRESHOLD = 0.10
DEFAULT_D_MAX = 10


@dataclass(frozen=True)
class LwpThreshold:
    value: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not 0.0 < self.value < 1.0:
            raise ValueError(f"threshold must be in (0, 1), got {self.value}")


@dataclass(frozen=True)
class LwpEvent:
    """One uninterrupted run of LWP days within the analysis window."""

    start_offset: int  # day index within the window, 0-based
    duration_days: int
    start_date: str | None = None  # ISO date when the window start is known


@dataclass(frozen=True)
class CalendarMask:
    """One boolean per day of the year; True marks an LWP day."""

    year: int
    flags: list[bool]

    def __post_init__(self):
        if len(self.flags) != days_in_year(self.year):
            raise ValueError(
                f"mask length {len(self.flags)} does not match year {self.year}"
            )


def daily_cf(
    snapshot: DatasetSnapshot,
    region: Region,
    year: int,
    weights: MixWeights = MixWeights(),
) -> np.ndarray:
    """Per-day mean of the region's hourly series over one year."""
    require_year(snapshot, year)
    return daily_means(snapshot, region_values(snapshot, region, weights), year)


def detect_lwp_events(
    daily: np.ndarray,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    window_start: np.datetime64 | None = None,
) -> list[LwpEvent]:
    """Maximal runs of consecutive days with value strictly below threshold."""
    t = threshold.value if isinstance(threshold, LwpThreshold) else LwpThreshold(threshold).value
    below = np.asarray(daily) < t
    padded = np.concatenate(([False], below, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    events = []
    for s, e in zip(starts, ends):
        date = None
        if window_start is not None:
            date = str(np.datetime64(window_start, "D") + np.timedelta64(int(s), "D"))
        events.append(LwpEvent(int(s), int(e - s), date))
    return events


def events_by_min_duration(events: list[LwpEvent], d_max: int) -> list[int]:
    """counts[d-1] = number of events lasting at least d days, d = 1..d_max."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    counts = [0] * d_max
    for ev in events:
        for d in range(1, min(ev.duration_days, d_max) + 1):
            counts[d - 1] += 1
    return counts


def _window_start(snapshot: DatasetSnapshot, year: int) -> np.datetime64:
    return np.datetime64(f"{year}-01-01", "D")


def lwp_summary(
    snapshot: DatasetSnapshot,
    countries: list[str],
    year: int,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    weights: MixWeights = MixWeights(),
) -> dict:
    """Duration-count vectors per country plus the region aggregate.

    d_max defaults to 10 and stretches to the longest observed event.
    """
    if not countries:
        raise ValueError("at least one country required")
    require_year(snapshot, year)
    start = _window_start(snapshot, year)
    per_country_events = {}
    for c in countries:
        daily = daily_means(snapshot, blended_values(snapshot, c, weights), year)
        per_country_events[c] = detect_lwp_events(daily, threshold, start)
    region = Region(tuple(countries))
    region_events = detect_lwp_events(
        daily_cf(snapshot, region, year, weights), threshold, start
    )
    longest = max(
        (ev.duration_days for evs in per_country_events.values() for ev in evs),
        default=0,
    )
    longest = max(longest, max((ev.duration_days for ev in region_events), default=0))
    d_max = max(DEFAULT_D_MAX, longest)
    return {
        "year": year,
        "d_max": d_max,
        "durations": list(range(1, d_max + 1)),
        "per_country": {
            c: events_by_min_duration(evs, d_max)
            for c, evs in per_country_events.items()
        },
        "region_label": region.label(snapshot),
        "region": events_by_min_duration(region_events, d_max),
    }


def lwp_calendar(
    snapshot: DatasetSnapshot,
    countries: list[str],
    year: int,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    weights: MixWeights = MixWeights(),
) -> CalendarMask:
    """Boolean LWP-day mask of the selected region for one year."""
    if not countries:
        raise ValueError("at least one country required")
    t = threshold.value if isinstance(threshold, LwpThreshold) else LwpThreshold(threshold).value
    daily = daily_cf(snapshot, Region(tuple(countries)), year, weights)
    return CalendarMask(year, [bool(v) for v in (daily < t)])


def _full_period_daily(snapshot: DatasetSnapshot, values: np.ndarray) -> np.ndarray:
    cal = snapshot.calendar
    return np.add.reduceat(values, cal.day_starts) / cal.day_counts


def correlation_map(
    snapshot: DatasetSnapshot,
    focus: str,
    basis: str,
    alpha: float = DEFAULT_ALPHA,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    weights: MixWeights = MixWeights(),
) -> dict[str, CorrelationEntry]:
    """Correlation of every other country against the focus country.

    basis 'lwp_days': Pearson over full-period daily 0/1 LWP indicators;
    basis 'capacity_factor': Pearson over full-period daily CF values.
    Countries with a constant basis vector (e.g. zero LWP days) yield an
    undefined entry instead of failing the whole map.
    """
    if basis not in ("lwp_days", "capacity_factor"):
        raise ValueError(f"unknown basis {basis!r}")
    require_country(snapshot, focus)
    t = threshold.value if isinstance(threshold, LwpThreshold) else LwpThreshold(threshold).value

    def basis_vector(country: str) -> np.ndarray:
        daily = _full_period_daily(snapshot, blended_values(snapshot, country, weights))
        if basis == "lwp_days":
            return (daily < t).astype(np.float64)
        return daily

    focus_vec = basis_vector(focus)
    entries: dict[str, CorrelationEntry] = {}
    for c in snapshot.countries:
        if c == focus:
            continue
        try:
            entries[c] = correlate(focus_vec, basis_vector(c))
        except DegenerateInput as e:
            entries[c] = CorrelationEntry(
                r=None, p=None, n=len(focus_vec), reason=str(e)
            )
    return significance_filter(entries, alpha)


def index_overlay(
    snapshot: DatasetSnapshot,
    index_name: str,
    country: str,
    year: int,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    weights: MixWeights = MixWeights(),
) -> list[dict]:
    """Index values for one year with LWP-day flags for the given country.

    Daily indices align by date; monthly indices are forward-filled to
    days (each day takes the latest value at or before it).
    """
    if index_name not in snapshot.indices:
        raise UnknownIndex(f"index {index_name!r} not ingested")
    require_country(snapshot, country)
    require_year(snapshot, year)
    series = snapshot.indices[index_name]
    mask = lwp_calendar(snapshot, [country], year, threshold, weights)
    year_start = _window_start(snapshot, year)
    n_days = days_in_year(year)
    day_grid = year_start + np.arange(n_days, dtype="timedelta64[D]")

    points = []
    if series.cadence is Cadence.DAILY:
        pos = np.searchsorted(series.dates, day_grid)
        for i, day in enumerate(day_grid):
            j = pos[i]
            if j < len(series.dates) and series.dates[j] == day:
                points.append(
                    {
                        "date": str(day),
                        "value": float(series.values[j]),
                        "is_lwp_day": mask.flags[i],
                    }
                )
    else:
        # forward fill: latest index value at or before each day
        pos = np.searchsorted(series.dates, day_grid, side="right") - 1
        for i, day in enumerate(day_grid):
            j = pos[i]
            # refuse to forward-fill across more than a year of staleness
            if j < 0 or day - series.dates[j] > np.timedelta64(366, "D"):
                continue
            points.append(
                {
                    "date": str(day),
                    "value": float(series.values[j]),
                    "is_lwp_day": mask.flags[i],
                }
            )
    if not points:
        raise IndexYearMissing(f"index {index_name!r} has no data for {year}")
    return points


def price_overlay(
    snapshot: DatasetSnapshot,
    country: str,
    year: int,
    threshold: LwpThreshold | float = DEFAULT_THRESHOLD,
    weights: MixWeights = MixWeights(),
) -> tuple[list[dict], CorrelationEntry]:
    """Daily prices with LWP flags plus the CF/price correlation.

    Days without a price are omitted from both the overlay and the
    correlation sample.
    """
    require_country(snapshot, country)
    require_year(snapshot, year)
    if country not in snapshot.prices:
        raise NoPriceData(f"no price data for {country}")
    prices = snapshot.prices[country]
    mask = lwp_calendar(snapshot, [country], year, threshold, weights)
    daily = daily_cf(snapshot, Region((country,)), year, weights)
    year_start = _window_start(snapshot, year)
    n_days = days_in_year(year)

    offsets = ((prices.dates - year_start) / np.timedelta64(1, "D")).astype(np.int64)
    in_year = (offsets >= 0) & (offsets < n_days)
    points = []
    cf_sample, price_sample = [], []
    for j in np.flatnonzero(in_year):
        i = int(offsets[j])
        points.append(
            {
                "date": str(prices.dates[j]),
                "price_eur_mwh": float(prices.values[j]),
                "is_lwp_day": mask.flags[i],
            }
        )
        cf_sample.append(float(daily[i]))
        price_sample.append(float(prices.values[j]))
    if not points:
        raise NoPriceData(f"price data for {country} does not overlap {year}")
    try:
        entry = correlate(cf_sample, price_sample)
    except DegenerateInput as e:
        entry = CorrelationEntry(r=None, p=None, n=len(cf_sample), reason=str(e))
    return points, entry
