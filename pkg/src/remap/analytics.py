"""Aggregates behind the choropleth, profile, range, cumulative and YoY views.

All operations are pure, read-only functions over a ``DatasetSnapshot``.
Reduction order is fixed (region members in their given order, hours in
calendar order) so results are deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .datastore import DatasetSnapshot, HourlySeries
from .errors import EmptyFilter, MissingSolar, UnknownCountry, YearOutOfRange

AGGREGATE_ALL = "28C"  # label for the everything-selected aggregate


@dataclass(frozen=True)
class MixWeights:
    """Wind/solar blend weights on the unit simplex."""

    w_wind: float = 1.0
    w_solar: float = 0.0

    def __post_init__(self):
        if self.w_wind < 0 or self.w_solar < 0:
            raise ValueError("weights must be non-negative")
        if abs(self.w_wind + self.w_solar - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")

    @classmethod
    def from_wind(cls, w_wind: float) -> "MixWeights":
        return cls(w_wind, 1.0 - w_wind)


@dataclass(frozen=True)
class Region:
    """Non-empty ordered set of country codes, validated against a snapshot."""

    countries: tuple[str, ...]

    def __post_init__(self):
        if not self.countries:
            raise ValueError("region must contain at least one country")
        if len(set(self.countries)) != len(self.countries):
            raise ValueError("duplicate country in region")

    def label(self, snapshot: DatasetSnapshot) -> str:
        if set(self.countries) == set(snapshot.countries):
            return AGGREGATE_ALL
        return "+".join(self.countries)


class Resolution(str, enum.Enum):
    HOURLY = "hourly"
    MONTHLY = "monthly"
    YEARLY = "yearly"


class RangeMode(str, enum.Enum):
    INTRAYEAR = "intrayear"
    INTRADAY = "intraday"


class Stat(str, enum.Enum):
    MEAN = "mean"
    STD = "std"


_RES_BOUNDS = {Resolution.HOURLY: (0, 23), Resolution.MONTHLY: (1, 12)}


@dataclass(frozen=True)
class TimeFilter:
    """Inclusive unit bounds at one resolution (hours 0-23, months 1-12, years)."""

    resolution: Resolution
    unit_from: int
    unit_to: int

    def __post_init__(self):
        if self.unit_from > self.unit_to:
            raise ValueError("unit_from must be <= unit_to")
        if self.resolution in _RES_BOUNDS:
            lo, hi = _RES_BOUNDS[self.resolution]
            if self.unit_from < lo or self.unit_to > hi:
                raise ValueError(
                    f"{self.resolution.value} bounds must lie in [{lo}, {hi}]"
                )


@dataclass(frozen=True)
class ProfileResult:
    """Per-unit mean capacity factors for one or more regions."""

    resolution: Resolution
    labels: list[int]
    series: dict[str, list[float]]  # region label -> values, one per label


def require_country(snapshot: DatasetSnapshot, country: str) -> None:
    if country not in snapshot.wind:
        raise UnknownCountry(f"country {country} not in snapshot")


def require_year(snapshot: DatasetSnapshot, year: int) -> None:
    if not snapshot.calendar.contains_year(year):
        raise YearOutOfRange(
            f"year {year} outside span "
            f"{snapshot.calendar.first_year}-{snapshot.calendar.last_year}"
        )


def blended_values(
    snapshot: DatasetSnapshot, country: str, weights: MixWeights
) -> np.ndarray:
    require_country(snapshot, country)
    wind = snapshot.wind[country].values
    if weights.w_solar == 0.0:
        return wind
    if country not in snapshot.solar:
        raise MissingSolar(f"no solar series for {country}")
    solar = snapshot.solar[country].values
    out = weights.w_wind * wind + weights.w_solar * solar
    np.clip(out, 0.0, 1.0, out=out)
    return out


def blended_series(
    snapshot: DatasetSnapshot, country: str, weights: MixWeights
) -> HourlySeries:
    if weights.w_solar == 0.0:
        require_country(snapshot, country)
        return snapshot.wind[country]
    values = blended_values(snapshot, country, weights)
    return HourlySeries(
        country, snapshot.wind[country].source, snapshot.calendar, values
    )


def region_values(
    snapshot: DatasetSnapshot, region: Region, weights: MixWeights
) -> np.ndarray:
    """Unweighted per-hour mean of the member countries' blended series."""
    members = [blended_values(snapshot, c, weights) for c in region.countries]
    if len(members) == 1:
        return members[0]
    # sequential accumulation in member order: deterministic reduction
    acc = members[0].astype(np.float64, copy=True)
    for m in members[1:]:
        acc += m
    acc /= len(members)
    return acc


def region_series(
    snapshot: DatasetSnapshot, region: Region, weights: MixWeights
) -> HourlySeries:
    if len(region.countries) == 1:
        return blended_series(snapshot, region.countries[0], weights)
    values = region_values(snapshot, region, weights)
    np.clip(values, 0.0, 1.0, out=values)
    return HourlySeries(
        region.countries[0], snapshot.wind[region.countries[0]].source,
        snapshot.calendar, values,
    )


def _hour_of_day_means(values: np.ndarray, hod: np.ndarray) -> np.ndarray:
    sums = np.bincount(hod, weights=values, minlength=24)
    counts = np.bincount(hod, minlength=24)
    return sums / counts


def _month_of_year_means(values: np.ndarray, moy: np.ndarray) -> np.ndarray:
    sums = np.bincount(moy - 1, weights=values, minlength=12)
    counts = np.bincount(moy - 1, minlength=12)
    return sums / counts


def _yearly_means(
    values: np.ndarray, years: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    uniq, starts, counts = np.unique(years, return_index=True, return_counts=True)
    return uniq, np.add.reduceat(values, starts) / counts


def _unit_profile(
    snapshot: DatasetSnapshot, values: np.ndarray, resolution: Resolution
) -> tuple[np.ndarray, np.ndarray]:
    """Full-period per-unit means: (unit labels, means)."""
    cal = snapshot.calendar
    if resolution is Resolution.HOURLY:
        units = np.arange(24)
        sums = np.bincount(cal.hour_of_day, weights=values, minlength=24)
        counts = np.bincount(cal.hour_of_day, minlength=24)
    elif resolution is Resolution.MONTHLY:
        units = np.arange(1, 13)
        sums = np.bincount(cal.month_of_year - 1, weights=values, minlength=12)
        counts = np.bincount(cal.month_of_year - 1, minlength=12)
    else:
        return _yearly_means(values, cal.years)
    present = counts > 0  # short calendars may not touch every unit
    return units[present], sums[present] / counts[present]


def _filter_units(
    units: np.ndarray, means: np.ndarray, flt: TimeFilter
) -> tuple[np.ndarray, np.ndarray]:
    mask = (units >= flt.unit_from) & (units <= flt.unit_to)
    if not mask.any():
        raise EmptyFilter(
            f"filter [{flt.unit_from}, {flt.unit_to}] selects no "
            f"{flt.resolution.value} units"
        )
    return units[mask], means[mask]


def spatial_stat(
    snapshot: DatasetSnapshot,
    stat: Stat,
    flt: TimeFilter,
    weights: MixWeights = MixWeights(),
) -> dict[str, float]:
    """Per-country mean or population std of the filtered per-unit means.

    For hourly/monthly resolution the per-unit means always span the
    whole period; the year bounds only apply at yearly resolution.
    """
    stat = Stat(stat)
    out: dict[str, float] = {}
    for country in snapshot.countries:
        values = blended_values(snapshot, country, weights)
        units, means = _unit_profile(snapshot, values, flt.resolution)
        _, selected = _filter_units(units, means, flt)
        if stat is Stat.MEAN:
            out[country] = float(np.mean(selected))
        else:
            out[country] = float(np.std(selected))  # population convention
    return out


def temporal_profile(
    snapshot: DatasetSnapshot,
    regions: list[Region],
    flt: TimeFilter,
    weights: MixWeights = MixWeights(),
) -> ProfileResult:
    """Per-region hour-of-day, month-of-year or per-year mean profiles."""
    if not regions:
        raise ValueError("at least one region required")
    labels: list[int] | None = None
    series: dict[str, list[float]] = {}
    for region in regions:
        values = region_values(snapshot, region, weights)
        units, means = _unit_profile(snapshot, values, flt.resolution)
        units, means = _filter_units(units, means, flt)
        if labels is None:
            labels = [int(u) for u in units]
        series[region.label(snapshot)] = [float(m) for m in means]
    return ProfileResult(flt.resolution, labels, series)


def _year_profile(
    snapshot: DatasetSnapshot, values: np.ndarray, mode: RangeMode, year: int
) -> np.ndarray:
    """12 monthly means or 24 hour-of-day means of one year."""
    sl = snapshot.calendar.year_hour_slice(year)
    vals = values[sl]
    if mode is RangeMode.INTRADAY:
        return _hour_of_day_means(vals, snapshot.calendar.hour_of_day[sl])
    return _month_of_year_means(vals, snapshot.calendar.month_of_year[sl])


def _resolve_countries(
    snapshot: DatasetSnapshot, countries: list[str] | None
) -> list[str]:
    if not countries:
        return snapshot.countries
    for c in countries:
        require_country(snapshot, c)
    return list(countries)


def variation_range(
    snapshot: DatasetSnapshot,
    mode: RangeMode,
    year: int,
    countries: list[str] | None = None,
    weights: MixWeights = MixWeights(),
) -> list[tuple[str, float]]:
    """Max minus min of the year's monthly (or hour-of-day) mean profile.

    Returns (label, value) pairs in ascending value order (ties broken by
    code), with the selected-region aggregate appended last.
    """
    mode = RangeMode(mode)
    require_year(snapshot, year)
    selected = _resolve_countries(snapshot, countries)
    entries = []
    for c in selected:
        profile = _year_profile(
            snapshot, blended_values(snapshot, c, weights), mode, year
        )
        entries.append((c, float(profile.max() - profile.min())))
    entries.sort(key=lambda e: (e[1], e[0]))
    region = Region(tuple(selected))
    agg_profile = _year_profile(
        snapshot, region_values(snapshot, region, weights), mode, year
    )
    entries.append((region.label(snapshot), float(agg_profile.max() - agg_profile.min())))
    return entries


def min_mean_max(
    snapshot: DatasetSnapshot,
    mode: RangeMode,
    year: int,
    countries: list[str] | None = None,
    weights: MixWeights = MixWeights(),
) -> list[tuple[str, float, float, float]]:
    """Per-country (min, mean, max) of the year's profile, ordered by mean."""
    mode = RangeMode(mode)
    require_year(snapshot, year)
    selected = _resolve_countries(snapshot, countries)
    entries = []
    for c in selected:
        profile = _year_profile(
            snapshot, blended_values(snapshot, c, weights), mode, year
        )
        entries.append(
            (c, float(profile.min()), float(profile.mean()), float(profile.max()))
        )
    entries.sort(key=lambda e: (e[2], e[0]))
    return entries


DEFAULT_THRESHOLD_GRID = [round(i * 0.01, 2) for i in range(101)]


def daily_means(
    snapshot: DatasetSnapshot, values: np.ndarray, year: int
) -> np.ndarray:
    """Per-day mean of an hourly vector restricted to one year."""
    sl = snapshot.calendar.year_hour_slice(year)
    vals = values[sl]
    days = snapshot.calendar.days[sl]
    _, starts, counts = np.unique(days, return_index=True, return_counts=True)
    return np.add.reduceat(vals, starts) / counts


def _cumulative_curve(daily: np.ndarray, thresholds: list[float]) -> list[float]:
    # strict inequality: fraction of days with CF > t
    sorted_daily = np.sort(daily)
    n = len(sorted_daily)
    counts = n - np.searchsorted(sorted_daily, thresholds, side="right")
    return [float(c) / n for c in counts]


def cumulative_days_above(
    snapshot: DatasetSnapshot,
    countries: list[str] | None,
    year: int,
    thresholds: list[float] | None = None,
    weights: MixWeights = MixWeights(),
) -> tuple[list[float], dict[str, list[float]]]:
    """Fraction of the year's days whose daily-mean CF exceeds each threshold.

    Returns (thresholds, curves). With zero or several selected countries
    the region-aggregate curve is included under its label.
    """
    require_year(snapshot, year)
    if thresholds is None:
        thresholds = DEFAULT_THRESHOLD_GRID
    if any(t < 0 or t > 1 for t in thresholds) or any(
        a >= b for a, b in zip(thresholds, thresholds[1:])
    ):
        raise ValueError("thresholds must be ascending within [0, 1]")
    selected = _resolve_countries(snapshot, countries)
    curves: dict[str, list[float]] = {}
    for c in selected:
        daily = daily_means(snapshot, blended_values(snapshot, c, weights), year)
        curves[c] = _cumulative_curve(daily, thresholds)
    if len(selected) != 1:
        region = Region(tuple(selected))
        daily = daily_means(snapshot, region_values(snapshot, region, weights), year)
        curves[region.label(snapshot)] = _cumulative_curve(daily, thresholds)
    return list(thresholds), curves


def yoy_monthly(
    snapshot: DatasetSnapshot,
    countries: list[str] | None,
    focus_year: int,
    weights: MixWeights = MixWeights(),
) -> dict:
    """12 monthly means for the focus year plus one 12-vector per other year.

    Multi-country selections collapse to the single region-aggregate line.
    """
    require_year(snapshot, focus_year)
    selected = _resolve_countries(snapshot, countries)
    region = Region(tuple(selected))
    values = region_values(snapshot, region, weights)
    cal = snapshot.calendar
    focus = [
        float(v)
        for v in _month_of_year_means(
            values[cal.year_hour_slice(focus_year)],
            cal.month_of_year[cal.year_hour_slice(focus_year)],
        )
    ]
    background = []
    for year in range(cal.first_year, cal.last_year + 1):
        if year == focus_year:
            continue
        sl = cal.year_hour_slice(year)
        background.append(
            {
                "year": year,
                "values": [
                    float(v)
                    for v in _month_of_year_means(values[sl], cal.month_of_year[sl])
                ],
            }
        )
    return {
        "region": region.label(snapshot),
        "focus_year": focus_year,
        "focus": focus,
        "background": background,
    }
