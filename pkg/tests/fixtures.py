"""Deterministic synthetic fixtures.

The main fixture snapshot covers 3 countries over 2 full years
(1984-1985, leap year first) at hourly resolution. Values come from a
seeded generator combining a diurnal sine, a seasonal sine and small
seeded noise, so every aggregate can be recomputed independently by the
brute-force oracle.
"""

from __future__ import annotations

import math

import numpy as np

from remap.calendar import CalendarIndex
from remap.datastore import (
    Cadence,
    DatasetSnapshot,
    HourlySeries,
    IndexSeries,
    PriceSeries,
    Source,
    build_snapshot,
)

FIRST_YEAR = 1984
LAST_YEAR = 1985

COUNTRY_PARAMS = {
    # code: (base, diurnal amp, seasonal amp, phase)
    "AA": (0.30, 0.08, 0.15, 0.0),
    "BB": (0.45, 0.05, 0.10, 2.1),
    "CC": (0.20, 0.10, 0.12, 4.2),
}


def generator_value(code: str, hour_index: int, cal: CalendarIndex) -> float:
    """Closed-form fixture value for one country at one hour."""
    base, da, sa, phase = COUNTRY_PARAMS[code]
    hod = int(cal.hour_of_day[hour_index])
    day = int((cal.days[hour_index] - cal.days[0]) / np.timedelta64(1, "D"))
    rng = _noise(code, hour_index)
    v = (
        base
        + da * math.sin(2 * math.pi * hod / 24 + phase)
        + sa * math.sin(2 * math.pi * day / 365.25 + phase)
        + rng
    )
    return min(0.99, max(0.01, v))


def _noise(code: str, hour_index: int) -> float:
    # deterministic hash noise in [-0.02, 0.02] (stable across processes)
    x = (ord(code[0]) * 131 + ord(code[1])) * 1_000_003 + hour_index
    x = (x ^ (x >> 13)) * 0x5BD1E995 % (2**32)
    return ((x & 0xFFFF) / 0xFFFF - 0.5) * 0.04


def fixture_calendar() -> CalendarIndex:
    return CalendarIndex.for_years(FIRST_YEAR, LAST_YEAR)


def wind_values(code: str, cal: CalendarIndex) -> np.ndarray:
    return np.array(
        [generator_value(code, i, cal) for i in range(cal.length)], dtype=np.float64
    )


def solar_values(code: str, cal: CalendarIndex) -> np.ndarray:
    # daylight bump, zero at night
    hod = cal.hour_of_day
    v = np.maximum(0.0, np.sin((hod - 6) / 12 * math.pi)) * 0.6
    offset = 0.05 if code == "AA" else 0.0
    return np.clip(v + offset, 0.0, 1.0)


def make_snapshot(with_extras: bool = True) -> DatasetSnapshot:
    cal = fixture_calendar()
    wind = {
        c: HourlySeries(c, Source.WIND, cal, wind_values(c, cal))
        for c in COUNTRY_PARAMS
    }
    solar = {
        c: HourlySeries(c, Source.SOLAR, cal, solar_values(c, cal))
        for c in ("AA", "BB")
    }
    indices = {}
    prices = {}
    if with_extras:
        days = np.arange(
            np.datetime64(f"{FIRST_YEAR}-01-01", "D"),
            np.datetime64(f"{LAST_YEAR + 1}-01-01", "D"),
        )
        rng = np.random.default_rng(7)
        indices["NAO"] = IndexSeries(
            "NAO", Cadence.DAILY, days, rng.normal(0, 1, len(days))
        )
        months = np.arange(
            np.datetime64(f"{FIRST_YEAR}-01", "M"),
            np.datetime64(f"{LAST_YEAR + 1}-01", "M"),
        ).astype("datetime64[D]")
        indices["NINO"] = IndexSeries(
            "NINO", Cadence.MONTHLY, months, rng.normal(26, 1, len(months))
        )
        # AA: prices on ~70% of days, anti-correlated with wind
        keep = rng.random(len(days)) < 0.7
        aa_daily = wind["AA"].values.reshape(-1, 24).mean(axis=1)
        prices["AA"] = PriceSeries(
            "AA",
            days[keep],
            100.0 - 50.0 * aa_daily[keep] + rng.normal(0, 5, int(keep.sum())),
        )
    return build_snapshot(wind, solar, indices, prices, {"fixture": "synthetic"})


def snapshot_from_arrays(
    values_by_country: dict[str, np.ndarray], first_year: int = FIRST_YEAR
) -> DatasetSnapshot:
    """Small helper for hand-built scenarios; arrays must share a length."""
    n = len(next(iter(values_by_country.values())))
    cal = CalendarIndex(np.datetime64(f"{first_year}-01-01T00", "h"), n)
    wind = {
        c: HourlySeries(c, Source.WIND, cal, np.asarray(v, dtype=np.float64))
        for c, v in values_by_country.items()
    }
    return build_snapshot(wind)


def full_scale_snapshot(seed: int = 0) -> DatasetSnapshot:
    """28 countries x 1979-2019 hourly; random but deterministic values."""
    cal = CalendarIndex.for_years(1979, 2019)
    rng = np.random.default_rng(seed)
    codes = [
        "AT", "BE", "BG", "CH", "CZ", "DE", "DK", "EE", "ES", "FI",
        "FR", "GB", "GR", "HR", "HU", "IE", "IT", "LT", "LV", "NL",
        "NO", "PL", "PT", "RO", "SE", "SI", "SK", "ME",
    ]
    wind = {}
    for c in codes:
        v = np.clip(rng.beta(2.0, 4.0, cal.length), 0.0, 1.0)
        wind[c] = HourlySeries(c, Source.WIND, cal, v)
    return build_snapshot(wind)
