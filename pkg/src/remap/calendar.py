"""Contiguous hourly UTC calendar used by every capacity-factor series.

All calendar arithmetic is UTC; days run 00:00-23:00 UTC and leap days
are present. Per-hour label arrays (day, month-of-year, hour-of-day,
year) are computed lazily and cached, since analytics group by them
constantly.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np


class CalendarIndex:
    """A strictly contiguous hourly grid: ``start`` plus ``length`` hours."""

    def __init__(self, start: np.datetime64, length: int):
        if length <= 0:
            raise ValueError("calendar length must be positive")
        self.start = np.datetime64(start, "h")
        self.length = int(length)

    @classmethod
    def for_years(cls, first_year: int, last_year: int) -> "CalendarIndex":
        start = np.datetime64(f"{first_year}-01-01T00", "h")
        end = np.datetime64(f"{last_year + 1}-01-01T00", "h")
        return cls(start, int((end - start) / np.timedelta64(1, "h")))

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CalendarIndex)
            and self.start == other.start
            and self.length == other.length
        )

    def __repr__(self) -> str:
        return f"CalendarIndex(start={self.start}, length={self.length})"

    @cached_property
    def hours(self) -> np.ndarray:
        return self.start + np.arange(self.length, dtype="timedelta64[h]")

    @cached_property
    def days(self) -> np.ndarray:
        """Per-hour day label, dtype datetime64[D]."""
        return self.hours.astype("datetime64[D]")

    @cached_property
    def hour_of_day(self) -> np.ndarray:
        return (self.hours - self.days).astype("timedelta64[h]").astype(np.int64)

    @cached_property
    def months(self) -> np.ndarray:
        """Per-hour month label, dtype datetime64[M]."""
        return self.hours.astype("datetime64[M]")

    @cached_property
    def month_of_year(self) -> np.ndarray:
        """Per-hour calendar month, 1..12."""
        return self.months.astype(np.int64) % 12 + 1

    @cached_property
    def years(self) -> np.ndarray:
        """Per-hour calendar year as an integer."""
        return self.hours.astype("datetime64[Y]").astype(np.int64) + 1970

    @property
    def first_year(self) -> int:
        return int(self.years[0])

    @property
    def last_year(self) -> int:
        return int(self.years[-1])

    @cached_property
    def _day_groups(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.unique(self.days, return_index=True, return_counts=True)

    @cached_property
    def unique_days(self) -> np.ndarray:
        return self._day_groups[0]

    @property
    def day_starts(self) -> np.ndarray:
        """Hour offset where each unique day begins."""
        return self._day_groups[1]

    @property
    def day_counts(self) -> np.ndarray:
        return self._day_groups[2]

    @property
    def num_days(self) -> int:
        return len(self.unique_days)

    def year_hour_slice(self, year: int) -> slice:
        """Contiguous hour range belonging to ``year``; empty if absent."""
        lo, hi = np.searchsorted(self.years, [year, year + 1])
        return slice(int(lo), int(hi))

    def contains_year(self, year: int) -> bool:
        return self.first_year <= year <= self.last_year

    def to_dict(self) -> dict:
        return {"start": str(self.start), "length": self.length}

    @classmethod
    def from_dict(cls, d: dict) -> "CalendarIndex":
        return cls(np.datetime64(d["start"], "h"), d["length"])


def days_in_year(year: int) -> int:
    start = np.datetime64(f"{year}-01-01", "D")
    end = np.datetime64(f"{year + 1}-01-01", "D")
    return int((end - start) / np.timedelta64(1, "D"))
