"""Single dispatch implementation shared by the HTTP service and the CLI.

Routing is fail-closed: any query key a route does not declare is a 400,
and required keys must be present. Every successful response echoes the
fully resolved parameters so clients can mirror the exact settings used.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping

from .. import analytics, lwp
from ..analytics import MixWeights, RangeMode, Region, Resolution, Stat, TimeFilter
from ..datastore import DatasetSnapshot
from ..errors import (
    BadParam,
    EmptyFilter,
    IndexYearMissing,
    MissingSolar,
    NoPriceData,
    RemapError,
    UnknownCountry,
    UnknownIndex,
    UnknownRoute,
    YearOutOfRange,
)
from ..stats import CorrelationEntry
from .models import ErrorInfo, QueryResponse

_BAD_REQUEST_CODES = {
    "BadParam",
    "YearOutOfRange",
    "UnknownCountry",
    "UnknownIndex",
    "MissingSolar",
    "NoPriceData",
    "EmptyFilter",
    "IndexYearMissing",
}

_COUNTRY_LIST_RE = re.compile(r"^([A-Z]{2})(,[A-Z]{2})*$")

_RESOLUTION_ALIASES = {
    "hourly": Resolution.HOURLY,
    "intraday": Resolution.HOURLY,
    "monthly": Resolution.MONTHLY,
    "intrayear": Resolution.MONTHLY,
    "yearly": Resolution.YEARLY,
}


class _Params:
    """Typed accessors over raw query strings; every failure is BadParam."""

    def __init__(self, raw: Mapping[str, str]):
        self.raw = dict(raw)

    def countries(self) -> list[str]:
        text = self.raw.get("countries", "").strip()
        if not text:
            return []
        if not _COUNTRY_LIST_RE.match(text):
            raise BadParam(f"countries must be a comma list of 2-letter codes: {text!r}")
        codes = text.split(",")
        if len(set(codes)) != len(codes):
            raise BadParam(f"duplicate country in {text!r}")
        return codes

    def required(self, key: str) -> str:
        if key not in self.raw or not self.raw[key].strip():
            raise BadParam(f"missing required parameter {key!r}")
        return self.raw[key].strip()

    def integer(self, key: str, default: int | None = None) -> int | None:
        if key not in self.raw:
            return default
        try:
            return int(self.raw[key])
        except ValueError:
            raise BadParam(f"{key} must be an integer, got {self.raw[key]!r}")

    def number(self, key: str, default: float) -> float:
        if key not in self.raw:
            return default
        try:
            return float(self.raw[key])
        except ValueError:
            raise BadParam(f"{key} must be a number, got {self.raw[key]!r}")

    def choice(self, key: str, allowed: dict, default):
        if key not in self.raw:
            return default
        value = self.raw[key].strip()
        if value not in allowed:
            raise BadParam(
                f"{key} must be one of {sorted(allowed)}, got {value!r}"
            )
        return allowed[value]

    def weights(self) -> MixWeights:
        w = self.number("wind_weight", 1.0)
        if not 0.0 <= w <= 1.0:
            raise BadParam(f"wind_weight must be in [0, 1], got {w}")
        return MixWeights.from_wind(w)

    def threshold(self) -> float:
        t = self.number("threshold", lwp.DEFAULT_THRESHOLD)
        if not 0.0 < t < 1.0:
            raise BadParam(f"threshold must be in (0, 1), got {t}")
        return t

    def alpha(self) -> float:
        a = self.number("alpha", 0.05)
        if not 0.0 < a < 1.0:
            raise BadParam(f"alpha must be in (0, 1), got {a}")
        return a


def _entry_dict(entry: CorrelationEntry) -> dict:
    d = {
        "r": entry.r,
        "p": entry.p,
        "n": entry.n,
        "suppressed": entry.suppressed,
    }
    if entry.reason is not None:
        d["reason"] = entry.reason
    return d


def _regions_for_series(
    snapshot: DatasetSnapshot, countries: list[str]
) -> list[Region]:
    regions = [Region((c,)) for c in countries]
    regions.append(Region(tuple(snapshot.countries)))  # 28C baseline
    return regions


def _time_filter(snapshot: DatasetSnapshot, p: _Params) -> TimeFilter:
    resolution = p.choice("resolution", _RESOLUTION_ALIASES, Resolution.YEARLY)
    if resolution is Resolution.HOURLY:
        lo, hi = 0, 23
    elif resolution is Resolution.MONTHLY:
        lo, hi = 1, 12
    else:
        lo, hi = snapshot.calendar.first_year, snapshot.calendar.last_year
    unit_from = p.integer("from", lo)
    unit_to = p.integer("to", hi)
    try:
        return TimeFilter(resolution, unit_from, unit_to)
    except ValueError as e:
        raise BadParam(str(e))


def _default_countries(snapshot: DatasetSnapshot, countries: list[str]) -> list[str]:
    return countries if countries else snapshot.countries


# ---------------------------------------------------------------- handlers


def _meta(snapshot: DatasetSnapshot, p: _Params):
    cal = snapshot.calendar
    payload = {
        "countries": snapshot.countries,
        "solar_countries": sorted(snapshot.solar),
        "indices": {n: snapshot.indices[n].cadence.value for n in sorted(snapshot.indices)},
        "price_countries": sorted(snapshot.prices),
        "first_year": cal.first_year,
        "last_year": cal.last_year,
        "hours": cal.length,
        "defaults": {"threshold": lwp.DEFAULT_THRESHOLD, "alpha": 0.05, "wind_weight": 1.0},
    }
    return {}, payload


def _health(snapshot: DatasetSnapshot, p: _Params):
    return {}, {
        "status": "ready",
        "country_count": len(snapshot.countries),
        "provenance": snapshot.provenance,
    }


def _choropleth(snapshot: DatasetSnapshot, p: _Params):
    stat = p.choice("stat", {s.value: s for s in Stat}, Stat.MEAN)
    flt = _time_filter(snapshot, p)
    weights = p.weights()
    values = analytics.spatial_stat(snapshot, stat, flt, weights)
    params = {
        "stat": stat.value,
        "resolution": flt.resolution.value,
        "from": flt.unit_from,
        "to": flt.unit_to,
        "wind_weight": weights.w_wind,
    }
    return params, {"values": values}


def _series(snapshot: DatasetSnapshot, p: _Params):
    countries = p.countries()
    flt = _time_filter(snapshot, p)
    weights = p.weights()
    regions = _regions_for_series(snapshot, countries)
    profile = analytics.temporal_profile(snapshot, regions, flt, weights)
    params = {
        "countries": countries,
        "resolution": flt.resolution.value,
        "from": flt.unit_from,
        "to": flt.unit_to,
        "wind_weight": weights.w_wind,
    }
    return params, {"labels": profile.labels, "series": profile.series}


def _variation_range(snapshot: DatasetSnapshot, p: _Params):
    countries = p.countries()
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    mode = p.choice("mode", {m.value: m for m in RangeMode}, RangeMode.INTRAYEAR)
    weights = p.weights()
    entries = analytics.variation_range(snapshot, mode, year, countries or None, weights)
    params = {
        "countries": countries,
        "year": year,
        "mode": mode.value,
        "wind_weight": weights.w_wind,
    }
    return params, {
        "entries": [{"label": lab, "value": v} for lab, v in entries[:-1]],
        "aggregate": {"label": entries[-1][0], "value": entries[-1][1]},
    }


def _min_mean_max(snapshot: DatasetSnapshot, p: _Params):
    countries = p.countries()
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    mode = p.choice("mode", {m.value: m for m in RangeMode}, RangeMode.INTRAYEAR)
    weights = p.weights()
    rows = analytics.min_mean_max(snapshot, mode, year, countries or None, weights)
    params = {
        "countries": countries,
        "year": year,
        "mode": mode.value,
        "wind_weight": weights.w_wind,
    }
    return params, {
        "entries": [
            {"country": c, "min": lo, "mean": mean, "max": hi}
            for c, lo, mean, hi in rows
        ]
    }


def _cumulative(snapshot: DatasetSnapshot, p: _Params):
    countries = p.countries()
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    weights = p.weights()
    thresholds, curves = analytics.cumulative_days_above(
        snapshot, countries or None, year, None, weights
    )
    params = {"countries": countries, "year": year, "wind_weight": weights.w_wind}
    return params, {"thresholds": thresholds, "curves": curves}


def _yoy(snapshot: DatasetSnapshot, p: _Params):
    countries = p.countries()
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    weights = p.weights()
    result = analytics.yoy_monthly(snapshot, countries or None, year, weights)
    params = {"countries": countries, "year": year, "wind_weight": weights.w_wind}
    return params, result


def _lwp_events(snapshot: DatasetSnapshot, p: _Params):
    countries = _default_countries(snapshot, p.countries())
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    threshold = p.threshold()
    weights = p.weights()
    summary = lwp.lwp_summary(snapshot, countries, year, threshold, weights)
    params = {
        "countries": countries,
        "year": year,
        "threshold": threshold,
        "wind_weight": weights.w_wind,
    }
    return params, summary


def _lwp_calendar(snapshot: DatasetSnapshot, p: _Params):
    countries = _default_countries(snapshot, p.countries())
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    threshold = p.threshold()
    weights = p.weights()
    mask = lwp.lwp_calendar(snapshot, countries, year, threshold, weights)
    params = {
        "countries": countries,
        "year": year,
        "threshold": threshold,
        "wind_weight": weights.w_wind,
    }
    return params, {
        "year": mask.year,
        "region": Region(tuple(countries)).label(snapshot),
        "flags": mask.flags,
    }


def _correlation(snapshot: DatasetSnapshot, p: _Params):
    focus = p.required("focus")
    basis = p.choice(
        "basis",
        {"lwp_days": "lwp_days", "capacity_factor": "capacity_factor"},
        "lwp_days",
    )
    alpha = p.alpha()
    threshold = p.threshold()
    weights = p.weights()
    entries = lwp.correlation_map(snapshot, focus, basis, alpha, threshold, weights)
    params = {
        "focus": focus,
        "basis": basis,
        "alpha": alpha,
        "threshold": threshold,
        "wind_weight": weights.w_wind,
    }
    return params, {"entries": {c: _entry_dict(e) for c, e in sorted(entries.items())}}


def _overlay_index(snapshot: DatasetSnapshot, p: _Params):
    name = p.required("name")
    country = p.required("country")
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    threshold = p.threshold()
    weights = p.weights()
    points = lwp.index_overlay(snapshot, name, country, year, threshold, weights)
    params = {
        "name": name,
        "country": country,
        "year": year,
        "threshold": threshold,
        "wind_weight": weights.w_wind,
    }
    return params, {"points": points}


def _overlay_price(snapshot: DatasetSnapshot, p: _Params):
    country = p.required("country")
    year = p.integer("year")
    if year is None:
        raise BadParam("missing required parameter 'year'")
    threshold = p.threshold()
    weights = p.weights()
    points, entry = lwp.price_overlay(snapshot, country, year, threshold, weights)
    params = {
        "country": country,
        "year": year,
        "threshold": threshold,
        "wind_weight": weights.w_wind,
    }
    return params, {"points": points, "correlation": _entry_dict(entry)}


_Route = tuple[Callable, frozenset[str]]

ROUTES: dict[str, _Route] = {
    "/api/v1/meta": (_meta, frozenset()),
    "/api/v1/health": (_health, frozenset()),
    "/api/v1/choropleth": (
        _choropleth,
        frozenset({"stat", "resolution", "from", "to", "wind_weight"}),
    ),
    "/api/v1/series": (
        _series,
        frozenset({"countries", "resolution", "from", "to", "wind_weight"}),
    ),
    "/api/v1/variation-range": (
        _variation_range,
        frozenset({"countries", "year", "mode", "wind_weight"}),
    ),
    "/api/v1/min-mean-max": (
        _min_mean_max,
        frozenset({"countries", "year", "mode", "wind_weight"}),
    ),
    "/api/v1/cumulative": (
        _cumulative,
        frozenset({"countries", "year", "wind_weight"}),
    ),
    "/api/v1/yoy": (_yoy, frozenset({"countries", "year", "wind_weight"})),
    "/api/v1/lwp/events": (
        _lwp_events,
        frozenset({"countries", "year", "threshold", "wind_weight"}),
    ),
    "/api/v1/lwp/calendar": (
        _lwp_calendar,
        frozenset({"countries", "year", "threshold", "wind_weight"}),
    ),
    "/api/v1/correlation": (
        _correlation,
        frozenset({"focus", "basis", "alpha", "threshold", "wind_weight"}),
    ),
    "/api/v1/overlay/index": (
        _overlay_index,
        frozenset({"name", "country", "year", "threshold", "wind_weight"}),
    ),
    "/api/v1/overlay/price": (
        _overlay_price,
        frozenset({"country", "year", "threshold", "wind_weight"}),
    ),
}


def dispatch(
    snapshot: DatasetSnapshot, path: str, params: Mapping[str, str]
) -> tuple[int, QueryResponse]:
    """Route one query to its operation. Returns (http status, response)."""
    path = path.rstrip("/") or "/"
    route = ROUTES.get(path)
    if route is None:
        return 404, QueryResponse(
            status="error",
            error=ErrorInfo(code="UnknownRoute", message=f"no such endpoint: {path}"),
        )
    handler, allowed = route
    unknown = set(params) - allowed
    if unknown:
        return 400, QueryResponse(
            status="error",
            error=ErrorInfo(
                code="BadParam",
                message=f"unknown parameter(s): {', '.join(sorted(unknown))}",
            ),
        )
    try:
        echo, payload = handler(snapshot, _Params(params))
    except RemapError as e:
        status = 400 if e.code in _BAD_REQUEST_CODES else 500
        return status, QueryResponse(
            status="error", error=ErrorInfo(code=e.code, message=str(e))
        )
    return 200, QueryResponse(status="ok", params=echo, payload=payload)
