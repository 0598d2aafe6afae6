"""Acceptance gate: one test per criterion, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v``.
"""

import math
import os
import sys
import time

import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from remap import analytics, lwp, stats
from remap.analytics import MixWeights, RangeMode, Region, Resolution, Stat, TimeFilter
from remap.cli import main as cli_main
from remap.datastore import Source, ingest_capacity_factors
from remap.errors import DegenerateInput
from remap.service.app import create_app
from remap.service.config import ServiceConfig
from remap.service.dispatch import dispatch
from remap.service.jsoncanon import dumps
from remap.snapshot_io import save_snapshot

import oracle
from fixtures import FIRST_YEAR, LAST_YEAR, full_scale_snapshot, make_snapshot

W = MixWeights()

_capman = None


@pytest.fixture(autouse=True)
def _capture_manager(request):
    global _capman
    _capman = request.config.pluginmanager.getplugin("capturemanager")


def _announce(line):
    # bypass pytest's fd-level capture so the line reaches the terminal
    if _capman is not None:
        with _capman.global_and_fixture_disabled():
            print(line, flush=True)
    else:
        print(line, file=sys.__stdout__, flush=True)


def _criterion(name, fn):
    try:
        fn()
    except BaseException:
        _announce(f"[FAIL] {name}")
        raise
    _announce(f"[PASS] {name}")


@pytest.fixture(scope="module")
def snap():
    return make_snapshot()


@pytest.fixture(scope="module")
def snap_file(tmp_path_factory, snap):
    path = tmp_path_factory.mktemp("acc") / "fixture.snap"
    save_snapshot(snap, path)
    return path


@pytest.fixture(scope="module")
def client(snap_file):
    app = create_app(ServiceConfig(snapshot_path=snap_file))
    with TestClient(app) as c:
        yield c


def test_fixture_oracle_equivalence(snap):
    def run():
        t0 = time.perf_counter()
        cal = snap.calendar
        hods = cal.hour_of_day.tolist()
        moys = cal.month_of_year.tolist()
        years = cal.years.tolist()
        day_keys = [str(d) for d in cal.days]
        TOL = 1e-9

        wind = {c: snap.wind[c].values.tolist() for c in snap.countries}

        # blend
        blended = analytics.blended_values(snap, "AA", MixWeights.from_wind(0.6))
        expected = oracle.blend(wind["AA"], snap.solar["AA"].values.tolist(), 0.6)
        assert np.allclose(blended, expected, atol=TOL)

        # region mean
        region = Region(tuple(snap.countries))
        rv = analytics.region_values(snap, region, W)
        o_rv = oracle.region_mean([wind[c] for c in snap.countries])
        assert np.allclose(rv, o_rv, atol=TOL)

        # spatial stats, all resolutions and both stats
        for res, keys, units in (
            (Resolution.HOURLY, hods, (0, 23)),
            (Resolution.MONTHLY, moys, (1, 12)),
            (Resolution.YEARLY, years, (FIRST_YEAR, LAST_YEAR)),
        ):
            flt = TimeFilter(res, *units)
            got_mean = analytics.spatial_stat(snap, Stat.MEAN, flt)
            got_std = analytics.spatial_stat(snap, Stat.STD, flt)
            for c in snap.countries:
                profile = list(oracle.group_means(wind[c], keys).values())
                assert abs(got_mean[c] - oracle.mean(profile)) < TOL
                assert abs(got_std[c] - oracle.pop_std(profile)) < TOL

        # temporal profiles
        for res, keys in (
            (Resolution.HOURLY, hods),
            (Resolution.MONTHLY, moys),
            (Resolution.YEARLY, years),
        ):
            lo, hi = (
                (0, 23) if res is Resolution.HOURLY
                else (1, 12) if res is Resolution.MONTHLY
                else (FIRST_YEAR, LAST_YEAR)
            )
            prof = analytics.temporal_profile(
                snap, [Region(("AA",))], TimeFilter(res, lo, hi)
            )
            expected = list(oracle.group_means(wind["AA"], keys).values())
            assert np.allclose(prof.series["AA"], expected, atol=TOL)

        # per-year slices for range/minmeanmax/cumulative/yoy/lwp
        for year in (FIRST_YEAR, LAST_YEAR):
            sl = cal.year_hour_slice(year)
            ysl_keys = {
                RangeMode.INTRADAY: hods[sl],
                RangeMode.INTRAYEAR: moys[sl],
            }
            for mode in RangeMode:
                got = dict(analytics.variation_range(snap, mode, year))
                rows = {
                    c: (lo_, m_, hi_)
                    for c, lo_, m_, hi_ in analytics.min_mean_max(snap, mode, year)
                }
                for c in snap.countries:
                    profile = list(
                        oracle.group_means(wind[c][sl], ysl_keys[mode]).values()
                    )
                    assert abs(got[c] - oracle.variation_range(profile)) < TOL
                    lo_, m_, hi_ = rows[c]
                    assert abs(lo_ - min(profile)) < TOL
                    assert abs(m_ - oracle.mean(profile)) < TOL
                    assert abs(hi_ - max(profile)) < TOL

            # cumulative curves
            grid = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0]
            _, curves = analytics.cumulative_days_above(snap, None, year, grid)
            for c in snap.countries:
                daily = oracle.daily_means(wind[c][sl], day_keys[sl])
                for t, v in zip(grid, curves[c]):
                    assert abs(v - oracle.cumulative_fraction(daily, t)) < TOL

            # daily CF + LWP events/counts/calendar
            for c in snap.countries:
                daily_got = lwp.daily_cf(snap, Region((c,)), year)
                daily_oracle = oracle.daily_means(wind[c][sl], day_keys[sl])
                assert np.allclose(daily_got, daily_oracle, atol=TOL)
                for t in (0.1, 0.25, 0.4):
                    events = lwp.detect_lwp_events(daily_got, t)
                    o_events = oracle.detect_events(daily_oracle, t)
                    assert [
                        (e.start_offset, e.duration_days) for e in events
                    ] == o_events
                    assert lwp.events_by_min_duration(
                        events, 10
                    ) == oracle.counts_by_min_duration(o_events, 10)
                mask = lwp.lwp_calendar(snap, [c], year, 0.25)
                assert mask.flags == [v < 0.25 for v in daily_oracle]

        # yoy
        out = analytics.yoy_monthly(snap, ["BB"], FIRST_YEAR)
        sl = cal.year_hour_slice(FIRST_YEAR)
        assert np.allclose(
            out["focus"],
            list(oracle.group_means(wind["BB"][sl], moys[sl]).values()),
            atol=TOL,
        )
        sl2 = cal.year_hour_slice(LAST_YEAR)
        assert np.allclose(
            out["background"][0]["values"],
            list(oracle.group_means(wind["BB"][sl2], moys[sl2]).values()),
            atol=TOL,
        )

        # stats: full-period daily correlations vs oracle
        daily_all = {
            c: oracle.daily_means(wind[c], day_keys) for c in snap.countries
        }
        for a, b in (("AA", "BB"), ("AA", "CC"), ("BB", "CC")):
            assert abs(
                stats.pearson(daily_all[a], daily_all[b])
                - oracle.pearson(daily_all[a], daily_all[b])
            ) < TOL

        # correlation map entries vs oracle
        cmap = lwp.correlation_map(snap, "AA", "capacity_factor")
        for c in ("BB", "CC"):
            assert abs(cmap[c].r - oracle.pearson(daily_all["AA"], daily_all[c])) < TOL

        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0, f"oracle sweep took {elapsed:.1f}s"

    _criterion("fixture-oracle equivalence (all analytics/stats/lwp ops, 1e-9)", run)


def test_lwp_suite():
    def run():
        # worked example
        events = lwp.detect_lwp_events([0.05, 0.08, 0.20, 0.09, 0.30], 0.10)
        assert [(e.start_offset, e.duration_days) for e in events] == [(0, 2), (3, 1)]
        assert lwp.events_by_min_duration(events, 3) == [2, 1, 0]

        rng = np.random.default_rng(123)
        for _ in range(1000):
            n = int(rng.integers(10, 120))
            daily = rng.random(n)
            t = float(rng.uniform(0.05, 0.95))
            evs = lwp.detect_lwp_events(daily, t)
            # partition law
            assert sum(e.duration_days for e in evs) == int((daily < t).sum())
            for e in evs:
                if e.start_offset > 0:
                    assert daily[e.start_offset - 1] >= t
                end = e.start_offset + e.duration_days
                if end < n:
                    assert daily[end] >= t
            # duration-count monotonicity
            counts = lwp.events_by_min_duration(evs, 10)
            assert counts == sorted(counts, reverse=True)
            assert counts[0] == len(evs)
            # threshold-set monotonicity
            t2 = min(0.99, t + float(rng.uniform(0, 0.3)))
            days_lo = {
                d for e in evs for d in range(e.start_offset, e.start_offset + e.duration_days)
            }
            days_hi = {
                d
                for e in lwp.detect_lwp_events(daily, t2)
                for d in range(e.start_offset, e.start_offset + e.duration_days)
            }
            assert days_lo <= days_hi
            # region sandwich for a random 2-member region
            other = rng.random(n)
            region_daily = (daily + other) / 2
            region_set = set(np.flatnonzero(region_daily < t))
            inter = set(np.flatnonzero((daily < t) & (other < t)))
            union = set(np.flatnonzero((daily < t) | (other < t)))
            assert inter <= region_set <= union

    _criterion("LWP suite (laws on 1000 randomized series + worked example)", run)


def test_statistics_suite():
    def run():
        rng = np.random.default_rng(7)
        for _ in range(300):
            n = int(rng.integers(5, 60))
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            r = stats.pearson(x, y)
            assert -1.0 <= r <= 1.0
            assert abs(r - stats.pearson(y, x)) < 1e-12
            a, b = float(rng.uniform(0.1, 10)), float(rng.uniform(-10, 10))
            assert abs(stats.pearson(a * x + b, y) - r) < 1e-9
            assert abs(stats.pearson(-a * x + b, y) + r) < 1e-9

        # closed form, df = 2
        assert abs(stats.pearson_pvalue(0.8, 4) - 0.2) < 1e-12

        # binary-basis correlation equals phi coefficient
        checked = 0
        while checked < 200:
            x = rng.integers(0, 2, 40).tolist()
            y = rng.integers(0, 2, 40).tolist()
            phi = oracle.phi_coefficient(x, y)
            if phi is None:
                continue
            assert abs(stats.pearson(x, y) - phi) < 1e-12
            checked += 1

    _criterion("statistics suite (pearson laws, df=2 closed form, phi oracle)", run)


def test_blend_and_region_laws(snap):
    def run():
        # weights (1, 0) reproduce wind bit-exactly
        for c in snap.countries:
            blended = analytics.blended_series(snap, c, MixWeights(1.0, 0.0))
            assert blended.values is snap.wind[c].values

        # singleton-region law, exact
        for c in snap.countries:
            assert np.array_equal(
                analytics.region_values(snap, Region((c,)), W), snap.wind[c].values
            )

        # region per-hour values within member min/max
        region = Region(tuple(snap.countries))
        rv = analytics.region_values(snap, region, W)
        stack = np.vstack([snap.wind[c].values for c in snap.countries])
        assert np.all(rv >= stack.min(axis=0) - 1e-12)
        assert np.all(rv <= stack.max(axis=0) + 1e-12)

    _criterion("blend identity and region laws", run)


def test_cumulative_curve_properties(snap):
    def run():
        _, curves = analytics.cumulative_days_above(snap, None, FIRST_YEAR)
        for curve in curves.values():
            assert len(curve) == 101
            assert all(a >= b for a, b in zip(curve, curve[1:]))
            assert curve[-1] == 0.0
            assert all(0.0 <= v <= 1.0 for v in curve)

        rng = np.random.default_rng(99)
        grid = analytics.DEFAULT_THRESHOLD_GRID
        for _ in range(100):
            daily = rng.random(int(rng.integers(30, 400)))
            curve = analytics._cumulative_curve(daily, grid)
            assert all(a >= b for a, b in zip(curve, curve[1:]))
            assert curve[-1] == 0.0

    _criterion("cumulative curve monotone, zero at t=1.0 (fixture + 100 random)", run)


def test_service_conformance(snap, snap_file, client):
    def run():
        paths = [
            "/api/v1/meta",
            "/api/v1/health",
            "/api/v1/choropleth?stat=mean&resolution=yearly",
            "/api/v1/choropleth?stat=std&resolution=monthly",
            "/api/v1/choropleth?stat=mean&resolution=hourly&from=6&to=18",
            "/api/v1/series?countries=AA&resolution=intraday",
            "/api/v1/series?countries=AA,BB&resolution=intrayear",
            "/api/v1/series?countries=&resolution=yearly",
            f"/api/v1/variation-range?year={FIRST_YEAR}&mode=intrayear",
            f"/api/v1/variation-range?countries=AA,BB&year={LAST_YEAR}&mode=intraday",
            f"/api/v1/min-mean-max?year={FIRST_YEAR}&mode=intraday",
            f"/api/v1/min-mean-max?countries=CC&year={LAST_YEAR}&mode=intrayear",
            f"/api/v1/cumulative?year={FIRST_YEAR}",
            f"/api/v1/cumulative?countries=AA,CC&year={LAST_YEAR}",
            f"/api/v1/yoy?countries=AA&year={FIRST_YEAR}",
            f"/api/v1/lwp/events?countries=AA,BB&year={FIRST_YEAR}",
            f"/api/v1/lwp/calendar?countries=AA&year={LAST_YEAR}&threshold=0.25",
            "/api/v1/correlation?focus=AA&basis=capacity_factor",
            "/api/v1/overlay/index?name=NAO&country=AA&year=1985",
            f"/api/v1/overlay/price?country=AA&year={FIRST_YEAR}",
        ]
        assert len(paths) == 20

        # schema-valid, deterministic payloads
        for path in paths:
            first = client.get(path)
            assert first.status_code == 200
            body = first.json()
            assert body["status"] == "ok" and "payload" in body and "params" in body
            assert client.get(path).content == first.content

        # unknown parameter fails closed
        assert client.get("/api/v1/meta?nope=1").status_code == 400

        # cli_query output byte-identical to the HTTP payload
        runner = CliRunner()
        for path in paths:
            result = runner.invoke(
                cli_main, ["query", path, "--snapshot", str(snap_file)]
            )
            assert result.exit_code == 0, result.output
            assert result.stdout_bytes == client.get(path).content

        # p95 latency on the fixture snapshot (HTTP round trip)
        times = []
        for path in paths:
            for _ in range(5):
                t0 = time.perf_counter()
                client.get(path)
                times.append(time.perf_counter() - t0)
        p95 = float(np.percentile(times, 95))
        assert p95 < 0.050, f"fixture p95 {p95 * 1e3:.1f} ms"

        # p95 latency on a full-scale 28-country x 41-year synthetic snapshot
        big = full_scale_snapshot()
        big_paths = [
            ("/api/v1/choropleth", {"stat": "mean", "resolution": "yearly"}),
            ("/api/v1/choropleth", {"stat": "std", "resolution": "hourly"}),
            ("/api/v1/series", {"countries": "", "resolution": "intrayear"}),
            ("/api/v1/variation-range", {"year": "1990", "mode": "intrayear"}),
            ("/api/v1/cumulative", {"countries": "AT,DE,FR", "year": "2000"}),
            ("/api/v1/yoy", {"countries": "FR", "year": "2018"}),
            ("/api/v1/lwp/events", {"countries": "FR,DE", "year": "1979"}),
            ("/api/v1/correlation", {"focus": "FR", "basis": "lwp_days", "threshold": "0.3"}),
        ]
        times = []
        for path, params in big_paths:
            for _ in range(5):
                t0 = time.perf_counter()
                status, body = dispatch(big, path, params)
                dumps(body.to_wire())
                times.append(time.perf_counter() - t0)
            assert status == 200
        p95 = float(np.percentile(times, 95))
        assert p95 < 0.500, f"full-scale p95 {p95 * 1e3:.1f} ms"

    _criterion("service conformance (schema, determinism, CLI parity, latency)", run)


def test_real_data_structural_check():
    """Optional, gated on REMAP_REAL_DATA pointing at the published wind CSV."""
    path = os.environ.get("REMAP_REAL_DATA")
    if not path:
        _announce("[SKIP] real-data structural check (set REMAP_REAL_DATA to enable)")
        pytest.skip("REMAP_REAL_DATA not set")

    def run():
        series = ingest_capacity_factors(path, Source.WIND)
        assert len(series) == 28
        cal = next(iter(series.values())).calendar
        assert str(cal.start) == "1979-01-01T00"
        assert cal.length == 359_400
        for s in series.values():
            assert s.values.min() >= 0.0 and s.values.max() <= 1.0

    _criterion("real-data structural check (28 countries, 359,400 hours)", run)
