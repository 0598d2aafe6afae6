"""Snapshot cache persistence.

Layout: magic ``REMAPSNAP``, one version byte, a u64 length-prefixed
columnar payload (JSON header + raw little-endian arrays), and a
trailing SHA-256 digest of the payload. Numeric payloads round-trip
bit-for-bit.
"""

from __future__ import annotations

import hashlib
import io
import json
import struct

import numpy as np

from .calendar import CalendarIndex
from .datastore import (
    Cadence,
    DatasetSnapshot,
    HourlySeries,
    IndexSeries,
    PriceSeries,
    Source,
)
from .errors import CorruptSnapshot, VersionMismatch

MAGIC = b"REMAPSNAP"
VERSION = 1


def _days_to_i64(dates: np.ndarray) -> np.ndarray:
    return dates.astype("datetime64[D]").astype(np.int64)


def _i64_to_days(raw: np.ndarray) -> np.ndarray:
    return raw.astype("datetime64[D]")


def save_snapshot(snapshot: DatasetSnapshot, path) -> None:
    buf = io.BytesIO()
    header = {
        "calendar": snapshot.calendar.to_dict(),
        "wind": snapshot.countries,
        "solar": sorted(snapshot.solar),
        "indices": [
            {"name": n, "cadence": snapshot.indices[n].cadence.value,
             "n": len(snapshot.indices[n].values)}
            for n in sorted(snapshot.indices)
        ],
        "prices": [
            {"country": c, "n": len(snapshot.prices[c].values)}
            for c in sorted(snapshot.prices)
        ],
        "provenance": snapshot.provenance,
    }
    hbytes = json.dumps(header, sort_keys=True).encode("utf-8")
    buf.write(struct.pack("<I", len(hbytes)))
    buf.write(hbytes)

    def put(arr: np.ndarray, dtype: str) -> None:
        buf.write(np.ascontiguousarray(arr, dtype=dtype).tobytes())

    for c in header["wind"]:
        put(snapshot.wind[c].values, "<f8")
    for c in header["solar"]:
        put(snapshot.solar[c].values, "<f8")
    for entry in header["indices"]:
        s = snapshot.indices[entry["name"]]
        put(_days_to_i64(s.dates), "<i8")
        put(s.values, "<f8")
    for entry in header["prices"]:
        s = snapshot.prices[entry["country"]]
        put(_days_to_i64(s.dates), "<i8")
        put(s.values, "<f8")

    payload = buf.getvalue()
    digest = hashlib.sha256(payload).digest()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(bytes([VERSION]))
        f.write(struct.pack("<Q", len(payload)))
        f.write(payload)
        f.write(digest)


def load_snapshot(path) -> DatasetSnapshot:
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < len(MAGIC) + 1 or blob[: len(MAGIC)] != MAGIC:
        raise VersionMismatch(f"{path}: not a snapshot file (bad magic)")
    version = blob[len(MAGIC)]
    if version != VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {VERSION}")
    off = len(MAGIC) + 1
    if len(blob) < off + 8:
        raise CorruptSnapshot(f"{path}: truncated length prefix")
    (plen,) = struct.unpack_from("<Q", blob, off)
    off += 8
    if len(blob) < off + plen + 32:
        raise CorruptSnapshot(f"{path}: truncated payload")
    payload = blob[off : off + plen]
    digest = blob[off + plen : off + plen + 32]
    if hashlib.sha256(payload).digest() != digest:
        raise CorruptSnapshot(f"{path}: content digest mismatch")

    (hlen,) = struct.unpack_from("<I", payload, 0)
    try:
        header = json.loads(payload[4 : 4 + hlen].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CorruptSnapshot(f"{path}: bad header ({e})")
    pos = 4 + hlen

    def take(count: int, dtype: str) -> np.ndarray:
        nonlocal pos
        nbytes = count * 8
        if pos + nbytes > len(payload):
            raise CorruptSnapshot(f"{path}: payload shorter than header declares")
        arr = np.frombuffer(payload, dtype=dtype, count=count, offset=pos).copy()
        pos += nbytes
        return arr

    calendar = CalendarIndex.from_dict(header["calendar"])
    n = calendar.length
    wind = {
        c: HourlySeries(c, Source.WIND, calendar, take(n, "<f8"))
        for c in header["wind"]
    }
    solar = {
        c: HourlySeries(c, Source.SOLAR, calendar, take(n, "<f8"))
        for c in header["solar"]
    }
    indices = {}
    for entry in header["indices"]:
        dates = _i64_to_days(take(entry["n"], "<i8"))
        values = take(entry["n"], "<f8")
        indices[entry["name"]] = IndexSeries(
            entry["name"], Cadence(entry["cadence"]), dates, values
        )
    prices = {}
    for entry in header["prices"]:
        dates = _i64_to_days(take(entry["n"], "<i8"))
        values = take(entry["n"], "<f8")
        prices[entry["country"]] = PriceSeries(entry["country"], dates, values)

    return DatasetSnapshot(
        calendar=calendar,
        wind=wind,
        solar=solar,
        indices=indices,
        prices=prices,
        provenance=header["provenance"],
    )
