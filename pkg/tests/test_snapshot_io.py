import numpy as np
import pytest

from remap.errors import CorruptSnapshot, VersionMismatch
from remap.snapshot_io import MAGIC, load_snapshot, save_snapshot


@pytest.fixture
def saved(tmp_path, snapshot):
    path = tmp_path / "snap.bin"
    save_snapshot(snapshot, path)
    return path


def test_round_trip_value_identical(saved, snapshot):
    loaded = load_snapshot(saved)
    assert loaded.calendar == snapshot.calendar
    assert loaded.countries == snapshot.countries
    for c in snapshot.wind:
        assert np.array_equal(loaded.wind[c].values, snapshot.wind[c].values)
    for c in snapshot.solar:
        assert np.array_equal(loaded.solar[c].values, snapshot.solar[c].values)
    for n, s in snapshot.indices.items():
        assert loaded.indices[n].cadence == s.cadence
        assert np.array_equal(loaded.indices[n].dates, s.dates)
        assert np.array_equal(loaded.indices[n].values, s.values)
    for c, s in snapshot.prices.items():
        assert np.array_equal(loaded.prices[c].dates, s.dates)
        assert np.array_equal(loaded.prices[c].values, s.values)
    assert loaded.provenance == snapshot.provenance


def test_wrong_magic(tmp_path, saved):
    blob = saved.read_bytes()
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOTASNAPX" + blob[len(MAGIC) :])
    with pytest.raises(VersionMismatch):
        load_snapshot(bad)


def test_wrong_version(tmp_path, saved):
    blob = bytearray(saved.read_bytes())
    blob[len(MAGIC)] = 99
    bad = tmp_path / "bad.bin"
    bad.write_bytes(bytes(blob))
    with pytest.raises(VersionMismatch):
        load_snapshot(bad)


def test_truncated(tmp_path, saved):
    blob = saved.read_bytes()
    bad = tmp_path / "bad.bin"
    bad.write_bytes(blob[: len(blob) // 2])
    with pytest.raises(CorruptSnapshot):
        load_snapshot(bad)


def test_flipped_bit_fails_digest(tmp_path, saved):
    blob = bytearray(saved.read_bytes())
    blob[len(blob) // 2] ^= 0x01
    bad = tmp_path / "bad.bin"
    bad.write_bytes(bytes(blob))
    with pytest.raises(CorruptSnapshot):
        load_snapshot(bad)
