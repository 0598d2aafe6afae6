"""Command-line entry points: a thin client over the same dispatcher the
HTTP service uses.

Exit codes: 0 success, 1 user error (bad flags, bad query), 2 data error
(malformed input files, corrupt snapshot).

Climate-index files inside ``--indices DIR`` follow the naming
convention ``<NAME>.<daily|monthly>.csv`` (e.g. ``NAO.daily.csv``).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path
from urllib.parse import parse_qsl, urlsplit

import click

from .datastore import Cadence, ingest_all
from .errors import IngestError, RemapError
from .service.config import ServiceConfig
from .service.dispatch import dispatch
from .service.jsoncanon import dumps
from .snapshot_io import load_snapshot, save_snapshot

USER_ERROR = 1
DATA_ERROR = 2


def _index_specs(indices_dir: str | None):
    if indices_dir is None:
        return []
    specs = []
    for path in sorted(Path(indices_dir).glob("*.csv")):
        parts = path.name.split(".")
        if len(parts) != 3 or parts[1] not in ("daily", "monthly"):
            raise click.UsageError(
                f"index file {path.name} must be named <NAME>.<daily|monthly>.csv"
            )
        specs.append((path, parts[0], Cadence(parts[1])))
    return specs


def _ingest(wind, solar, indices, prices):
    try:
        return ingest_all(wind, solar, _index_specs(indices), prices)
    except IngestError as e:
        click.echo(f"error [{e.code}]: {e}", err=True)
        sys.exit(DATA_ERROR)


_input_options = [
    click.option("--wind", required=True, type=click.Path(exists=True, dir_okay=False)),
    click.option("--solar", type=click.Path(exists=True, dir_okay=False)),
    click.option("--indices", type=click.Path(exists=True, file_okay=False)),
    click.option("--prices", type=click.Path(exists=True, dir_okay=False)),
]


def _with_input_options(f):
    for opt in reversed(_input_options):
        f = opt(f)
    return f


@click.group()
def main():
    """Wind capacity-factor analytics: ingest, validate, serve, query."""


@main.command()
@_with_input_options
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def ingest(wind, solar, indices, prices, out):
    """Parse input CSVs and write a snapshot cache file."""
    snapshot = _ingest(wind, solar, indices, prices)
    save_snapshot(snapshot, out)
    click.echo(
        f"wrote {out}: {len(snapshot.countries)} countries, "
        f"{snapshot.calendar.length} hours"
    )


@main.command()
@_with_input_options
def validate(wind, solar, indices, prices):
    """Parse input CSVs and report what they contain, without writing."""
    snapshot = _ingest(wind, solar, indices, prices)
    cal = snapshot.calendar
    click.echo(f"countries: {', '.join(snapshot.countries)}")
    click.echo(f"span: {cal.first_year}-{cal.last_year} ({cal.length} hours, {cal.num_days} days)")
    click.echo(f"solar countries: {', '.join(sorted(snapshot.solar)) or '(none)'}")
    click.echo(f"indices: {', '.join(sorted(snapshot.indices)) or '(none)'}")
    click.echo(f"price countries: {', '.join(sorted(snapshot.prices)) or '(none)'}")
    click.echo("ok")


def _snapshot_path(snapshot: str | None) -> str:
    path = snapshot or os.environ.get("REMAP_SNAPSHOT")
    if not path:
        raise click.UsageError("provide --snapshot or set REMAP_SNAPSHOT")
    return path


def _load(path: str):
    try:
        return load_snapshot(path)
    except FileNotFoundError:
        click.echo(f"error: snapshot file not found: {path}", err=True)
        sys.exit(USER_ERROR)
    except RemapError as e:
        click.echo(f"error [{e.code}]: {e}", err=True)
        sys.exit(DATA_ERROR)


@main.command()
@click.argument("path")
@click.option("--snapshot", type=click.Path())
def query(path, snapshot):
    """Run one API path (e.g. "/api/v1/meta?") offline and print the JSON."""
    snap = _load(_snapshot_path(snapshot))
    split = urlsplit(path)
    params = dict(parse_qsl(split.query, keep_blank_values=True))
    status, body = dispatch(snap, split.path, params)
    text = dumps(body.to_wire())
    # keep the bytes identical to the HTTP payload when piped
    sys.stdout.write(text + ("\n" if sys.stdout.isatty() else ""))
    sys.stdout.flush()
    if status != 200:
        sys.exit(USER_ERROR)


@main.command()
@click.option("--snapshot", type=click.Path())
@click.option("--listen", default="127.0.0.1:8000", show_default=True)
@click.option("--static", "static_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--threshold", default=0.10, show_default=True)
@click.option("--alpha", default=0.05, show_default=True)
def serve(snapshot, listen, static_dir, threshold, alpha):
    """Start the HTTP/JSON query service."""
    import uvicorn

    from .service.app import create_app

    path = _snapshot_path(snapshot)
    if not os.path.exists(path):
        click.echo(f"error: snapshot file not found: {path}", err=True)
        sys.exit(USER_ERROR)
    config = ServiceConfig(
        listen=listen,
        snapshot_path=path,
        default_threshold=threshold,
        default_alpha=alpha,
        static_dir=static_dir,
    )
    uvicorn.run(create_app(config), host=config.host, port=config.port)


if __name__ == "__main__":
    main()
