"""Command-line entry points: serve the dashboard API, verify a journal,
and drive simulated class traffic."""
from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from .errors import SinkUnreachable
from .features import IndicatorConfig
from .http_api import create_app
from .service import TelemetryService, replay_journal
from .sim import BotPolicy, FileSink, LiveSink, run_class_simulation
from .storage import journal_path

DATA_DIR_ENV = "LAKELAND_LIVE_DATA_DIR"

POLICY_NAMES = {
    "balanced": BotPolicy.BALANCED,
    "diagonal": BotPolicy.DIAGONAL_FARMER,
    "grid": BotPolicy.GRID_FARMER,
    "idler": BotPolicy.IDLER,
    "quitter": BotPolicy.QUITTER,
}


@click.group()
def main():
    """Live classroom telemetry for the Lakeland farming game."""


def _data_dir_option(required: bool):
    return click.option(
        "--data-dir",
        envvar=DATA_DIR_ENV,
        required=required,
        type=click.Path(path_type=Path),
        help=f"Journal directory (or ${DATA_DIR_ENV}).",
    )


@main.command()
@click.option("--port", default=8300, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@_data_dir_option(required=True)
@click.option("--active-s", default=60.0, show_default=True, type=float)
@click.option("--building-s", default=120.0, show_default=True, type=float)
@click.option("--sale-s", default=180.0, show_default=True, type=float)
@click.option("--explore-s", default=120.0, show_default=True, type=float)
@click.option("--poll-s", default=5.0, show_default=True, type=float)
@click.option(
    "--static-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Frontend assets to serve under / (defaults to ./frontend if present).",
)
@click.option("--no-fsync", is_flag=True, help="Skip fsync on journal appends.")
def serve(port, host, data_dir, active_s, building_s, sale_s, explore_s, poll_s, static_dir, no_fsync):
    """Run the telemetry service, replaying any existing journal first."""
    import uvicorn

    try:
        data_dir.mkdir(parents=True, exist_ok=True)
        probe = data_dir / ".write-probe"
        probe.write_text("ok")
        probe.unlink()
    except OSError as exc:
        raise click.ClickException(f"DATA_DIR_UNWRITABLE: {data_dir}: {exc}")

    # plain bind (no SO_REUSEADDR): a specific-address bind would otherwise
    # slide over an existing wildcard listener and miss the conflict
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as s:
        try:
            s.bind((host, port))
        except OSError:
            raise click.ClickException(f"PORT_IN_USE: {host}:{port}")

    cfg = IndicatorConfig(active_s=active_s, building_s=building_s, sale_s=sale_s, explore_s=explore_s)
    service = TelemetryService(data_dir, indicator_config=cfg, fsync=not no_fsync)
    if static_dir is None and Path("frontend").is_dir():
        static_dir = Path("frontend")
    app = create_app(service, poll_s=poll_s, static_dir=static_dir)
    click.echo(f"serving on http://{host}:{port} (journal: {journal_path(data_dir)})")
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        service.close()


@main.command()
@_data_dir_option(required=True)
@click.option("--check", is_flag=True, help="Exit non-zero when the journal is corrupt.")
def replay(data_dir, check):
    """Replay the journal and print a state summary."""
    path = journal_path(data_dir)
    result = replay_journal(path)
    sessions = result.accumulators
    summary = {
        "journal": str(path),
        "lines": result.lines,
        "classes": len(result.registry.codes()),
        "sessions": len(sessions),
        "events": result.events_applied,
        "last_seq": {sid: acc.last_seq for sid, acc in sorted(sessions.items())},
    }
    click.echo(json.dumps(summary, indent=2))
    if result.corruption is not None:
        click.echo(
            f"CORRUPT_LOG at line {result.corruption.line_no}: {result.corruption.reason}",
            err=True,
        )
        if check:
            sys.exit(1)


@main.command()
@click.option("--players", required=True, type=int)
@click.option("--duration-ticks", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--target", default=None, help="Base URL of a running service.")
@click.option("--class", "class_code", default=None, help="Class code on the target service.")
@click.option("--out", default=None, type=click.Path(path_type=Path), help="Event log file (.jsonl).")
@click.option(
    "--policy-mix",
    default=None,
    help="Counts per policy, e.g. balanced:10,diagonal:4,grid:3,idler:2,quitter:1.",
)
@click.option("--width", default=12, show_default=True, type=int)
@click.option("--height", default=12, show_default=True, type=int)
def simulate(players, duration_ticks, seed, target, class_code, out, policy_mix, width, height):
    """Generate bot gameplay, either into a live service or an event-log file."""
    if (target is None) == (out is None):
        raise click.UsageError("exactly one of --target or --out is required")
    if target is not None and class_code is None:
        raise click.UsageError("--class is required with --target")

    policies = _expand_policy_mix(policy_mix, players)
    if target is not None:
        sink = LiveSink(target, class_code)
    else:
        sink = FileSink(out)
    try:
        summary = run_class_simulation(
            players, policies, duration_ticks, seed, sink, width=width, height=height
        )
    except SinkUnreachable as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(summary, indent=2))


def _expand_policy_mix(policy_mix: str | None, players: int) -> list[BotPolicy]:
    if policy_mix is None:
        return [BotPolicy.BALANCED] * players
    policies: list[BotPolicy] = []
    for part in policy_mix.split(","):
        name, _, count = part.partition(":")
        name = name.strip().lower()
        if name not in POLICY_NAMES:
            raise click.UsageError(f"unknown policy {name!r}; choose from {sorted(POLICY_NAMES)}")
        try:
            n = int(count)
        except ValueError:
            raise click.UsageError(f"bad count in policy mix part {part!r}")
        policies.extend([POLICY_NAMES[name]] * n)
    if len(policies) != players:
        raise click.UsageError(
            f"policy mix covers {len(policies)} players but --players is {players}"
        )
    return policies


if __name__ == "__main__":
    main()
