"""Acceptance suite: one test per primary criterion at its stated tolerance.

Each criterion prints one PASS/FAIL line; run with
`pytest tests/test_acceptance.py -v -s` to see them as they complete.
"""
from __future__ import annotations

import json
import math
import random
import re
import statistics
import threading
import time
from contextlib import contextmanager
from fractions import Fraction

import httpx
import pytest

from conftest import start_server
from golden_build import (
    GOLDEN_DASHBOARD_PATH,
    build_seeded_dashboard,
)
from lakeland_live.events import (
    Build,
    CellRef,
    EventKind,
    GameEvent,
    Input,
    Population,
    Sell,
    SessionStart,
    TutorialComplete,
)
from lakeland_live.codec import event_to_obj
from lakeland_live.features import (
    IndicatorConfig,
    MODEL_CATALOG,
    apply_event,
    detect_diagonal_strategy,
    new_accumulator,
    percentile_rank,
    snapshot,
)
from lakeland_live.grid import TileKind, uniform_grid
from lakeland_live.sim import (
    BotPolicy,
    LiveSink,
    default_lake,
    run_class_simulation,
    sim_tick,
    world_init,
)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE FAIL: {name}", flush=True)
        raise
    print(f"\nACCEPTANCE PASS: {name}", flush=True)


# --- 1. model coverage --------------------------------------------------------

_VALIDATORS = {
    "Number": lambda v: isinstance(v, int) and 0 <= v <= 6,
    "Percentile": lambda v: isinstance(v, float) and 0.0 < v < 100.0,
    "Minutes:Seconds": lambda v: isinstance(v, str) and re.fullmatch(r"\d+:[0-5]\d", v),
    "Icon + Number": lambda v: isinstance(v, int) and v >= 0,
    "Bitmap": lambda v: (
        isinstance(v, dict)
        and list(v) == ["width", "height", "palette_version", "rows"]
        and v["palette_version"] == 1
        and len(v["rows"]) == v["height"]
        and all(len(r) == v["width"] for r in v["rows"])
        and all(cell in (0, 1, 2, 3, 4, 5) for r in v["rows"] for cell in r)
    ),
    "Icons + Numbers": lambda v: (
        isinstance(v, dict)
        and list(v) == ["houses", "corn_fields", "dairy_farms"]
        and all(isinstance(n, int) and n >= 0 for n in v.values())
    ),
    "Binary Indicator": lambda v: isinstance(v, bool),
}


def test_model_coverage_golden_file(tmp_path):
    with criterion("model coverage: 16 models, stated visualizations, golden file, <5s"):
        t0 = time.perf_counter()
        dashboard, summary = build_seeded_dashboard(tmp_path)
        assert len(dashboard["players"]) == 20
        assert all(p["events"] >= 1 for p in summary["players"])
        for player in dashboard["players"]:
            snap = player["snapshot"]
            assert list(snap) == [field for field, _, _, _ in MODEL_CATALOG]
            for field, _, _, visualization in MODEL_CATALOG:
                assert _VALIDATORS[visualization](snap[field]), (
                    player["display_name"],
                    field,
                    snap[field],
                )
        golden = json.loads(GOLDEN_DASHBOARD_PATH.read_text(encoding="utf-8"))
        assert dashboard == golden
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


# --- 2. percentile oracle -----------------------------------------------------


def _oracle(value, values):
    import bisect

    s = sorted(values)
    lo = bisect.bisect_left(s, value)
    hi = bisect.bisect_right(s, value)
    return 100.0 * (lo + 0.5 * (hi - lo)) / len(s)


def test_percentile_oracle_thousand_multisets():
    with criterion("percentile oracle: 1000 multisets exact, class mean exactly 50"):
        rng = random.Random(20260810)
        for _ in range(1000):
            n = rng.randint(1, 50)
            values = [rng.randint(0, max(1, n // 2)) for _ in range(n)]  # dense -> ties
            terms = []
            for v in values:
                assert percentile_rank(v, values) == _oracle(v, values)
                below = sum(1 for u in values if u < v)
                equal = sum(1 for u in values if u == v)
                terms.append(2 * below + equal)
            # midrank identity: sum(2L + E) == N^2, so the exact rational
            # mean of the per-player percentiles is 50
            assert sum(terms) == n * n
            assert sum(Fraction(100 * t, 2 * n) for t in terms) / n == 50
            floats = [percentile_rank(v, values) for v in values]
            assert abs(math.fsum(floats) / n - 50.0) < 1e-9


# --- 3. detector separation ---------------------------------------------------


def test_detector_separation_forty_of_forty():
    with criterion("detector separation: 20 diagonal by tick 60 + 20 grid never, <30s"):
        t0 = time.perf_counter()
        correct = 0
        for seed in range(20):
            world, events = world_init(12, 12, default_lake(12, 12), seed, session_id=f"diag-{seed:04d}")
            acc = new_accumulator(world.session_id, 0)
            for e in events:
                acc = apply_event(acc, e, e.t_ms)
            detected_at = None
            for _ in range(60):
                _, evs = sim_tick(world, BotPolicy.DIAGONAL_FARMER)
                for e in evs:
                    acc = apply_event(acc, e, e.t_ms)
                if detected_at is None and detect_diagonal_strategy(acc.grid):
                    detected_at = world.tick
            assert detected_at is not None and detected_at <= 60, f"seed {seed}"
            correct += 1
        for seed in range(20):
            world, events = world_init(12, 12, default_lake(12, 12), seed, session_id=f"grid-{seed:04d}")
            acc = new_accumulator(world.session_id, 0)
            for e in events:
                acc = apply_event(acc, e, e.t_ms)
            for _ in range(600):
                _, evs = sim_tick(world, BotPolicy.GRID_FARMER)
                for e in evs:
                    acc = apply_event(acc, e, e.t_ms)
                    if e.kind in (EventKind.BUILD, EventKind.BLOOM, EventKind.BLOOM_CLEAR):
                        assert not detect_diagonal_strategy(acc.grid), f"seed {seed} tick {world.tick}"
            assert not detect_diagonal_strategy(acc.grid), f"seed {seed}"
            correct += 1
        assert correct == 40
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0, f"took {elapsed:.2f}s"


# --- 4. indicator boundary ----------------------------------------------------


def test_indicator_boundary_strict_contract():
    with criterion("indicator boundary: false at threshold ms, true at threshold+1 ms"):
        configs = [
            IndicatorConfig(),
            IndicatorConfig(active_s=30, building_s=45, sale_s=90, explore_s=75),
        ]
        t0 = 5_000_000
        sid = "boundarysession"
        for cfg in configs:
            acc = new_accumulator(sid, t0)
            acc = apply_event(
                acc, GameEvent(sid, 1, 0, EventKind.SESSION_START, SessionStart(uniform_grid(3, 3))), t0
            )
            acc = apply_event(
                acc, GameEvent(sid, 2, 1, EventKind.BUILD, Build(TileKind.HOUSE, 0, 0)), t0
            )
            acc = apply_event(acc, GameEvent(sid, 3, 2, EventKind.SELL, Sell("corn", 1, 5)), t0)
            acc = apply_event(acc, GameEvent(sid, 4, 3, EventKind.TILE_INSPECT, CellRef(1, 1)), t0)
            for field, threshold_s in (
                ("idle_active", cfg.active_s),
                ("idle_building", cfg.building_s),
                ("idle_sale", cfg.sale_s),
                ("idle_explore", cfg.explore_s),
            ):
                threshold_ms = int(threshold_s * 1000)
                at_threshold = snapshot(acc, t0 + threshold_ms, [acc], cfg)
                just_past = snapshot(acc, t0 + threshold_ms + 1, [acc], cfg)
                assert getattr(at_threshold, field) is False, (field, cfg)
                assert getattr(just_past, field) is True, (field, cfg)


# --- 5. durability / replay ---------------------------------------------------


def test_durability_kill_and_restart(tmp_path):
    with criterion("durability/replay: dashboards byte-identical across a kill"):
        data_dir = tmp_path / "data"
        server = start_server(data_dir)
        try:
            code = httpx.post(server.base_url + "/api/classes", timeout=10).json()["code"]
            policies = (
                [BotPolicy.BALANCED] * 8
                + [BotPolicy.DIAGONAL_FARMER] * 4
                + [BotPolicy.GRID_FARMER] * 3
                + [BotPolicy.IDLER] * 3
                + [BotPolicy.QUITTER] * 2
            )
            sink = LiveSink(server.base_url, code)
            summary = run_class_simulation(20, policies, 120, seed=404, sink=sink)
            assert not any(p["aborted"] for p in summary["players"])

            at = 1_999_999_999_999
            url = f"{server.base_url}/api/classes/{code}/dashboard"
            before = httpx.get(url, params={"at": at}, timeout=10).content
            events_before = httpx.get(server.base_url + "/healthz", timeout=10).json()["events"]
            assert events_before == sum(p["events"] for p in summary["players"])
        finally:
            server.kill()  # SIGKILL: no shutdown hooks, as in a crash

        server2 = start_server(data_dir, port=server.port)
        try:
            after = httpx.get(
                f"{server2.base_url}/api/classes/{code}/dashboard",
                params={"at": at},
                timeout=10,
            ).content
            events_after = httpx.get(server2.base_url + "/healthz", timeout=10).json()["events"]
            assert events_after == events_before
            assert after == before
        finally:
            server2.terminate()


# --- 6. desk-scale load -------------------------------------------------------

LOAD_SESSIONS = 20
LOAD_EVENTS = 1200  # 2 events/s for 10 simulated minutes
LOAD_BATCH = 4  # one post per 2 simulated seconds
LOAD_SPEEDUP = 20  # clock compression: the 2s batch cadence runs at 0.1s


def _load_stream(sid: str) -> list[GameEvent]:
    events = [GameEvent(sid, 1, 0, EventKind.SESSION_START, SessionStart(uniform_grid(2, 2)))]
    for i in range(LOAD_EVENTS):
        seq = i + 2
        t_ms = (i + 1) * 500
        if seq % 60 == 0:
            events.append(GameEvent(sid, seq, t_ms, EventKind.POPULATION, Population(seq)))
        else:
            events.append(GameEvent(sid, seq, t_ms, EventKind.INPUT, Input()))
    return events


def test_desk_scale_load(tmp_path):
    with criterion("desk-scale load: 20x2ev/s x10min, zero loss, dashboard p99 <100ms"):
        server = start_server(tmp_path / "data")
        try:
            base = server.base_url
            code = httpx.post(base + "/api/classes", timeout=10).json()["code"]
            sids = [
                httpx.post(
                    f"{base}/api/classes/{code}/players", json={"name": f"load-{i:02d}"}, timeout=10
                ).json()["session_id"]
                for i in range(LOAD_SESSIONS)
            ]

            acks: dict[str, int] = {}
            errors: list[str] = []

            batch_interval = (LOAD_BATCH / 2.0) / LOAD_SPEEDUP  # 2 ev/s, compressed

            def worker(sid: str):
                stream = [event_to_obj(e) for e in _load_stream(sid)]
                with httpx.Client(timeout=30) as client:
                    last = 0
                    next_send = time.perf_counter()
                    for i in range(0, len(stream), LOAD_BATCH):
                        wait = next_send - time.perf_counter()
                        if wait > 0:
                            time.sleep(wait)
                        next_send += batch_interval
                        body = {"session_id": sid, "events": stream[i : i + LOAD_BATCH]}
                        resp = client.post(base + "/api/ingest", json=body)
                        if resp.status_code != 200:
                            errors.append(f"{sid}: {resp.status_code} {resp.text}")
                            return
                        last = resp.json()["last_seq"]
                acks[sid] = last

            stop = threading.Event()
            latencies: list[float] = []

            def poller():
                with httpx.Client(timeout=30) as client:
                    while not stop.is_set():
                        t0 = time.perf_counter()
                        resp = client.get(f"{base}/api/classes/{code}/dashboard")
                        latencies.append(time.perf_counter() - t0)
                        if resp.status_code != 200:
                            errors.append(f"poller: {resp.status_code}")
                            return
                        time.sleep(0.05)

            pollers = [threading.Thread(target=poller) for _ in range(2)]
            workers = [threading.Thread(target=worker, args=(sid,)) for sid in sids]
            for t in pollers + workers:
                t.start()
            for t in workers:
                t.join()
            stop.set()
            for t in pollers:
                t.join()

            assert not errors, errors[:3]
            # zero acked-event loss
            assert all(acks[sid] == LOAD_EVENTS + 1 for sid in sids)
            health = httpx.get(base + "/healthz", timeout=10).json()
            assert health["events"] == LOAD_SESSIONS * (LOAD_EVENTS + 1)

            # dashboard reflects every acked event (well within one 5 s poll)
            dash = httpx.get(f"{base}/api/classes/{code}/dashboard", timeout=10).json()
            pops = {p["session_id"]: p["snapshot"]["population"] for p in dash["players"]}
            assert all(pops[sid] == 1200 for sid in sids)  # last POPULATION carried count 1200

            bump = GameEvent(sids[0], LOAD_EVENTS + 2, 999_999, EventKind.POPULATION, Population(4321))
            t0 = time.perf_counter()
            resp = httpx.post(
                base + "/api/ingest",
                json={"session_id": sids[0], "events": [event_to_obj(bump)]},
                timeout=10,
            )
            assert resp.json()["last_seq"] == LOAD_EVENTS + 2
            dash = httpx.get(f"{base}/api/classes/{code}/dashboard", timeout=10).json()
            reflected_in = time.perf_counter() - t0
            pops = {p["session_id"]: p["snapshot"]["population"] for p in dash["players"]}
            assert pops[sids[0]] == 4321
            assert reflected_in < 5.0

            assert len(latencies) >= 100, "not enough latency samples under load"
            p99 = statistics.quantiles(latencies, n=100)[98]
            print(
                f"\n  load: {sum(acks.values())} events acked, "
                f"{len(latencies)} dashboard polls, p99={p99 * 1000:.1f}ms",
                flush=True,
            )
            assert p99 < 0.100, f"dashboard p99 {p99 * 1000:.1f}ms"
        finally:
            server.terminate()


# --- 7. simulator conservation -------------------------------------------------


@pytest.mark.parametrize("policy", list(BotPolicy))
def test_simulator_conservation_600_ticks(policy):
    with criterion(f"simulator conservation over 600 ticks ({policy.value})"):
        world, events = world_init(
            12, 12, default_lake(12, 12), seed=77, session_id=f"mass-{policy.value.lower()[:10]}"
        )
        collected = list(events)
        for _ in range(600):
            mass0 = world.nutrient_mass()
            fert0, harv0, clamp0 = (
                world.fertilizer_added,
                world.harvest_consumed,
                world.clamp_loss,
            )
            _, evs = sim_tick(world, policy)
            collected.extend(evs)
            expected_delta = (
                (world.fertilizer_added - fert0)
                - (world.harvest_consumed - harv0)
                - (world.clamp_loss - clamp0)
            )
            assert abs((world.nutrient_mass() - mass0) - expected_delta) <= 1e-9 * max(1.0, mass0)
            assert world.money >= 0 and world.food >= 0 and world.population >= 0
        acc = new_accumulator(world.session_id, 0)
        for e in collected:
            acc = apply_event(acc, e, e.t_ms)
        assert acc.deaths_total == world.truth.deaths
        assert acc.blooms_total == world.truth.blooms
        assert len(acc.tutorials_done) == world.truth.tutorials
