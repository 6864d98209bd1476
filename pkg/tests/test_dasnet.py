"""Simulated store, sampling plans, publication arms, and experiments."""

import random

import pytest

from helpers import shared_srs
from pmpdas.dasnet import (
    BlockContext, ConfigMode, DasNetError, ExperimentConfig,
    ExperimentSession, SimDht, Status, build_objects, effective_samples,
    make_sampling_plan, publish, required_samples, sample_and_verify,
)
from pmpdas.grid import Coordinate, GridDims, build_grid


def _context(seed=80):
    rng = random.Random(seed)
    dims = GridDims(2, 4, 2)
    data = bytes(rng.randrange(256) for _ in range(dims.data_capacity_bytes))
    grid = build_grid(data, dims, shared_srs(7))
    return BlockContext(b"test-block", grid, shared_srs(7), group_size=4)


CTX = _context()


# ---------------------------------------------------------------------------
# SimDht

def test_put_places_replication_factor_distinct_replicas():
    dht = SimDht(10, replication_factor=3)
    assert dht.put(b"k", b"v") == 3
    holders = dht.replica_peers(b"k")
    assert len(holders) == len(set(holders)) == 3
    assert dht.get(b"k") == b"v"


def test_placement_is_key_determined():
    a, b = SimDht(10, 3), SimDht(10, 3)
    a.put(b"k1", b"x")
    b.put(b"other", b"y")
    b.put(b"k1", b"x")
    assert a.replica_peers(b"k1") == b.replica_peers(b"k1")


def test_capacity_sheds_replicas_but_never_drops_objects():
    dht = SimDht(4, replication_factor=3, peer_capacity=1)
    for i in range(8):
        placed = dht.put(b"key-%d" % i, b"v")
        assert placed >= 1
    for i in range(8):
        assert dht.get(b"key-%d" % i) == b"v"


def test_get_respects_liveness():
    dht = SimDht(5, replication_factor=2)
    dht.put(b"k", b"v")
    for peer in dht.replica_peers(b"k"):
        dht.alive[peer] = False
    assert dht.get(b"k") is None
    obj, attempts = dht.get_with_retries(b"k", retry_budget=3)
    assert obj is None and attempts == 2  # both replicas tried


def test_retry_budget_limits_attempts():
    dht = SimDht(10, replication_factor=5)
    dht.put(b"k", b"v")
    order = dht.replica_peers(b"k")
    for peer in order[:4]:
        dht.alive[peer] = False
    obj, attempts = dht.get_with_retries(b"k", retry_budget=3)
    assert obj is None and attempts == 4  # budget exhausted before replica 5
    obj, attempts = dht.get_with_retries(b"k", retry_budget=4)
    assert obj == b"v" and attempts == 5


def test_churn_kills_a_seeded_prefix():
    def dead_set(churn, seed):
        dht = SimDht(20, 3)
        dht.kill_fraction(churn, seed)
        return {p for p in range(20) if not dht.alive[p]}

    assert dead_set(0.0, 1) == set()
    small, large = dead_set(0.1, 1), dead_set(0.4, 1)
    assert len(small) == 2 and len(large) == 8
    assert small <= large  # monotone for a fixed seed
    assert dead_set(0.4, 1) == large  # deterministic
    assert dead_set(0.4, 2) != large or dead_set(0.4, 3) != large
    with pytest.raises(DasNetError):
        dead_set(1.0, 1)


# ---------------------------------------------------------------------------
# Sampling arithmetic

def test_sampling_plan_is_reproducible_and_distinct():
    dims = CTX.grid.dims
    plan = make_sampling_plan(7, dims, 6)
    again = make_sampling_plan(7, dims, 6)
    assert plan.coordinates == again.coordinates
    assert len(set(plan.coordinates)) == 6
    for coord in plan.coordinates:
        assert coord.row < dims.rows and coord.col < dims.extended_cols
    assert make_sampling_plan(8, dims, 6).coordinates != plan.coordinates
    with pytest.raises(DasNetError):
        make_sampling_plan(7, dims, dims.extended_cells + 1)


def test_effective_and_required_samples():
    assert effective_samples(16, 4) == 4
    assert effective_samples(17, 4) == 4
    assert effective_samples(3, 4) == 0
    assert required_samples(10, 4) == 40
    assert required_samples(5, 1) == 5
    assert effective_samples(required_samples(7, 4), 4) == 7
    with pytest.raises(DasNetError):
        effective_samples(4, 0)
    with pytest.raises(DasNetError):
        required_samples(-1, 4)


# ---------------------------------------------------------------------------
# Publication and retrieval

def test_object_counts_per_mode():
    counts = {ConfigMode.VANILLA: 16, ConfigMode.BATCHED_SINGLE: 16,
              ConfigMode.GROUPED_ONLY: 4, ConfigMode.PMP: 4}
    for mode, expected in counts.items():
        objects = build_objects(CTX, mode)
        assert len(objects) == expected
    # extended_cells / g exactly, the grouped object-count identity
    assert counts[ConfigMode.PMP] == CTX.grid.dims.extended_cells // 4


def test_publish_reports_proof_and_object_bytes():
    for mode in ConfigMode:
        dht = SimDht(10, 3)
        result = publish(CTX, mode, dht)
        if mode is ConfigMode.GROUPED_ONLY:
            assert result.proof_bytes == result.object_count * 48 * 4
        else:
            assert result.proof_bytes == result.object_count * 48
        if mode in (ConfigMode.VANILLA, ConfigMode.BATCHED_SINGLE):
            assert result.object_bytes == 16 * 80


def test_publish_empty_object_set():
    dht = SimDht(4, 2)
    result = publish(CTX, ConfigMode.PMP, dht, objects={})
    assert result.object_count == 0 and result.proof_bytes == 0


def test_batched_objects_identical_to_vanilla():
    assert build_objects(CTX, ConfigMode.VANILLA) == \
        build_objects(CTX, ConfigMode.BATCHED_SINGLE)


def test_all_modes_verify_honest_objects():
    plan = make_sampling_plan(3, CTX.grid.dims, 8)
    for mode in ConfigMode:
        dht = SimDht(10, 3)
        publish(CTX, mode, dht)
        outcome = sample_and_verify(plan, mode, dht, CTX)
        assert outcome.hit_rate == 1.0
        assert outcome.count(Status.VERIFIED) == 8
        assert outcome.count(Status.VERIFY_FAILED) == 0
    # grouped modes touch at most ceil(samples / g) * rows distinct objects
    grouped = sample_and_verify(plan, ConfigMode.PMP, dht, CTX)
    assert grouped.distinct_groups <= 8
    assert grouped.effective_independent_samples == 2


def test_fetch_failure_recorded_per_coordinate():
    dht = SimDht(10, 2)
    publish(CTX, ConfigMode.VANILLA, dht)
    dht.alive = [False] * dht.n_peers
    plan = make_sampling_plan(4, CTX.grid.dims, 5)
    outcome = sample_and_verify(plan, ConfigMode.VANILLA, dht, CTX)
    assert outcome.hit_rate == 0.0
    assert outcome.count(Status.FETCH_FAILED) == 5


def test_tampered_stored_object_fails_verification():
    for mode in ConfigMode:
        dht = SimDht(10, 3)
        publish(CTX, mode, dht)
        # corrupt every stored copy of every object
        for store in dht.stores:
            for key in store:
                blob = bytearray(store[key])
                blob[-1] ^= 0x01
                store[key] = bytes(blob)
        plan = make_sampling_plan(5, CTX.grid.dims, 6)
        outcome = sample_and_verify(plan, mode, dht, CTX)
        assert outcome.count(Status.VERIFIED) == 0, mode
        assert outcome.count(Status.VERIFY_FAILED) == 6, mode


def test_truncated_object_is_a_verify_failure_not_a_crash():
    dht = SimDht(10, 3)
    publish(CTX, ConfigMode.PMP, dht)
    for store in dht.stores:
        for key in store:
            store[key] = store[key][:-3]
    plan = make_sampling_plan(6, CTX.grid.dims, 4)
    outcome = sample_and_verify(plan, ConfigMode.PMP, dht, CTX)
    assert outcome.count(Status.VERIFY_FAILED) == 4


# ---------------------------------------------------------------------------
# Experiments

def _small_config():
    return ExperimentConfig(rows=2, cols=4, peers=20, replication=3,
                            peer_capacity=None, samples=8,
                            seeds=(1, 2), churn=(0.0, 0.3))


def test_experiment_run_is_deterministic():
    cfg = _small_config()
    a = ExperimentSession(cfg).run(ConfigMode.PMP, 0.3, 2)
    b = ExperimentSession(cfg).run(ConfigMode.PMP, 0.3, 2)
    assert a == b


def test_experiment_zero_churn_full_hit_rate():
    cfg = _small_config()
    session = ExperimentSession(cfg)
    for mode in ConfigMode:
        row = session.run(mode, 0.0, 1)
        assert row["hit_rate"] == 1.0
        assert row["verify_failures"] == 0


def test_batched_and_vanilla_hit_rates_identical_per_seed():
    cfg = _small_config()
    session = ExperimentSession(cfg)
    for seed in (1, 2, 3):
        v = session.run(ConfigMode.VANILLA, 0.3, seed)
        b = session.run(ConfigMode.BATCHED_SINGLE, 0.3, seed)
        assert v["hit_rate"] == b["hit_rate"]


def test_config_parsing(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(
        "# comment\n"
        "rows = 2\n"
        "cols=4\n"
        "peer_capacity=none\n"
        "churn=0.0,0.25\n"
        "seeds=1-3,9\n"
        "modes=pmp,vanilla\n")
    cfg = ExperimentConfig.from_file(path)
    assert cfg.rows == 2 and cfg.cols == 4
    assert cfg.peer_capacity is None
    assert cfg.churn == (0.0, 0.25)
    assert cfg.seeds == (1, 2, 3, 9)
    assert cfg.modes == (ConfigMode.PMP, ConfigMode.VANILLA)

    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense\n")
    with pytest.raises(DasNetError):
        ExperimentConfig.from_file(bad)
    bad.write_text("unknown_key=1\n")
    with pytest.raises(DasNetError):
        ExperimentConfig.from_file(bad)
    with pytest.raises(DasNetError):
        ConfigMode.parse("bogus")
