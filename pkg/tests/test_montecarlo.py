import numpy as np
import pytest

from nnv import (
    NonAdmissibleMetric,
    PowerForm,
    SimConfig,
    aggregate,
    correlation_experiment,
    monotonicity_search,
    pick_winner,
    random_tally,
    w,
)
from nnv.montecarlo import (
    BLOCK_SIZE,
    IntegerUniform,
    TABLE1_METRICS,
    Uniform,
    parse_distribution,
    sample_tallies,
    table_sweep,
)
from nnv.satisfaction import SBAR, max_satisfaction_winner


def test_random_tally_support_and_qualification():
    rng = np.random.default_rng(3)
    for _ in range(200):
        t = random_tally(rng, 4)
        assert ((t.P >= 0) & (t.P <= 1) & (t.N >= 0) & (t.N <= 1)).all()
        assert t.qualified.any()


def test_random_tally_deterministic():
    a = [random_tally(np.random.default_rng(11), 3) for _ in range(3)]
    b = [random_tally(np.random.default_rng(11), 3) for _ in range(3)]
    assert a == b


def test_rejection_rate_m3():
    # brute force: P(one candidate disqualified) = 1/2, so all three: 1/8
    rng = np.random.default_rng(5)
    n = 200_000
    _, _, rejected = sample_tallies(rng, n, 3)
    assert rejected / (n + rejected) == pytest.approx(1 / 8, abs=0.005)


def test_integer_distribution_and_parsing():
    assert parse_distribution("uniform") == Uniform()
    assert parse_distribution("uniform:0,5") == Uniform(0, 5)
    assert parse_distribution("integer:0,3") == IntegerUniform(0, 3)
    for bad in ("gauss", "uniform:1", "integer:5,2"):
        with pytest.raises(ValueError):
            parse_distribution(bad)
    P, N, _ = sample_tallies(np.random.default_rng(0), 1000, 3, IntegerUniform(0, 3))
    assert set(np.unique(P)) <= {0, 1, 2, 3}


def test_redraw_cap():
    class Hopeless:
        def sample(self, rng, n, m):
            return np.zeros((n, m)), np.ones((n, m))

    with pytest.raises(RuntimeError):
        sample_tallies(np.random.default_rng(0), 2, 2, Hopeless(), max_redraws=5)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(m=1, trials=10)
    with pytest.raises(ValueError):
        SimConfig(m=3, trials=0)
    with pytest.raises(ValueError):
        SimConfig(m=3, trials=1, seed=-1)
    with pytest.raises(ValueError):
        SimConfig(m=3, trials=1, variant="T")


def test_non_admissible_needs_force():
    with pytest.raises(NonAdmissibleMetric):
        correlation_experiment(SimConfig(3, 100, metrics=(w(2, 1),)))
    with pytest.raises(NonAdmissibleMetric):
        correlation_experiment(SimConfig(5, 100, metrics=(PowerForm(),)))
    rep = correlation_experiment(SimConfig(3, 100, metrics=(w(2, 1),), force=True))
    assert 0 <= rep.rates["W_2^1"] <= 1


@pytest.mark.parametrize("m", [3, 4, 5, 8, 20])
def test_sbar_popularity_rate_is_one(m):
    rep = correlation_experiment(SimConfig(m, 20_000, seed=m, metrics=(w(0, 1),), variant=SBAR))
    assert rep.matches == (20_000,)


def test_single_trial_rate_is_binary():
    rep = correlation_experiment(SimConfig(3, 1, metrics=(w(1, 1),)))
    assert rep.rates["W_1^1"] in (0.0, 1.0)


def test_rates_bounded_and_report_dict():
    rep = correlation_experiment(SimConfig(4, 5000, seed=9))
    d = rep.to_dict()
    assert [x["metric"] for x in d["metrics"]] == [k.label for k in TABLE1_METRICS]
    for x in d["metrics"]:
        assert 0 <= x["matches"] <= x["trials"] == 5000
        assert 0 <= x["rate"] <= 1


def test_block_results_match_per_trial_recount():
    """Recompute a small experiment trial by trial with the library's scalar
    winner functions and compare with the vectorized match counts."""
    cfg = SimConfig(3, 3000, seed=21, force=True)
    rep = correlation_experiment(cfg)
    rng = np.random.default_rng(np.random.SeedSequence(21, spawn_key=(0,)))
    P, N, _ = sample_tallies(rng, 3000, 3)
    from nnv import Tally
    counts = [0] * len(TABLE1_METRICS)
    for p, n in zip(P, N):
        t = Tally.from_arrays(p, n)
        best = set(max_satisfaction_winner(t).tied)
        for j, kind in enumerate(TABLE1_METRICS):
            counts[j] += bool(set(pick_winner(t, kind).tied) & best)
    assert tuple(counts) == rep.matches


def test_independent_of_worker_count():
    cfg = SimConfig(5, 3 * BLOCK_SIZE + 17, seed=1234)
    one = correlation_experiment(cfg, workers=1)
    many = correlation_experiment(cfg, workers=3)
    assert one.matches == many.matches and one.rejected == many.rejected


def test_trend_at_moderate_size():
    reps = {r.config.m: r.rates for r in table_sweep((3, 20), 100_000, seed=2, force=True)}
    assert reps[20]["W_2^1"] > reps[3]["W_2^1"]
    assert reps[20]["W_0^1"] < reps[3]["W_0^1"]


# -- monotonicity --------------------------------------------------------------------

def test_counterexample_for_c1_b1():
    ce = monotonicity_search(1, 1, 3, trials=10_000, seed=0)
    assert ce is not None and ce.verify()
    assert pick_winner(aggregate(ce.before), w(1, 1)).name == ce.winner
    assert pick_winner(aggregate(ce.after), w(1, 1)).name == ce.rival
    for b0, b1 in zip(ce.before.ballots, ce.after.ballots):
        assert abs(b1.magnitude - 10) < 1e-9 and abs(b0.magnitude - 10) < 1e-9


def test_verify_rejects_tampered_counterexample():
    ce = monotonicity_search(1, 1, 3, trials=10_000, seed=0)
    from dataclasses import replace
    assert not replace(ce, rival=ce.winner).verify()


def test_popularity_has_no_counterexample():
    assert monotonicity_search(1, 0, 3, trials=1000, seed=7) is None


def test_zero_trials():
    assert monotonicity_search(1, 1, 3, trials=0) is None
    with pytest.raises(ValueError):
        monotonicity_search(1, 1, 2, trials=10)
