import json
import math

import pytest

import regional_bandits as rb

HOLDER = {"d1": 0.1, "gamma1": 2.0, "d2": 2.0, "gamma2": 0.5}


def fig_group():
    return rb.make_group(
        [
            rb.RewardFunction.shifted_power(1.0, 2.0, 0.0, HOLDER),
            rb.RewardFunction.sqrt_affine(-0.4, 0.8, HOLDER),
            rb.RewardFunction.affine(0.8, 0.0, HOLDER),
            rb.RewardFunction.power(1.0, 2.0, 0.0, HOLDER),
        ],
        rb.Interval(0.0, 1.0),
    )


def test_reward_functions():
    f = rb.RewardFunction.affine(0.8, 0.0, HOLDER)
    assert f.evaluate(0.5) == pytest.approx(0.4)
    assert f.invert(0.4, rb.Interval(0.0, 1.0)) == pytest.approx(0.5)
    p = rb.RewardFunction.pricing(0.5, HOLDER)
    assert p.evaluate(0.35) == pytest.approx(0.3403125)


def test_group_aggregates_and_envelope():
    g = fig_group()
    assert g.num_arms == 4
    assert g.d1_bar == pytest.approx(math.sqrt(10.0))
    assert g.xi == pytest.approx(0.125)
    value, arm = rb.envelope(g, 0.7)
    assert value == pytest.approx(0.56)
    assert arm == 2


def test_regions_and_biased_distance():
    g = fig_group()
    regions = rb.compute_regions(g, 1e-4)
    assert len(regions) == 4
    # arm 3's region ends at the analytic boundary 0.8
    lo, hi = regions[2][0]
    assert hi == pytest.approx(0.8, abs=2e-4)
    assert rb.biased_distance(g, 1.0) == pytest.approx(0.2, abs=1e-3)


def test_padding():
    g = fig_group()
    assert rb.padding(g, 1.0 / math.log(2.0), 2, 1) == pytest.approx(2.0 * 10.0**0.25)
    assert rb.sw_padding(g, 5.0, 2000, 100, 3) == rb.padding(g, 5.0, 100, 3)
    assert math.isinf(rb.padding(g, 5.0, 10, 0))


def test_verify_holder():
    f = rb.RewardFunction.affine(0.8, 0.0, HOLDER)
    assert rb.verify_holder(f, rb.Interval(0.0, 1.0), 1e-2)["pass"]


def test_presets_and_analysis():
    names = rb.preset_names()
    assert len(names) == 6
    cfg_text = rb.preset_config("basic-stationary")
    cfg = json.loads(cfg_text)
    assert cfg["horizon"] == 10000
    assert rb.validate_config(cfg_text) == []

    g = rb.gaps(cfg_text)
    assert g[3] == pytest.approx(0.0)
    assert g[2] == pytest.approx(0.44)

    bound = rb.regret_upper_bound(cfg_text, 1e4)
    assert bound["optimal_group"] == 3
    assert bound["total"] > 0

    lo = rb.regret_lower_bound(cfg_text)
    assert lo[0] > 0
    assert rb.window_rule(1000.0, cfg_text) == 32


def test_run_experiment_summaries():
    cfg = json.loads(rb.preset_config("basic-stationary"))
    cfg["horizon"] = 200
    cfg["replications"] = 3
    cfg["policies"] = [{"name": "ucb-g"}, {"name": "oracle"}]
    runs = rb.run_experiment(json.dumps(cfg), 1)
    assert [r["policy"] for r in runs] == ["ucb-g", "oracle"]
    assert len(runs[0]["t"]) == 200
    assert all(x == 0.0 for x in runs[1]["cum_mean"])
    # cumulative mean regret is nondecreasing
    cum = runs[0]["cum_mean"]
    assert all(b >= a for a, b in zip(cum, cum[1:]))


def test_run_and_write(tmp_path):
    cfg = json.loads(rb.preset_config("basic-stationary"))
    cfg["horizon"] = 50
    cfg["replications"] = 2
    cfg["out_dir"] = str(tmp_path / "out")
    assert rb.run_and_write(json.dumps(cfg), 1) == 0
    traces = (tmp_path / "out" / "traces.csv").read_text().splitlines()
    assert traces[0] == "policy,replication,t,group,arm,reward,inst_regret,cum_regret"
    assert len(traces) == 1 + 2 * 2 * 50
    summary = (tmp_path / "out" / "summary.csv").read_text().splitlines()
    assert summary[0] == "series,t,mean,stderr"


def test_validation_problems():
    cfg = json.loads(rb.preset_config("basic-stationary"))
    cfg["instance"]["groups"][0]["theta"] = 2.0
    problems = rb.validate_config(json.dumps(cfg))
    assert problems and "theta" in problems[0]
