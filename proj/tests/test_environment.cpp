#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "regional/environment.hpp"

using namespace regional;

namespace {

HolderConstants basic_h() { return {0.1, 2.0, 2.0, 0.5}; }

Group fig_group() {
    return make_group({RewardFunction::shifted_power(1.0, 2.0, 0.0, basic_h()),
                       RewardFunction::sqrt_affine(-0.4, 0.8, basic_h()),
                       RewardFunction::affine(0.8, 0.0, basic_h()),
                       RewardFunction::power(1.0, 2.0, 0.0, basic_h())},
                      {0.0, 1.0});
}

BanditInstance basic_instance() {
    BanditInstance inst;
    inst.groups = {fig_group(), fig_group(), fig_group(), fig_group()};
    inst.theta_true = {0.1, 0.4, 0.7, 1.0};
    inst.noise = NoiseModel::bernoulli();
    return inst;
}

BanditInstance pricing_instance() {
    const HolderConstants h{0.05, 2.0, 2.0, 1.0};
    auto grp = [&](std::vector<double> prices) {
        std::vector<RewardFunction> arms;
        for (double p : prices) arms.push_back(RewardFunction::pricing(p, h));
        return make_group(std::move(arms), {0.0, 1.0});
    };
    BanditInstance inst;
    inst.groups = {grp({0.35, 0.5}), grp({0.35, 0.5, 0.7}), grp({0.5, 0.7}),
                   grp({0.35, 0.5, 0.7, 0.95})};
    inst.theta_true = {0.35, 0.5, 0.7, 0.9};
    inst.noise = NoiseModel::gaussian(1.0);
    return inst;
}

}  // namespace

TEST_CASE("normal quantile matches tabulated values") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normal_quantile(0.0013498980316300933) == doctest::Approx(-3.0).epsilon(1e-12));
    for (double p : {0.01, 0.1, 0.3, 0.77, 0.999})
        CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-12));
}

TEST_CASE("uniform01 is in range and seed-deterministic") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(a);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == uniform01(b));
    }
}

TEST_CASE("zero-noise gaussian reward equals the true mean") {
    auto inst = basic_instance();
    inst.noise = NoiseModel::gaussian(0.0);
    const auto sched = DriftSchedule::constant();
    Rng rng(1);
    CHECK(sample_reward(inst, sched, 2, 2, 1, rng) == doctest::Approx(0.56).epsilon(1e-12));
    CHECK(sample_reward(inst, sched, 0, 0, 5, rng) == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(sample_reward(inst, sched, 3, 3, 9, rng) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("each reward sample consumes exactly one engine advance") {
    const auto inst = basic_instance();
    const auto sched = DriftSchedule::constant();
    Rng a(7), b(7);
    (void)sample_reward(inst, sched, 1, 2, 1, a);
    (void)b();
    CHECK(a() == b());
}

TEST_CASE("bernoulli empirical mean converges to the true mean") {
    const auto inst = basic_instance();
    const auto sched = DriftSchedule::constant();
    Rng rng(123);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double r = sample_reward(inst, sched, 2, 2, 1, rng);
        CHECK((r == 0.0 || r == 1.0));
        sum += r;
    }
    CHECK(std::abs(sum / n - 0.56) < 0.002);
}

TEST_CASE("gaussian empirical mean converges to the true mean") {
    const auto inst = pricing_instance();
    const auto sched = DriftSchedule::constant();
    Rng rng(99);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_reward(inst, sched, 0, 1, 1, rng);
    CHECK(std::abs(sum / n - 0.3403125) < 0.004);
}

TEST_CASE("oracle best choice and regret") {
    const auto sched = DriftSchedule::constant();
    const auto inst = basic_instance();
    const auto best = oracle_best(inst, sched, 1);
    CHECK(best.group == 3);
    CHECK(best.arm == 3);
    CHECK(best.mu == doctest::Approx(1.0));
    CHECK(instantaneous_regret(inst, sched, 1, 3, 3) == doctest::Approx(0.0));
    CHECK(instantaneous_regret(inst, sched, 1, 2, 2) == doctest::Approx(0.44));
    CHECK(instantaneous_regret(inst, sched, 1, 0, 0) == doctest::Approx(0.19));

    const auto pinst = pricing_instance();
    const auto pbest = oracle_best(pinst, sched, 1);
    CHECK(pbest.group == 0);
    CHECK(pbest.arm == 1);
    CHECK(pbest.mu == doctest::Approx(0.3403125));
    CHECK(instantaneous_regret(pinst, sched, 1, 0, 1) == doctest::Approx(0.0));
}

TEST_CASE("constant drift returns the true parameter at every step") {
    const auto inst = basic_instance();
    const auto sched = DriftSchedule::constant();
    for (long t : {1L, 10L, 100000L})
        for (int m = 0; m < 4; ++m)
            CHECK(sched.theta_at(inst, m, t) == inst.theta_true[static_cast<std::size_t>(m)]);
}

TEST_CASE("triangular drift: exact waypoints and phase offsets") {
    auto inst = basic_instance();
    const double tau = 1000.0;
    const auto sched = DriftSchedule::triangular(tau, 0.0, 1.0);
    CHECK(sched.theta_at(inst, 0, 1) == doctest::Approx(0.0));
    CHECK(sched.theta_at(inst, 0, 501) == doctest::Approx(0.5));
    CHECK(sched.theta_at(inst, 0, 1001) == doctest::Approx(1.0));
    CHECK(sched.theta_at(inst, 0, 1501) == doctest::Approx(0.5));
    CHECK(sched.theta_at(inst, 0, 2001) == doctest::Approx(0.0));
    // group m is offset by m * tau / M = 250 m steps
    CHECK(sched.theta_at(inst, 1, 1) == doctest::Approx(0.25));
    CHECK(sched.theta_at(inst, 2, 1) == doctest::Approx(0.5));
    CHECK(sched.theta_at(inst, 3, 1) == doctest::Approx(0.75));
}

TEST_CASE("drift trajectories obey the Lipschitz rate and stay in range") {
    auto inst = basic_instance();
    const double tau = 1000.0;
    for (const auto& sched : {DriftSchedule::triangular(tau, 0.0, 1.0),
                              DriftSchedule::sinusoidal(tau, 0.0, 1.0),
                              DriftSchedule::triangular(tau, 0.3, 0.9),
                              DriftSchedule::sinusoidal(tau, 0.3, 0.9)}) {
        for (int m = 0; m < 4; ++m) {
            double prev = sched.theta_at(inst, m, 1);
            for (long t = 2; t <= 5000; ++t) {
                const double cur = sched.theta_at(inst, m, t);
                CHECK(std::abs(cur - prev) <= 1.0 / tau + 1e-12);
                CHECK(cur >= sched.low - 1e-12);
                CHECK(cur <= sched.high + 1e-12);
                prev = cur;
            }
        }
    }
}

TEST_CASE("reward stream is reproducible from the seed") {
    const auto inst = pricing_instance();
    const auto sched = DriftSchedule::triangular(1000.0, 0.3, 0.9);
    Rng a(2024), b(2024);
    for (long t = 1; t <= 2000; ++t) {
        const int m = static_cast<int>(t % 4);
        const int k = static_cast<int>(t % inst.groups[static_cast<std::size_t>(m)].arms.size());
        CHECK(sample_reward(inst, sched, m, k, t, a) == sample_reward(inst, sched, m, k, t, b));
    }
}

TEST_CASE("validate_instance rejects bad instances") {
    CHECK_THROWS_AS(validate_instance(BanditInstance{}), std::invalid_argument);

    auto inst = basic_instance();
    validate_instance(inst);  // sane baseline must pass

    auto short_theta = inst;
    short_theta.theta_true.pop_back();
    CHECK_THROWS_AS(validate_instance(short_theta), std::invalid_argument);

    auto outside = inst;
    outside.theta_true[1] = 1.5;
    CHECK_THROWS_AS(validate_instance(outside), std::invalid_argument);
}

TEST_CASE("sample_reward rejects out-of-range indices") {
    const auto inst = basic_instance();
    const auto sched = DriftSchedule::constant();
    Rng rng(1);
    CHECK_THROWS_AS(sample_reward(inst, sched, 4, 0, 1, rng), std::out_of_range);
    CHECK_THROWS_AS(sample_reward(inst, sched, 0, 4, 1, rng), std::out_of_range);
}
