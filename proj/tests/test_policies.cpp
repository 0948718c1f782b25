#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "regional/policies.hpp"

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

Group identity_group() {
    return make_group({RewardFunction::affine(1.0, 0.0, {1.0, 1.0, 1.0, 1.0})}, {0.0, 1.0});
}

BanditInstance basic_instance() {
    BanditInstance inst;
    inst.groups = {fig_group(), fig_group(), fig_group(), fig_group()};
    inst.theta_true = {0.1, 0.4, 0.7, 1.0};
    inst.noise = NoiseModel::bernoulli();
    return inst;
}

BanditInstance classic_instance() {
    BanditInstance inst;
    inst.groups = {identity_group(), identity_group(), identity_group(), identity_group()};
    inst.theta_true = {0.2, 0.4, 0.6, 0.8};
    inst.noise = NoiseModel::bernoulli();
    return inst;
}

// drive two policies with a shared reward stream and assert identical choices
void check_policies_coincide(Policy& a, Policy& b, const BanditInstance& inst, long horizon,
                             std::uint64_t seed) {
    const auto sched = DriftSchedule::constant();
    Rng ra(seed), rb(seed), renv(seed + 1000);
    for (long t = 1; t <= horizon; ++t) {
        const auto ca = a.select(t, ra);
        const auto cb = b.select(t, rb);
        REQUIRE(ca == cb);
        const double r = sample_reward(inst, sched, ca.first, ca.second, t, renv);
        a.update(ca.first, ca.second, r);
        b.update(cb.first, cb.second, r);
    }
}

}  // namespace

TEST_CASE("padding closed form") {
    const auto g = fig_group();
    // scale d2 * d1_bar^gamma2 = 2 * 10^(1/4); exponent argument 1
    const double alpha = 1.0 / std::log(2.0);
    CHECK(padding(g, alpha, 2, 1) == doctest::Approx(3.5565588200778455).epsilon(1e-14));
    // n = 0 forces exploration
    CHECK(std::isinf(padding(g, 5.0, 10, 0)));

    const auto id = identity_group();
    CHECK(padding(id, 2.0, 100, 7) ==
          doctest::Approx(std::pow(2.0 * std::log(100.0) / 7.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("padding scales as n^-xi and grows with t") {
    const auto g = fig_group();
    CHECK(padding(g, 5.0, 100, 20) ==
          doctest::Approx(padding(g, 5.0, 100, 10) * std::pow(2.0, -g.xi)).epsilon(1e-12));
    for (long n = 1; n < 100; n += 7) CHECK(padding(g, 5.0, 100, n + 1) < padding(g, 5.0, 100, n));
    for (long t = 2; t < 100; t += 7) CHECK(padding(g, 5.0, t + 1, 5) > padding(g, 5.0, t, 5));
}

TEST_CASE("sliding-window padding caps the log term at the window") {
    const auto g = fig_group();
    CHECK(sw_padding(g, 5.0, 50, 100, 3) == padding(g, 5.0, 50, 3));
    CHECK(sw_padding(g, 5.0, 2000, 100, 3) == padding(g, 5.0, 100, 3));
    CHECK(std::isinf(sw_padding(g, 5.0, 50, 100, 0)));

    const auto id = identity_group();
    // alpha * ln(min(t, tau_w)) / n = 4  =>  sqrt = 2
    const double alpha = 4.0 / std::log(100.0);
    CHECK(sw_padding(id, alpha, 5000, 100, 1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("ucb-g initialization visits each group once") {
    const auto inst = basic_instance();
    UcbGPolicy det(inst.groups, {5, 5, 5, 5}, true);
    Rng rng(3);
    for (long t = 1; t <= 4; ++t) {
        const auto [m, k] = det.select(t, rng);
        CHECK(m == static_cast<int>(t) - 1);
        CHECK(k == 0);  // deterministic init pins the arm
    }

    // stochastic init draws the arm uniformly
    UcbGPolicy sto(inst.groups, {5, 5, 5, 5});
    std::vector<int> freq(4, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) freq[static_cast<std::size_t>(sto.select(1, rng).second)] += 1;
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(freq[static_cast<std::size_t>(k)] / static_cast<double>(n) - 0.25) < 0.01);
}

TEST_CASE("ucb-g update tracks the most-played arm's inverted mean") {
    const auto inst = basic_instance();
    UcbGPolicy pol(inst.groups, {5, 5, 5, 5}, true);
    pol.update(0, 2, 0.4);  // arm 3: mu = 0.8 theta, so theta_hat = 0.5
    const auto& gs = pol.snapshot().groups[0];
    CHECK(gs.count == 1);
    CHECK(gs.most_played == 2);
    CHECK(gs.theta_hat == doctest::Approx(0.5));

    // inversion clamps to the reward range before inverting
    UcbGPolicy pol2(inst.groups, {5, 5, 5, 5}, true);
    pol2.update(1, 3, 2.0);  // mu = theta^2 <= 1, so theta_hat clamps to 1
    CHECK(pol2.snapshot().groups[1].theta_hat == doctest::Approx(1.0));

    // group index = envelope(theta_hat) + padding
    const double expected = envelope(inst.groups[0], 0.5).first + padding(inst.groups[0], 5, 10, 1);
    CHECK(pol.group_index(0, 10) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(std::isinf(pol.group_index(1, 10)));
}

TEST_CASE("ucb-g after init picks the highest group index") {
    const auto inst = basic_instance();
    UcbGPolicy pol(inst.groups, {5, 5, 5, 5}, true);
    Rng rng(11);
    pol.update(0, 0, 0.81);
    pol.update(1, 0, 0.36);
    pol.update(2, 0, 0.09);
    pol.update(3, 0, 0.0);
    double best = -1;
    int best_m = -1;
    for (int m = 0; m < 4; ++m) {
        if (pol.group_index(m, 5) > best) {
            best = pol.group_index(m, 5);
            best_m = m;
        }
    }
    const auto [m, k] = pol.select(5, rng);
    CHECK(m == best_m);
    CHECK(k == envelope(inst.groups[static_cast<std::size_t>(m)],
                        pol.snapshot().groups[static_cast<std::size_t>(m)].theta_hat)
                   .second);
}

TEST_CASE("alpha must exceed the group's arm count") {
    const auto inst = basic_instance();
    CHECK_THROWS_AS(UcbGPolicy(inst.groups, {4, 5, 5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(SwUcbGPolicy(inst.groups, {5, 5, 5, 4}, 100), std::invalid_argument);
    CHECK_THROWS_AS(UcbGPolicy(inst.groups, {5, 5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(SwUcbGPolicy(inst.groups, {5, 5, 5, 5}, 0), std::invalid_argument);
}

TEST_CASE("ucb-g and ucb1 coincide on single-arm identity groups") {
    const auto inst = classic_instance();
    UcbGPolicy a(inst.groups, {2, 2, 2, 2});
    Ucb1Policy b(inst.groups, 2.0);
    check_policies_coincide(a, b, inst, 10000, 17);
}

TEST_CASE("sw-ucb-g with a window covering the horizon equals ucb-g") {
    const auto inst = basic_instance();
    const long T = 3000;
    UcbGPolicy a(inst.groups, {5, 5, 5, 5});
    SwUcbGPolicy b(inst.groups, {5, 5, 5, 5}, T);
    check_policies_coincide(a, b, inst, T, 23);
}

TEST_CASE("sw-ucb with a window covering the horizon equals ucb1") {
    const auto inst = basic_instance();
    const long T = 2000;
    Ucb1Policy a(inst.groups, 2.0);
    SwUcbPolicy b(inst.groups, T, 2.0);
    check_policies_coincide(a, b, inst, T, 29);
}

TEST_CASE("sliding window evicts the oldest plays") {
    const auto inst = basic_instance();
    SwUcbGPolicy pol(inst.groups, {5, 5, 5, 5}, 2);
    pol.update(0, 0, 1.0);
    pol.update(0, 1, 0.0);
    pol.update(0, 0, 0.5);  // evicts the first play
    CHECK(pol.windowed_group_count(0) == 2);
    CHECK(pol.windowed_arm_count(0, 0) == 1);
    CHECK(pol.windowed_arm_count(0, 1) == 1);
    CHECK(pol.windowed_arm_mean(0, 0) == doctest::Approx(0.5));
    CHECK(pol.windowed_arm_mean(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("window of one forces re-exploration of unseen groups") {
    std::vector<Group> groups = {identity_group(), identity_group()};
    SwUcbGPolicy pol(groups, {2, 2}, 1);
    Rng rng(5);
    pol.update(0, 0, 0.3);
    pol.update(1, 0, 0.9);  // window 1: only this play remains
    CHECK(pol.windowed_group_count(0) == 0);
    CHECK(pol.windowed_group_count(1) == 1);
    CHECK(pol.select(3, rng).first == 0);  // zero-count group has an infinite index
}

TEST_CASE("ucb1 index and tie rule") {
    const auto inst = classic_instance();
    Ucb1Policy pol(inst.groups, 2.0);
    Rng rng(7);
    // unplayed arms have infinite index; the smallest flat index wins
    CHECK(pol.select(1, rng) == std::make_pair(0, 0));
    pol.update(0, 0, 1.0);
    CHECK(pol.select(2, rng) == std::make_pair(1, 0));
    pol.update(1, 0, 0.0);
    CHECK(pol.arm_index(0, 2) ==
          doctest::Approx(1.0 + std::sqrt(2.0 * std::log(2.0))).epsilon(1e-14));
    CHECK(std::isinf(pol.arm_index(2, 2)));
}

TEST_CASE("random policy is uniform over the flattened arms") {
    const auto inst = basic_instance();  // 16 arms
    RandomPolicy pol(inst.groups);
    Rng rng(31);
    std::vector<int> freq(16, 0);
    const int n = 160000;
    for (int i = 0; i < n; ++i) {
        const auto [m, k] = pol.select(1, rng);
        freq[static_cast<std::size_t>(m * 4 + k)] += 1;
    }
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(freq[static_cast<std::size_t>(i)] / static_cast<double>(n) - 1.0 / 16) <
              0.005);
}

TEST_CASE("selection sequence is reproducible from the seed") {
    const auto inst = basic_instance();
    const auto sched = DriftSchedule::constant();
    for (int rep = 0; rep < 2; ++rep) {
        UcbGPolicy a(inst.groups, {5, 5, 5, 5});
        UcbGPolicy b(inst.groups, {5, 5, 5, 5});
        Rng ra(100 + rep), rb(100 + rep), ea(900 + rep), eb(900 + rep);
        for (long t = 1; t <= 2000; ++t) {
            const auto ca = a.select(t, ra);
            const auto cb = b.select(t, rb);
            REQUIRE(ca == cb);
            const double xa = sample_reward(inst, sched, ca.first, ca.second, t, ea);
            const double xb = sample_reward(inst, sched, cb.first, cb.second, t, eb);
            REQUIRE(xa == xb);
            a.update(ca.first, ca.second, xa);
            b.update(cb.first, cb.second, xb);
        }
    }
}
