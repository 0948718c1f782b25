#include "regional/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regional {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> gaps(const BanditInstance& inst) {
    validate_instance(inst);
    std::vector<double> env(inst.groups.size());
    double best = -kInf;
    for (std::size_t m = 0; m < inst.groups.size(); ++m) {
        env[m] = envelope(inst.groups[m], inst.theta_true[m]).first;
        best = std::max(best, env[m]);
    }
    std::vector<double> out(env.size());
    for (std::size_t m = 0; m < env.size(); ++m) out[m] = best - env[m];
    return out;
}

BoundReport regret_upper_bound(const BanditInstance& inst, const std::vector<double>& alphas,
                               double T, double region_grid_step) {
    validate_instance(inst);
    if (alphas.size() != inst.groups.size())
        throw std::invalid_argument("need one alpha per group");
    for (std::size_t m = 0; m < inst.groups.size(); ++m)
        if (!(alphas[m] > inst.groups[m].num_arms()))
            throw std::invalid_argument("alpha_m must exceed the group's arm count");

    BoundReport rep;
    rep.gaps = gaps(inst);
    rep.optimal_group = static_cast<int>(
        std::min_element(rep.gaps.begin(), rep.gaps.end()) - rep.gaps.begin());

    rep.alpha = 0.0;
    for (std::size_t m = 0; m < alphas.size(); ++m)
        rep.alpha = std::max(rep.alpha, 2.0 * alphas[m] / inst.groups[m].num_arms());

    // Group-selection term: sum over suboptimal groups of
    //   alpha_m ln T / psi_m(Delta_m / 2) + 2 / (alpha - 2)
    // with psi_m(y) = (y / (d2 d1_bar^gamma2))^(1/xi).
    for (std::size_t m = 0; m < inst.groups.size(); ++m) {
        if (static_cast<int>(m) == rep.optimal_group) continue;
        if (rep.gaps[m] <= 0.0)
            throw std::invalid_argument("degenerate tie: a suboptimal group has zero gap");
        const Group& g = inst.groups[m];
        const double scale = g.d2 * std::pow(g.d1_bar, g.gamma2);
        const double psi = std::pow(rep.gaps[m] / 2.0 / scale, 1.0 / g.xi);
        rep.group_term += alphas[m] * std::log(T) / psi + 2.0 / (rep.alpha - 2.0);
    }

    // In-group term: vanishes for a single-arm optimal group.
    const Group& gstar = inst.groups[static_cast<std::size_t>(rep.optimal_group)];
    if (gstar.num_arms() == 1) {
        rep.delta = kInf;
        rep.in_group_term = 0.0;
    } else {
        const auto geo = compute_regions(gstar, region_grid_step);
        rep.delta = biased_distance(geo, inst.theta_true[static_cast<std::size_t>(rep.optimal_group)]);
        if (std::isinf(rep.delta)) {
            rep.in_group_term = 0.0;
        } else {
            const double k = gstar.num_arms();
            const double e = std::pow(rep.delta / gstar.d1_bar, 2.0 * gstar.gamma1);
            rep.in_group_term = 2.0 * (1.0 - std::exp(-(2.0 * T / k) * e)) /
                                (std::exp((2.0 / k) * e) - 1.0);
        }
    }
    rep.total = rep.group_term + rep.in_group_term;
    return rep;
}

double worst_case_shape(int num_groups, int k_star, double xi, double xi_star, double T,
                        double c1, double c2) {
    if (c1 <= 0.0 || c2 <= 0.0) throw std::invalid_argument("shape constants must be > 0");
    return c1 * std::pow(num_groups * std::log(T), xi) * std::pow(T, 1.0 - xi) +
           c2 * std::pow(static_cast<double>(k_star), xi_star) * std::pow(T, 1.0 - xi_star);
}

LowerBoundReport regret_lower_bound(const BanditInstance& inst) {
    validate_instance(inst);
    // unit-variance gaussian: KL(a, b) = (a - b)^2 / 2, and KL_inf to a target
    // mean coincides with the KL at that mean.
    auto kl = [](double a, double b) { return (a - b) * (a - b) / 2.0; };

    std::vector<double> env(inst.groups.size());
    std::size_t mstar = 0;
    for (std::size_t m = 0; m < inst.groups.size(); ++m) {
        env[m] = envelope(inst.groups[m], inst.theta_true[m]).first;
        if (env[m] > env[mstar]) mstar = m;
    }

    LowerBoundReport rep;
    for (std::size_t m = 0; m < inst.groups.size(); ++m) {
        if (m == mstar) continue;
        const double d = kl(env[mstar], env[m]);
        if (d == 0.0) {
            rep.log_coefficient = kInf;
        } else if (!std::isinf(rep.log_coefficient)) {
            rep.log_coefficient += 1.0 / d;
        }
    }
    const Group& gstar = inst.groups[mstar];
    const double theta = inst.theta_true[mstar];
    const auto [mu_star, k_star] = envelope(gstar, theta);
    for (int k = 0; k < gstar.num_arms(); ++k) {
        if (k == k_star) continue;
        const double d = kl(mu_star, gstar.arms[static_cast<std::size_t>(k)].evaluate(theta));
        if (d == 0.0) {
            rep.additive_constant = kInf;
        } else if (!std::isinf(rep.additive_constant)) {
            rep.additive_constant += 1.0 / (4.0 * d);
        }
    }
    return rep;
}

long window_rule(double tau, const std::vector<Group>& groups) {
    if (tau <= 0.0) throw std::invalid_argument("tau must be > 0");
    double w = 1.0;
    for (const auto& g : groups)
        w = std::max(w, std::pow(tau, 2.0 * g.gamma2 / (2.0 * g.gamma2 + 1.0)));
    return std::max<long>(1, std::lround(w));
}

long confusing_period(const BanditInstance& inst, const DriftSchedule& sched, double delta,
                      long T) {
    if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
    const int M = inst.num_groups();
    long count = 0;
    std::vector<double> env(static_cast<std::size_t>(M));
    for (long t = 1; t <= T; ++t) {
        for (int m = 0; m < M; ++m)
            env[static_cast<std::size_t>(m)] =
                envelope(inst.groups[static_cast<std::size_t>(m)], sched.theta_at(inst, m, t)).first;
        for (int m = 0; m < M; ++m)
            for (int mp = 0; mp < M; ++mp)
                if (m != mp && std::abs(env[static_cast<std::size_t>(m)] -
                                        env[static_cast<std::size_t>(mp)]) < delta)
                    ++count;
    }
    return count;
}

std::vector<SummaryPoint> regret_summary(const std::vector<RegretTrace>& traces) {
    if (traces.empty()) return {};
    const std::size_t T = traces.front().steps.size();
    for (const auto& tr : traces)
        if (tr.steps.size() != T)
            throw std::invalid_argument("traces must share the same horizon");
    const double R = static_cast<double>(traces.size());
    std::vector<SummaryPoint> out(T);
    for (std::size_t i = 0; i < T; ++i) {
        double sum = 0.0, sumsq = 0.0;
        for (const auto& tr : traces) {
            const double c = tr.steps[i].cum_regret;
            sum += c;
            sumsq += c * c;
        }
        const double mean = sum / R;
        const double var = R > 1 ? std::max(0.0, (sumsq - R * mean * mean) / (R - 1.0)) : 0.0;
        const double se = std::sqrt(var / R);
        const double t = static_cast<double>(i + 1);
        out[i] = {static_cast<long>(i + 1), mean, se, mean / t, se / t};
    }
    return out;
}

}  // namespace regional
