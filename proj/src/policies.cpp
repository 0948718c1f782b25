#include "regional/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace regional {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double padding_impl(const Group& g, double alpha, double logt, long n) {
    if (n <= 0) return kInf;
    return g.d2 * std::pow(g.d1_bar, g.gamma2) *
           std::pow(alpha * logt / static_cast<double>(n), g.xi);
}

double ucb_bonus(double alpha_b, double logt, long n) {
    if (n <= 0) return kInf;
    return std::pow(alpha_b * logt / static_cast<double>(n), 0.5);
}

std::vector<std::pair<int, int>> flatten(const std::vector<Group>& groups) {
    std::vector<std::pair<int, int>> flat;
    for (int m = 0; m < static_cast<int>(groups.size()); ++m)
        for (int k = 0; k < groups[static_cast<std::size_t>(m)].num_arms(); ++k)
            flat.emplace_back(m, k);
    return flat;
}

void check_alphas(const std::vector<Group>& groups, const std::vector<double>& alphas) {
    if (alphas.size() != groups.size())
        throw std::invalid_argument("need one alpha per group");
    for (std::size_t m = 0; m < groups.size(); ++m)
        if (!(alphas[m] > groups[m].num_arms()))
            throw std::invalid_argument("alpha_m must exceed the group's arm count");
}

int uniform_arm(int num_arms, Rng& rng) {
    if (num_arms == 1) return 0;  // no draw: keeps streams comparable across policies
    const double u = uniform01(rng);
    const int k = static_cast<int>(u * num_arms);
    return k >= num_arms ? num_arms - 1 : k;
}

}  // namespace

double padding(const Group& g, double alpha, long t, long n) {
    return padding_impl(g, alpha, std::log(static_cast<double>(t)), n);
}

double sw_padding(const Group& g, double alpha, long t, long tau_w, long n_windowed) {
    const long tt = t < tau_w ? t : tau_w;
    return padding_impl(g, alpha, std::log(static_cast<double>(tt)), n_windowed);
}

// ---------------------------------------------------------------- UcbGPolicy

UcbGPolicy::UcbGPolicy(std::vector<Group> groups, std::vector<double> alphas,
                       bool deterministic_init)
    : groups_(std::move(groups)), alphas_(std::move(alphas)),
      deterministic_init_(deterministic_init) {
    check_alphas(groups_, alphas_);
    snap_.groups.resize(groups_.size());
    for (std::size_t m = 0; m < groups_.size(); ++m) {
        snap_.groups[m].arms.resize(static_cast<std::size_t>(groups_[m].num_arms()));
        snap_.groups[m].theta_hat = groups_[m].domain.lo;
    }
}

double UcbGPolicy::group_index(int group, long t) const {
    const auto m = static_cast<std::size_t>(group);
    const auto& gs = snap_.groups[m];
    if (gs.count == 0) return kInf;
    return envelope(groups_[m], gs.theta_hat).first + padding(groups_[m], alphas_[m], t, gs.count);
}

std::pair<int, int> UcbGPolicy::select(long t, Rng& rng) {
    const int M = static_cast<int>(groups_.size());
    if (t <= M) {
        const int m = static_cast<int>(t) - 1;
        const int k = deterministic_init_
                          ? 0
                          : uniform_arm(groups_[static_cast<std::size_t>(m)].num_arms(), rng);
        return {m, k};
    }
    int best_m = 0;
    double best = -kInf;
    for (int m = 0; m < M; ++m) {
        const double idx = group_index(m, t);
        if (idx > best) {
            best = idx;
            best_m = m;
        }
    }
    const auto mu = static_cast<std::size_t>(best_m);
    const int k = envelope(groups_[mu], snap_.groups[mu].theta_hat).second;
    return {best_m, k};
}

void UcbGPolicy::update(int group, int arm, double reward) {
    auto& gs = snap_.groups[static_cast<std::size_t>(group)];
    auto& as = gs.arms[static_cast<std::size_t>(arm)];
    as.reward_sum += reward;
    as.count += 1;
    gs.count += 1;
    gs.most_played = 0;
    for (int k = 1; k < static_cast<int>(gs.arms.size()); ++k)
        if (gs.arms[static_cast<std::size_t>(k)].count > gs.arms[static_cast<std::size_t>(gs.most_played)].count)
            gs.most_played = k;
    const auto& g = groups_[static_cast<std::size_t>(group)];
    const auto& lead = gs.arms[static_cast<std::size_t>(gs.most_played)];
    gs.theta_hat = g.arms[static_cast<std::size_t>(gs.most_played)].invert(lead.mean(), g.domain);
    gs.estimated = true;
    snap_.t += 1;
}

// -------------------------------------------------------------- SwUcbGPolicy

SwUcbGPolicy::SwUcbGPolicy(std::vector<Group> groups, std::vector<double> alphas, long window,
                           bool deterministic_init)
    : groups_(std::move(groups)), alphas_(std::move(alphas)), window_(window),
      deterministic_init_(deterministic_init) {
    check_alphas(groups_, alphas_);
    if (window_ < 1) throw std::invalid_argument("window length must be >= 1");
    const auto M = groups_.size();
    group_counts_.assign(M, 0);
    arm_counts_.resize(M);
    arm_sums_.resize(M);
    most_played_.assign(M, 0);
    theta_hat_.resize(M);
    estimated_.assign(M, false);
    for (std::size_t m = 0; m < M; ++m) {
        arm_counts_[m].assign(static_cast<std::size_t>(groups_[m].num_arms()), 0);
        arm_sums_[m].assign(static_cast<std::size_t>(groups_[m].num_arms()), 0.0);
        theta_hat_[m] = groups_[m].domain.lo;
    }
}

long SwUcbGPolicy::windowed_arm_count(int group, int arm) const {
    return arm_counts_[static_cast<std::size_t>(group)][static_cast<std::size_t>(arm)];
}

double SwUcbGPolicy::windowed_arm_mean(int group, int arm) const {
    const long n = windowed_arm_count(group, arm);
    if (n == 0) return 0.0;
    return arm_sums_[static_cast<std::size_t>(group)][static_cast<std::size_t>(arm)] /
           static_cast<double>(n);
}

std::pair<int, int> SwUcbGPolicy::select(long t, Rng& rng) {
    const int M = static_cast<int>(groups_.size());
    if (t <= M) {
        const int m = static_cast<int>(t) - 1;
        const int k = deterministic_init_
                          ? 0
                          : uniform_arm(groups_[static_cast<std::size_t>(m)].num_arms(), rng);
        return {m, k};
    }
    int best_m = 0;
    double best = -kInf;
    for (int m = 0; m < M; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        double idx;
        if (group_counts_[mu] == 0) {
            idx = kInf;
        } else {
            idx = envelope(groups_[mu], theta_hat_[mu]).first +
                  sw_padding(groups_[mu], alphas_[mu], t, window_, group_counts_[mu]);
        }
        if (idx > best) {
            best = idx;
            best_m = m;
        }
    }
    const auto mu = static_cast<std::size_t>(best_m);
    const int k = envelope(groups_[mu], theta_hat_[mu]).second;
    return {best_m, k};
}

void SwUcbGPolicy::recompute() {
    for (std::size_t m = 0; m < groups_.size(); ++m) {
        group_counts_[m] = 0;
        std::fill(arm_counts_[m].begin(), arm_counts_[m].end(), 0);
        std::fill(arm_sums_[m].begin(), arm_sums_[m].end(), 0.0);
    }
    for (const auto& play : buffer_) {
        const auto m = static_cast<std::size_t>(play.group);
        const auto k = static_cast<std::size_t>(play.arm);
        group_counts_[m] += 1;
        arm_counts_[m][k] += 1;
        arm_sums_[m][k] += play.reward;
    }
    for (std::size_t m = 0; m < groups_.size(); ++m) {
        if (group_counts_[m] == 0) continue;  // keep the stale estimate until re-explored
        int lead = 0;
        for (int k = 1; k < static_cast<int>(arm_counts_[m].size()); ++k)
            if (arm_counts_[m][static_cast<std::size_t>(k)] >
                arm_counts_[m][static_cast<std::size_t>(lead)])
                lead = k;
        most_played_[m] = lead;
        const auto lu = static_cast<std::size_t>(lead);
        const double mean = arm_sums_[m][lu] / static_cast<double>(arm_counts_[m][lu]);
        theta_hat_[m] = groups_[m].arms[lu].invert(mean, groups_[m].domain);
        estimated_[m] = true;
    }
}

void SwUcbGPolicy::update(int group, int arm, double reward) {
    buffer_.push_back({group, arm, reward});
    if (static_cast<long>(buffer_.size()) > window_) buffer_.pop_front();
    t_ += 1;
    recompute();
}

// --------------------------------------------------------------- Ucb1Policy

Ucb1Policy::Ucb1Policy(std::vector<Group> groups, double alpha_b)
    : flat_(flatten(groups)), counts_(flat_.size(), 0), sums_(flat_.size(), 0.0) {
    alpha_b_ = alpha_b;
}

std::pair<int, int> Ucb1Policy::select(long t, Rng&) {
    int best = 0;
    double best_idx = -kInf;
    for (int i = 0; i < static_cast<int>(flat_.size()); ++i) {
        const double idx = arm_index(i, t);
        if (idx > best_idx) {
            best_idx = idx;
            best = i;
        }
    }
    return flat_[static_cast<std::size_t>(best)];
}

double Ucb1Policy::arm_index(int flat_arm, long t) const {
    const auto i = static_cast<std::size_t>(flat_arm);
    if (counts_[i] == 0) return kInf;
    return sums_[i] / static_cast<double>(counts_[i]) +
           ucb_bonus(alpha_b_, std::log(static_cast<double>(t)), counts_[i]);
}

void Ucb1Policy::update(int group, int arm, double reward) {
    for (std::size_t i = 0; i < flat_.size(); ++i) {
        if (flat_[i].first == group && flat_[i].second == arm) {
            sums_[i] += reward;
            counts_[i] += 1;
            return;
        }
    }
    throw std::out_of_range("unknown (group, arm)");
}

// --------------------------------------------------------------- SwUcbPolicy

SwUcbPolicy::SwUcbPolicy(std::vector<Group> groups, long window, double alpha_b)
    : flat_(flatten(groups)), window_(window), alpha_b_(alpha_b),
      counts_(flat_.size(), 0), sums_(flat_.size(), 0.0) {
    if (window_ < 1) throw std::invalid_argument("window length must be >= 1");
}

std::pair<int, int> SwUcbPolicy::select(long t, Rng&) {
    const long tt = t < window_ ? t : window_;
    const double logt = std::log(static_cast<double>(tt));
    int best = 0;
    double best_idx = -kInf;
    for (int i = 0; i < static_cast<int>(flat_.size()); ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const double idx = counts_[iu] == 0
                               ? kInf
                               : sums_[iu] / static_cast<double>(counts_[iu]) +
                                     ucb_bonus(alpha_b_, logt, counts_[iu]);
        if (idx > best_idx) {
            best_idx = idx;
            best = i;
        }
    }
    return flat_[static_cast<std::size_t>(best)];
}

void SwUcbPolicy::update(int group, int arm, double reward) {
    int flat = -1;
    for (std::size_t i = 0; i < flat_.size(); ++i)
        if (flat_[i].first == group && flat_[i].second == arm) flat = static_cast<int>(i);
    if (flat < 0) throw std::out_of_range("unknown (group, arm)");
    buffer_.push_back({flat, reward});
    if (static_cast<long>(buffer_.size()) > window_) buffer_.pop_front();
    std::fill(counts_.begin(), counts_.end(), 0);
    std::fill(sums_.begin(), sums_.end(), 0.0);
    for (const auto& play : buffer_) {
        const auto i = static_cast<std::size_t>(play.flat);
        counts_[i] += 1;
        sums_[i] += play.reward;
    }
}

// -------------------------------------------------------------- RandomPolicy

RandomPolicy::RandomPolicy(const std::vector<Group>& groups) : flat_(flatten(groups)) {}

std::pair<int, int> RandomPolicy::select(long, Rng& rng) {
    const double u = uniform01(rng);
    auto i = static_cast<std::size_t>(u * static_cast<double>(flat_.size()));
    if (i >= flat_.size()) i = flat_.size() - 1;
    return flat_[i];
}

}  // namespace regional
