#ifndef REGIONAL_POLICIES_HPP
#define REGIONAL_POLICIES_HPP

#include <deque>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regional/environment.hpp"
#include "regional/reward.hpp"

namespace regional {

/// Exploration bonus added to a group's estimated envelope value:
///   d2 * d1_bar^gamma2 * (alpha * ln(t) / n)^xi.
/// n == 0 yields +infinity (forces exploration).
double padding(const Group& g, double alpha, long t, long n);

/// Sliding-window variant: ln(min(t, tau_w)) with the windowed count.
double sw_padding(const Group& g, double alpha, long t, long tau_w, long n_windowed);

/// Mutable per-group/per-arm statistics of the full-history policies.
struct PolicySnapshot {
    struct ArmStats {
        long count = 0;
        double reward_sum = 0.0;
        double mean() const { return count == 0 ? 0.0 : reward_sum / static_cast<double>(count); }
    };
    struct GroupStats {
        std::vector<ArmStats> arms;
        long count = 0;
        int most_played = 0;   // smallest index on ties
        double theta_hat = 0.0;
        bool estimated = false;
    };
    std::vector<GroupStats> groups;
    long t = 0;  // completed steps
};

class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::pair<int, int> select(long t, Rng& rng) = 0;
    virtual void update(int group, int arm, double reward) = 0;
    virtual std::string name() const = 0;
};

/// Group-level UCB with greedy in-group arm choice: during t <= M each group
/// is played once (arm uniform, or arm 0 in deterministic mode); afterwards
/// the group maximizing envelope(theta_hat) + padding is chosen and the arm
/// is the greedy argmax at theta_hat. Ties break to the smallest index.
class UcbGPolicy : public Policy {
  public:
    UcbGPolicy(std::vector<Group> groups, std::vector<double> alphas,
               bool deterministic_init = false);

    std::pair<int, int> select(long t, Rng& rng) override;
    void update(int group, int arm, double reward) override;
    std::string name() const override { return "ucb-g"; }

    const PolicySnapshot& snapshot() const { return snap_; }
    double group_index(int group, long t) const;

  private:
    std::vector<Group> groups_;
    std::vector<double> alphas_;
    bool deterministic_init_;
    PolicySnapshot snap_;
};

/// Sliding-window UCB-g: statistics over the last tau_w plays only; a group
/// with zero windowed plays gets an infinite index.
class SwUcbGPolicy : public Policy {
  public:
    SwUcbGPolicy(std::vector<Group> groups, std::vector<double> alphas, long window,
                 bool deterministic_init = false);

    std::pair<int, int> select(long t, Rng& rng) override;
    void update(int group, int arm, double reward) override;
    std::string name() const override { return "sw-ucb-g"; }

    long window() const { return window_; }
    long windowed_group_count(int group) const { return group_counts_[static_cast<std::size_t>(group)]; }
    long windowed_arm_count(int group, int arm) const;
    double windowed_arm_mean(int group, int arm) const;

  private:
    struct Play {
        int group;
        int arm;
        double reward;
    };

    void recompute();

    std::vector<Group> groups_;
    std::vector<double> alphas_;
    long window_;
    bool deterministic_init_;
    long t_ = 0;
    std::deque<Play> buffer_;
    std::vector<long> group_counts_;
    std::vector<std::vector<long>> arm_counts_;
    std::vector<std::vector<double>> arm_sums_;
    std::vector<int> most_played_;
    std::vector<double> theta_hat_;
    std::vector<bool> estimated_;
};

/// Classic per-arm UCB over the flattened arm set (baseline).
class Ucb1Policy : public Policy {
  public:
    Ucb1Policy(std::vector<Group> groups, double alpha_b = 2.0);

    std::pair<int, int> select(long t, Rng& rng) override;
    void update(int group, int arm, double reward) override;
    std::string name() const override { return "ucb1"; }

    double arm_index(int flat_arm, long t) const;

  private:
    std::vector<std::pair<int, int>> flat_;  // flat index -> (group, arm)
    std::vector<long> counts_;
    std::vector<double> sums_;
    double alpha_b_ = 2.0;
};

/// Sliding-window per-arm UCB (baseline).
class SwUcbPolicy : public Policy {
  public:
    SwUcbPolicy(std::vector<Group> groups, long window, double alpha_b = 2.0);

    std::pair<int, int> select(long t, Rng& rng) override;
    void update(int group, int arm, double reward) override;
    std::string name() const override { return "sw-ucb"; }

  private:
    struct Play {
        int flat;
        double reward;
    };

    std::vector<std::pair<int, int>> flat_;
    long window_;
    double alpha_b_;
    std::deque<Play> buffer_;
    std::vector<long> counts_;
    std::vector<double> sums_;
};

/// Plays the true best arm every step (regret identically zero).
class OraclePolicy : public Policy {
  public:
    OraclePolicy(const BanditInstance& inst, const DriftSchedule& sched)
        : inst_(inst), sched_(sched) {}

    std::pair<int, int> select(long t, Rng&) override {
        const auto best = oracle_best(inst_, sched_, t);
        return {best.group, best.arm};
    }
    void update(int, int, double) override {}
    std::string name() const override { return "oracle"; }

  private:
    BanditInstance inst_;
    DriftSchedule sched_;
};

/// Uniform-random arm over the flattened arm set.
class RandomPolicy : public Policy {
  public:
    explicit RandomPolicy(const std::vector<Group>& groups);

    std::pair<int, int> select(long t, Rng& rng) override;
    void update(int, int, double) override {}
    std::string name() const override { return "random"; }

  private:
    std::vector<std::pair<int, int>> flat_;
};

}  // namespace regional

#endif
