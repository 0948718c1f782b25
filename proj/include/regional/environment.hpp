#ifndef REGIONAL_ENVIRONMENT_HPP
#define REGIONAL_ENVIRONMENT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "regional/reward.hpp"

namespace regional {

using Rng = std::mt19937_64;

/// One engine advance -> a uniform double in [0, 1).
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via the inverse CDF (Wichura's AS 241), so a gaussian
/// sample consumes exactly one engine advance.
double normal_quantile(double u);

struct NoiseModel {
    enum class Kind { Gaussian, Bernoulli };
    Kind kind = Kind::Gaussian;
    double sigma = 1.0;  // gaussian only

    static NoiseModel gaussian(double sigma) { return {Kind::Gaussian, sigma}; }
    static NoiseModel bernoulli() { return {Kind::Bernoulli, 0.0}; }
};

struct BanditInstance {
    std::vector<Group> groups;
    std::vector<double> theta_true;  // one per group
    NoiseModel noise;

    int num_groups() const { return static_cast<int>(groups.size()); }
    int total_arms() const;
};

/// Validates the cross-field invariants (theta in domain, at least one arm).
void validate_instance(const BanditInstance& inst);

/// Time-indexed parameter trajectory obeying |theta(t) - theta(t')| <= |t-t'|/tau.
struct DriftSchedule {
    enum class Kind { Constant, Triangular, Sinusoidal };
    Kind kind = Kind::Constant;
    double tau = 0.0;  // drift time constant; unused for constant
    double low = 0.0;
    double high = 1.0;

    static DriftSchedule constant() { return {Kind::Constant, 0.0, 0.0, 0.0}; }
    static DriftSchedule triangular(double tau, double low, double high) {
        return {Kind::Triangular, tau, low, high};
    }
    static DriftSchedule sinusoidal(double tau, double low, double high) {
        return {Kind::Sinusoidal, tau, low, high};
    }

    /// theta_m at step t (t >= 1). Constant returns the instance's true theta.
    /// Drifting groups are phase-offset by m*tau/M to desynchronize.
    double theta_at(const BanditInstance& inst, int group, long t) const;
};

double sample_reward(const BanditInstance& inst, const DriftSchedule& sched, int group, int arm,
                     long t, Rng& rng);

struct OracleChoice {
    int group = 0;
    int arm = 0;
    double mu = 0.0;
};

/// Exhaustive argmax of the true means at step t; lexicographic tie rule.
OracleChoice oracle_best(const BanditInstance& inst, const DriftSchedule& sched, long t);

/// True-mean gap to the oracle at step t for a chosen (group, arm).
double instantaneous_regret(const BanditInstance& inst, const DriftSchedule& sched, long t,
                            int group, int arm);

struct TraceStep {
    int group;
    int arm;
    double reward;
    double inst_regret;
    double cum_regret;
};

struct RegretTrace {
    std::string policy;
    int replication = 0;
    std::uint64_t seed = 0;
    std::vector<TraceStep> steps;
};

}  // namespace regional

#endif
