#ifndef REGIONAL_ANALYSIS_HPP
#define REGIONAL_ANALYSIS_HPP

#include <vector>

#include "regional/environment.hpp"
#include "regional/reward.hpp"

namespace regional {

/// Group suboptimality gaps: envelope of the best group minus each group's
/// envelope at its true parameter. Zero for the optimal group.
std::vector<double> gaps(const BanditInstance& inst);

struct BoundReport {
    double total = 0.0;
    double group_term = 0.0;     // sum over suboptimal groups
    double in_group_term = 0.0;  // identification cost inside the optimal group
    int optimal_group = 0;
    double delta = 0.0;          // biased distance in the optimal group
    double alpha = 0.0;          // max_m 2 alpha_m / K_m
    std::vector<double> gaps;
};

/// Logarithmic regret upper bound for the group-UCB policy at horizon T.
/// Rejects degenerate instances where a suboptimal group ties the optimum.
BoundReport regret_upper_bound(const BanditInstance& inst, const std::vector<double>& alphas,
                               double T, double region_grid_step = 1e-4);

/// Worst-case bound shape C1 (M ln T)^xi T^(1-xi) + C2 K*^xi* T^(1-xi*).
double worst_case_shape(int num_groups, int k_star, double xi, double xi_star, double T,
                        double c1, double c2);

struct LowerBoundReport {
    double log_coefficient = 0.0;   // multiplies ln T; +inf on a zero gap
    double additive_constant = 0.0; // in-group identification cost; +inf on a tie
};

/// Asymptotic lower-bound constants for unit-variance gaussian rewards.
LowerBoundReport regret_lower_bound(const BanditInstance& inst);

/// Window length max_m round(tau^(2 gamma2_m / (2 gamma2_m + 1))), at least 1.
long window_rule(double tau, const std::vector<Group>& groups);

/// Count of ordered group pairs (m != m') and steps t <= T whose envelope
/// values are strictly within delta of each other.
long confusing_period(const BanditInstance& inst, const DriftSchedule& sched, double delta,
                      long T);

struct SummaryPoint {
    long t = 0;
    double cum_mean = 0.0;
    double cum_stderr = 0.0;
    double per_unit_mean = 0.0;
    double per_unit_stderr = 0.0;
};

/// Pointwise mean and standard error across replications. Traces must share T.
std::vector<SummaryPoint> regret_summary(const std::vector<RegretTrace>& traces);

}  // namespace regional

#endif
