#ifndef REGIONAL_REWARD_HPP
#define REGIONAL_REWARD_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace regional {

/// Closed interval on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
    double width() const { return hi - lo; }
};

/// Two-sided power-law continuity constants declared for a reward function:
///   d1 |dtheta|^gamma1 <= |dmu| <= d2 |dtheta|^gamma2.
struct HolderConstants {
    double d1 = 1.0;
    double gamma1 = 2.0;
    double d2 = 1.0;
    double gamma2 = 1.0;
};

enum class RewardKind {
    Affine,        // a*theta + c
    Power,         // a*theta^b + c
    ShiftedPower,  // a*(1-theta)^b + c
    SqrtAffine,    // a*sqrt(theta) + c
    Pricing,       // p*(1 - theta*p)^2
};

const char* to_string(RewardKind kind);
RewardKind reward_kind_from_string(const std::string& name);

/// A parametric, strictly monotone, invertible expected-reward curve.
class RewardFunction {
  public:
    static RewardFunction affine(double a, double c, HolderConstants h);
    static RewardFunction power(double a, double b, double c, HolderConstants h);
    static RewardFunction shifted_power(double a, double b, double c, HolderConstants h);
    static RewardFunction sqrt_affine(double a, double c, HolderConstants h);
    static RewardFunction pricing(double price, HolderConstants h);

    RewardKind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double price() const { return p_; }
    const HolderConstants& holder() const { return holder_; }

    /// mu(theta) by the closed form of the kind. No domain check.
    double evaluate(double theta) const;

    /// Clamps y into [min, max] of mu over `domain`, then applies the
    /// closed-form inverse. Total: always returns a point of `domain`.
    double invert(double y, Interval domain) const;

    /// Range of mu over a closed domain (endpoints, since mu is monotone).
    Interval range(Interval domain) const;

  private:
    RewardFunction(RewardKind kind, double a, double b, double c, double p, HolderConstants h)
        : kind_(kind), a_(a), b_(b), c_(c), p_(p), holder_(h) {}

    RewardKind kind_;
    double a_, b_, c_, p_;
    HolderConstants holder_;
};

/// A group of arms sharing one unknown parameter, with the group-level
/// aggregate constants derived from the per-arm declarations.
struct Group {
    std::vector<RewardFunction> arms;
    Interval domain;

    // aggregates
    double d1 = 0.0;        // min_k d1_k
    double gamma1 = 0.0;    // max_k gamma1_k
    double d1_bar = 0.0;    // max_k (1/d1_k)^(1/gamma1_k)
    double gamma1_bar = 0.0;  // 1/gamma1
    double d2 = 0.0;        // max_k d2_k
    double gamma2 = 0.0;    // min_k gamma2_k
    double xi = 0.0;        // gamma1_bar * gamma2 / 2

    int num_arms() const { return static_cast<int>(arms.size()); }
};

/// Builds a group and derives the aggregates. Throws std::invalid_argument on
/// an empty arm list or a non-monotone arm (checked on a grid).
Group make_group(std::vector<RewardFunction> arms, Interval domain);

/// Pointwise max over the group's arms. Returns (value, argmax arm index),
/// smallest index on ties. Throws std::domain_error for theta outside the
/// group domain.
std::pair<double, int> envelope(const Group& g, double theta);

/// Optimal regions of every arm, from a uniform grid scan of the domain.
struct RegionGeometry {
    std::vector<std::vector<Interval>> optimal_regions;  // per arm
    std::vector<int> grid_argmax;                        // per grid point
    double grid_step = 0.0;
    Interval domain;

    double grid_theta(std::size_t i) const { return domain.lo + static_cast<double>(i) * grid_step; }
};

RegionGeometry compute_regions(const Group& g, double grid_step = 1e-4);

/// Distance from theta_true to the nearest grid point whose best arm differs
/// from the best arm at theta_true. +infinity when no such point exists
/// (single arm, or one arm dominates everywhere).
double biased_distance(const RegionGeometry& geo, double theta_true);

struct HolderReport {
    bool pass = true;
    bool lower_ok = true;
    bool upper_ok = true;
    // worst pair per inequality: (theta, theta', margin); margin < 0 violates
    double lower_theta_a = 0, lower_theta_b = 0, lower_margin = std::numeric_limits<double>::infinity();
    double upper_theta_a = 0, upper_theta_b = 0, upper_margin = std::numeric_limits<double>::infinity();
};

/// Grid check of the declared two-sided continuity constants over all grid
/// pairs in `domain`.
HolderReport verify_holder(const RewardFunction& f, Interval domain, double grid_step = 1e-2);

}  // namespace regional

#endif
