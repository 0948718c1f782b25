#include "regional/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regional {

const char* to_string(RewardKind kind) {
    switch (kind) {
        case RewardKind::Affine: return "affine";
        case RewardKind::Power: return "power";
        case RewardKind::ShiftedPower: return "shifted-power";
        case RewardKind::SqrtAffine: return "sqrt-affine";
        case RewardKind::Pricing: return "pricing";
    }
    return "?";
}

RewardKind reward_kind_from_string(const std::string& name) {
    if (name == "affine") return RewardKind::Affine;
    if (name == "power") return RewardKind::Power;
    if (name == "shifted-power") return RewardKind::ShiftedPower;
    if (name == "sqrt-affine") return RewardKind::SqrtAffine;
    if (name == "pricing") return RewardKind::Pricing;
    throw std::invalid_argument("unknown reward kind: " + name);
}

RewardFunction RewardFunction::affine(double a, double c, HolderConstants h) {
    if (a == 0.0) throw std::invalid_argument("affine reward needs a != 0");
    return RewardFunction(RewardKind::Affine, a, 0.0, c, 0.0, h);
}

RewardFunction RewardFunction::power(double a, double b, double c, HolderConstants h) {
    if (a == 0.0 || b <= 0.0) throw std::invalid_argument("power reward needs a != 0, b > 0");
    return RewardFunction(RewardKind::Power, a, b, c, 0.0, h);
}

RewardFunction RewardFunction::shifted_power(double a, double b, double c, HolderConstants h) {
    if (a == 0.0 || b <= 0.0) throw std::invalid_argument("shifted-power reward needs a != 0, b > 0");
    return RewardFunction(RewardKind::ShiftedPower, a, b, c, 0.0, h);
}

RewardFunction RewardFunction::sqrt_affine(double a, double c, HolderConstants h) {
    if (a == 0.0) throw std::invalid_argument("sqrt-affine reward needs a != 0");
    return RewardFunction(RewardKind::SqrtAffine, a, 0.0, c, 0.0, h);
}

RewardFunction RewardFunction::pricing(double price, HolderConstants h) {
    if (price <= 0.0) throw std::invalid_argument("pricing reward needs price > 0");
    return RewardFunction(RewardKind::Pricing, 0.0, 0.0, 0.0, price, h);
}

double RewardFunction::evaluate(double theta) const {
    switch (kind_) {
        case RewardKind::Affine:
            return a_ * theta + c_;
        case RewardKind::Power:
            return a_ * std::pow(theta, b_) + c_;
        case RewardKind::ShiftedPower:
            return a_ * std::pow(1.0 - theta, b_) + c_;
        case RewardKind::SqrtAffine:
            return a_ * std::sqrt(theta) + c_;
        case RewardKind::Pricing: {
            const double u = 1.0 - theta * p_;
            return p_ * u * u;
        }
    }
    return 0.0;
}

Interval RewardFunction::range(Interval domain) const {
    const double ylo = evaluate(domain.lo);
    const double yhi = evaluate(domain.hi);
    return {std::min(ylo, yhi), std::max(ylo, yhi)};
}

double RewardFunction::invert(double y, Interval domain) const {
    const Interval r = range(domain);
    y = r.clamp(y);
    double theta = 0.0;
    switch (kind_) {
        case RewardKind::Affine:
            theta = (y - c_) / a_;
            break;
        case RewardKind::Power:
            theta = std::pow((y - c_) / a_, 1.0 / b_);
            break;
        case RewardKind::ShiftedPower:
            theta = 1.0 - std::pow((y - c_) / a_, 1.0 / b_);
            break;
        case RewardKind::SqrtAffine: {
            const double s = (y - c_) / a_;
            theta = s * s;
            break;
        }
        case RewardKind::Pricing:
            // monotone branch theta*p <= 1
            theta = (1.0 - std::sqrt(y / p_)) / p_;
            break;
    }
    return domain.clamp(theta);
}

namespace {

void check_monotone(const RewardFunction& f, Interval domain) {
    const int n = 1000;
    const double step = domain.width() / n;
    if (step <= 0.0) return;
    double prev = f.evaluate(domain.lo);
    int sign = 0;
    for (int i = 1; i <= n; ++i) {
        const double cur = f.evaluate(domain.lo + i * step);
        const int s = cur > prev ? 1 : (cur < prev ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign))
            throw std::invalid_argument("reward function is not strictly monotone on the group domain");
        sign = s;
        prev = cur;
    }
}

}  // namespace

Group make_group(std::vector<RewardFunction> arms, Interval domain) {
    if (arms.empty()) throw std::invalid_argument("group needs at least one arm");
    if (!(domain.lo < domain.hi)) throw std::invalid_argument("group domain must have positive width");
    for (const auto& f : arms) check_monotone(f, domain);

    Group g;
    g.domain = domain;
    g.d1 = std::numeric_limits<double>::infinity();
    g.gamma1 = 0.0;
    g.d1_bar = 0.0;
    g.d2 = 0.0;
    g.gamma2 = std::numeric_limits<double>::infinity();
    for (const auto& f : arms) {
        const auto& h = f.holder();
        if (h.d1 <= 0 || h.d2 <= 0 || h.gamma1 < 1.0 || h.gamma2 <= 0 || h.gamma2 > 1.0)
            throw std::invalid_argument("invalid continuity constants (need d1,d2>0, gamma1>=1, 0<gamma2<=1)");
        g.d1 = std::min(g.d1, h.d1);
        g.gamma1 = std::max(g.gamma1, h.gamma1);
        g.d1_bar = std::max(g.d1_bar, std::pow(1.0 / h.d1, 1.0 / h.gamma1));
        g.d2 = std::max(g.d2, h.d2);
        g.gamma2 = std::min(g.gamma2, h.gamma2);
    }
    g.gamma1_bar = 1.0 / g.gamma1;
    g.xi = g.gamma1_bar * g.gamma2 / 2.0;
    g.arms = std::move(arms);
    return g;
}

std::pair<double, int> envelope(const Group& g, double theta) {
    if (!g.domain.contains(theta)) throw std::domain_error("theta outside the group domain");
    double best = -std::numeric_limits<double>::infinity();
    int best_arm = 0;
    for (int k = 0; k < g.num_arms(); ++k) {
        const double v = g.arms[k].evaluate(theta);
        if (v > best) {
            best = v;
            best_arm = k;
        }
    }
    return {best, best_arm};
}

RegionGeometry compute_regions(const Group& g, double grid_step) {
    if (grid_step <= 0.0) throw std::invalid_argument("grid_step must be > 0");
    if (g.arms.empty()) throw std::invalid_argument("empty group");
    RegionGeometry geo;
    geo.grid_step = grid_step;
    geo.domain = g.domain;
    const auto n = static_cast<std::size_t>(std::ceil(g.domain.width() / grid_step - 1e-9));
    geo.grid_argmax.reserve(n + 1);
    geo.optimal_regions.assign(g.arms.size(), {});
    for (std::size_t i = 0; i <= n; ++i) {
        const double theta = std::min(g.domain.lo + static_cast<double>(i) * grid_step, g.domain.hi);
        geo.grid_argmax.push_back(envelope(g, theta).second);
    }
    // merge runs of equal argmax into closed intervals; adjacent regions share
    // the switch point, so the union covers the whole domain
    std::size_t start = 0;
    for (std::size_t i = 1; i <= geo.grid_argmax.size(); ++i) {
        if (i == geo.grid_argmax.size() || geo.grid_argmax[i] != geo.grid_argmax[start]) {
            const double lo = geo.grid_theta(start);
            const double hi = std::min(geo.grid_theta(i == geo.grid_argmax.size() ? i - 1 : i),
                                       g.domain.hi);
            geo.optimal_regions[static_cast<std::size_t>(geo.grid_argmax[start])].push_back({lo, hi});
            start = i;
        }
    }
    return geo;
}

double biased_distance(const RegionGeometry& geo, double theta_true) {
    if (!geo.domain.contains(theta_true)) throw std::domain_error("theta outside the group domain");
    const auto n = geo.grid_argmax.size();
    const auto idx = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n - 1),
                         std::round((theta_true - geo.domain.lo) / geo.grid_step)));
    const int kstar = geo.grid_argmax[idx];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (geo.grid_argmax[i] == kstar) continue;
        best = std::min(best, std::abs(theta_true - std::min(geo.grid_theta(i), geo.domain.hi)));
    }
    return best;
}

HolderReport verify_holder(const RewardFunction& f, Interval domain, double grid_step) {
    if (grid_step <= 0.0) throw std::invalid_argument("grid_step must be > 0");
    const auto n = static_cast<std::size_t>(std::round(domain.width() / grid_step));
    std::vector<double> theta(n + 1), mu(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        theta[i] = std::min(domain.lo + static_cast<double>(i) * grid_step, domain.hi);
        mu[i] = f.evaluate(theta[i]);
    }
    const auto& h = f.holder();
    HolderReport rep;
    const double tol = 1e-12;
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            const double dt = std::abs(theta[i] - theta[j]);
            const double dm = std::abs(mu[i] - mu[j]);
            const double lower = dm - h.d1 * std::pow(dt, h.gamma1);
            const double upper = h.d2 * std::pow(dt, h.gamma2) - dm;
            if (lower < rep.lower_margin) {
                rep.lower_margin = lower;
                rep.lower_theta_a = theta[i];
                rep.lower_theta_b = theta[j];
            }
            if (upper < rep.upper_margin) {
                rep.upper_margin = upper;
                rep.upper_theta_a = theta[i];
                rep.upper_theta_b = theta[j];
            }
        }
    }
    rep.lower_ok = rep.lower_margin >= -tol;
    rep.upper_ok = rep.upper_margin >= -tol;
    rep.pass = rep.lower_ok && rep.upper_ok;
    return rep;
}

}  // namespace regional
