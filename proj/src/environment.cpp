#include "regional/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace regional {

int BanditInstance::total_arms() const {
    int n = 0;
    for (const auto& g : groups) n += g.num_arms();
    return n;
}

void validate_instance(const BanditInstance& inst) {
    if (inst.groups.empty()) throw std::invalid_argument("instance needs at least one group");
    if (inst.theta_true.size() != inst.groups.size())
        throw std::invalid_argument("theta_true length must match the number of groups");
    for (std::size_t m = 0; m < inst.groups.size(); ++m) {
        if (!inst.groups[m].domain.contains(inst.theta_true[m]))
            throw std::invalid_argument("theta_true outside the group domain (group " +
                                        std::to_string(m + 1) + ")");
    }
}

// Wichura's AS 241 (PPND16). Accurate to ~1e-16 over (0,1).
double normal_quantile(double p) {
    static const double a[8] = {3.3871328727963666080e0,  1.3314166789178437745e2,
                                1.9715909503065514427e3,  1.3731693765509461125e4,
                                4.5921953931549871457e4,  6.7265770927008700853e4,
                                3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {1.0,
                                4.2313330701600911252e1,  6.8718700749205790830e2,
                                5.3941960214247511077e3,  2.1213794301586595867e4,
                                3.9307895800092710610e4,  2.8729085735721942674e4,
                                5.2264952788528545610e3};
    static const double c[8] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                5.76949722146069140550e0, 3.64784832476320460504e0,
                                1.27045825245236838258e0, 2.41780725177450611770e-1,
                                2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {1.0,
                                2.05319162663775882187e0, 1.67638483018380384940e0,
                                6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                1.05075007164441684324e-9};
    static const double e[8] = {6.65790464350110377720e0,  5.46378491116411436990e0,
                                1.78482653991729133580e0,  2.96560571828504891230e-1,
                                2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {1.0,
                                5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                2.04426310338993978564e-15};
    auto poly = [](const double* k, double r) {
        return ((((((k[7] * r + k[6]) * r + k[5]) * r + k[4]) * r + k[3]) * r + k[2]) * r + k[1]) * r + k[0];
    };
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        val = poly(e, r) / poly(f, r);
    }
    return q < 0 ? -val : val;
}

namespace {

double triangle_wave(double u, double low, double high) {
    // unit slope in u, reflecting between low and high
    const double amp = high - low;
    double phase = std::fmod(u, 2.0 * amp);
    if (phase < 0) phase += 2.0 * amp;
    return phase <= amp ? low + phase : low + 2.0 * amp - phase;
}

}  // namespace

double DriftSchedule::theta_at(const BanditInstance& inst, int group, long t) const {
    const double theta0 = inst.theta_true[static_cast<std::size_t>(group)];
    switch (kind) {
        case Kind::Constant:
            return theta0;
        case Kind::Triangular: {
            const double offset =
                static_cast<double>(group) * tau / static_cast<double>(inst.num_groups());
            const double u = (static_cast<double>(t - 1) + offset) / tau;
            return triangle_wave(u, low, high);
        }
        case Kind::Sinusoidal: {
            const double mid = 0.5 * (low + high);
            const double amp = 0.5 * (high - low);
            // amplitude * angular frequency == 1/tau, the Lipschitz cap
            const double omega = 1.0 / (amp * tau);
            const double phi = 2.0 * M_PI * static_cast<double>(group) /
                               static_cast<double>(inst.num_groups());
            return mid + amp * std::sin(omega * static_cast<double>(t - 1) + phi);
        }
    }
    return theta0;
}

double sample_reward(const BanditInstance& inst, const DriftSchedule& sched, int group, int arm,
                     long t, Rng& rng) {
    if (group < 0 || group >= inst.num_groups())
        throw std::out_of_range("group index out of range");
    const Group& g = inst.groups[static_cast<std::size_t>(group)];
    if (arm < 0 || arm >= g.num_arms()) throw std::out_of_range("arm index out of range");
    const double theta = sched.theta_at(inst, group, t);
    const double mean = g.arms[static_cast<std::size_t>(arm)].evaluate(theta);
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // one draw, in (0,1)
    if (inst.noise.kind == NoiseModel::Kind::Bernoulli) return u < mean ? 1.0 : 0.0;
    return mean + inst.noise.sigma * normal_quantile(u);
}

OracleChoice oracle_best(const BanditInstance& inst, const DriftSchedule& sched, long t) {
    OracleChoice best{0, 0, -std::numeric_limits<double>::infinity()};
    for (int m = 0; m < inst.num_groups(); ++m) {
        const double theta = sched.theta_at(inst, m, t);
        const Group& g = inst.groups[static_cast<std::size_t>(m)];
        for (int k = 0; k < g.num_arms(); ++k) {
            const double v = g.arms[static_cast<std::size_t>(k)].evaluate(theta);
            if (v > best.mu) best = {m, k, v};
        }
    }
    return best;
}

double instantaneous_regret(const BanditInstance& inst, const DriftSchedule& sched, long t,
                            int group, int arm) {
    const double theta = sched.theta_at(inst, group, t);
    const double mean =
        inst.groups[static_cast<std::size_t>(group)].arms[static_cast<std::size_t>(arm)].evaluate(theta);
    return oracle_best(inst, sched, t).mu - mean;
}

}  // namespace regional
