#include "regional/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "regional/analysis.hpp"

namespace regional {

using nlohmann::json;

namespace {

RewardFunction arm_from_json(const json& j) {
    const auto kind = reward_kind_from_string(j.at("kind").get<std::string>());
    const auto& p = j.at("params");
    HolderConstants h;
    if (j.contains("holder")) {
        const auto& hj = j.at("holder");
        h.d1 = hj.at("d1").get<double>();
        h.gamma1 = hj.at("gamma1").get<double>();
        h.d2 = hj.at("d2").get<double>();
        h.gamma2 = hj.at("gamma2").get<double>();
    }
    switch (kind) {
        case RewardKind::Affine:
            return RewardFunction::affine(p.at("a"), p.value("c", 0.0), h);
        case RewardKind::Power:
            return RewardFunction::power(p.at("a"), p.at("b"), p.value("c", 0.0), h);
        case RewardKind::ShiftedPower:
            return RewardFunction::shifted_power(p.at("a"), p.at("b"), p.value("c", 0.0), h);
        case RewardKind::SqrtAffine:
            return RewardFunction::sqrt_affine(p.at("a"), p.value("c", 0.0), h);
        case RewardKind::Pricing:
            return RewardFunction::pricing(p.at("p"), h);
    }
    throw std::invalid_argument("unreachable reward kind");
}

json arm_to_json(const RewardFunction& f) {
    json p;
    switch (f.kind()) {
        case RewardKind::Affine:
            p = {{"a", f.a()}, {"c", f.c()}};
            break;
        case RewardKind::Power:
        case RewardKind::ShiftedPower:
            p = {{"a", f.a()}, {"b", f.b()}, {"c", f.c()}};
            break;
        case RewardKind::SqrtAffine:
            p = {{"a", f.a()}, {"c", f.c()}};
            break;
        case RewardKind::Pricing:
            p = {{"p", f.price()}};
            break;
    }
    const auto& h = f.holder();
    return {{"kind", to_string(f.kind())},
            {"params", p},
            {"holder", {{"d1", h.d1}, {"gamma1", h.gamma1}, {"d2", h.d2}, {"gamma2", h.gamma2}}}};
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.name = j.value("name", "experiment");

    const auto& ij = j.at("instance");
    for (const auto& gj : ij.at("groups")) {
        Interval dom{gj.at("domain").at(0).get<double>(), gj.at("domain").at(1).get<double>()};
        std::vector<RewardFunction> arms;
        for (const auto& aj : gj.at("arms")) arms.push_back(arm_from_json(aj));
        cfg.instance.groups.push_back(make_group(std::move(arms), dom));
        cfg.instance.theta_true.push_back(gj.at("theta").get<double>());
    }
    const auto& nj = ij.at("noise");
    const auto nkind = nj.at("kind").get<std::string>();
    if (nkind == "bernoulli") {
        cfg.instance.noise = NoiseModel::bernoulli();
    } else if (nkind == "gaussian") {
        cfg.instance.noise = NoiseModel::gaussian(nj.value("sigma", 1.0));
    } else {
        throw std::invalid_argument("unknown noise kind: " + nkind);
    }

    if (j.contains("drift")) {
        const auto& dj = j.at("drift");
        const auto dkind = dj.at("kind").get<std::string>();
        if (dkind == "constant") {
            cfg.drift = DriftSchedule::constant();
        } else if (dkind == "triangular") {
            cfg.drift = DriftSchedule::triangular(dj.at("tau"), dj.at("low"), dj.at("high"));
        } else if (dkind == "sinusoidal") {
            cfg.drift = DriftSchedule::sinusoidal(dj.at("tau"), dj.at("low"), dj.at("high"));
        } else {
            throw std::invalid_argument("unknown drift kind: " + dkind);
        }
    }

    for (const auto& pj : j.at("policies")) {
        PolicyConfig pc;
        pc.name = pj.at("name").get<std::string>();
        if (pj.contains("alphas")) pc.alphas = pj.at("alphas").get<std::vector<double>>();
        pc.alpha_b = pj.value("alpha_b", 2.0);
        if (pj.contains("window")) pc.window = pj.at("window").get<long>();
        pc.deterministic_init = pj.value("deterministic_init", false);
        cfg.policies.push_back(std::move(pc));
    }

    cfg.horizon = j.value("horizon", 10000L);
    cfg.replications = j.value("replications", 1);
    cfg.base_seed = j.value("base_seed", std::uint64_t{1});
    if (j.contains("window") && !j.at("window").is_string())
        cfg.window = j.at("window").get<long>();
    cfg.grid_step = j.value("grid_step", 1e-4);
    cfg.out_dir = j.value("out_dir", "out");
    cfg.thin_traces = j.value("thin_traces", false);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json groups = json::array();
    for (std::size_t m = 0; m < cfg.instance.groups.size(); ++m) {
        const auto& g = cfg.instance.groups[m];
        json arms = json::array();
        for (const auto& f : g.arms) arms.push_back(arm_to_json(f));
        groups.push_back({{"domain", {g.domain.lo, g.domain.hi}},
                          {"theta", cfg.instance.theta_true[m]},
                          {"arms", arms}});
    }
    json noise;
    if (cfg.instance.noise.kind == NoiseModel::Kind::Bernoulli) {
        noise = {{"kind", "bernoulli"}};
    } else {
        noise = {{"kind", "gaussian"}, {"sigma", cfg.instance.noise.sigma}};
    }
    json drift;
    switch (cfg.drift.kind) {
        case DriftSchedule::Kind::Constant:
            drift = {{"kind", "constant"}};
            break;
        case DriftSchedule::Kind::Triangular:
            drift = {{"kind", "triangular"}, {"tau", cfg.drift.tau}, {"low", cfg.drift.low},
                     {"high", cfg.drift.high}};
            break;
        case DriftSchedule::Kind::Sinusoidal:
            drift = {{"kind", "sinusoidal"}, {"tau", cfg.drift.tau}, {"low", cfg.drift.low},
                     {"high", cfg.drift.high}};
            break;
    }
    json policies = json::array();
    for (const auto& pc : cfg.policies) {
        json pj = {{"name", pc.name}, {"alpha_b", pc.alpha_b}};
        if (pc.alphas) pj["alphas"] = *pc.alphas;
        if (pc.window) pj["window"] = *pc.window;
        if (pc.deterministic_init) pj["deterministic_init"] = true;
        policies.push_back(std::move(pj));
    }
    json j = {{"name", cfg.name},
              {"instance", {{"groups", groups}, {"noise", noise}}},
              {"drift", drift},
              {"policies", policies},
              {"horizon", cfg.horizon},
              {"replications", cfg.replications},
              {"base_seed", cfg.base_seed},
              {"grid_step", cfg.grid_step},
              {"out_dir", cfg.out_dir},
              {"thin_traces", cfg.thin_traces}};
    if (cfg.window) {
        j["window"] = *cfg.window;
    } else {
        j["window"] = "auto";
    }
    return j.dump(2);
}

long effective_window(const ExperimentConfig& cfg) {
    if (cfg.window) return *cfg.window;
    if (cfg.drift.kind == DriftSchedule::Kind::Constant) return cfg.horizon;
    return window_rule(cfg.drift.tau, cfg.instance.groups);
}

std::vector<double> effective_alphas(const ExperimentConfig& cfg, const PolicyConfig& pc) {
    if (pc.alphas) return *pc.alphas;
    std::vector<double> out;
    for (const auto& g : cfg.instance.groups) out.push_back(g.num_arms() + 1.0);
    return out;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> problems;
    auto bad = [&](const std::string& msg) { problems.push_back(msg); };

    if (cfg.instance.groups.empty()) bad("instance has no groups");
    if (cfg.horizon < 1) bad("horizon must be >= 1");
    if (cfg.replications < 1) bad("replications must be >= 1");
    if (!(cfg.grid_step > 0.0)) bad("grid_step must be > 0");
    if (cfg.window && *cfg.window < 1) bad("window must be >= 1");
    if (cfg.policies.empty()) bad("no policies configured");

    try {
        validate_instance(cfg.instance);
    } catch (const std::exception& e) {
        bad(e.what());
    }

    const bool drifting = cfg.drift.kind != DriftSchedule::Kind::Constant;
    if (drifting) {
        if (!(cfg.drift.tau > 0.0)) bad("drift tau must be > 0");
        if (!(cfg.drift.low < cfg.drift.high)) bad("drift low must be below high");
    }

    for (std::size_t m = 0; m < cfg.instance.groups.size(); ++m) {
        const auto& g = cfg.instance.groups[m];
        const std::string gm = "group " + std::to_string(m + 1);
        if (drifting && (!g.domain.contains(cfg.drift.low) || !g.domain.contains(cfg.drift.high)))
            bad(gm + ": drift range exits the parameter domain");
        // parameter values the trajectory can reach
        Interval reach = drifting ? Interval{cfg.drift.low, cfg.drift.high}
                                  : Interval{cfg.instance.theta_true[m], cfg.instance.theta_true[m]};
        for (int k = 0; k < g.num_arms(); ++k) {
            const auto& f = g.arms[static_cast<std::size_t>(k)];
            const std::string ga = gm + " arm " + std::to_string(k + 1);
            if (f.kind() == RewardKind::Pricing && g.domain.hi * f.price() > 1.0)
                bad(ga + ": pricing needs theta * p <= 1 over the whole domain");
            if (cfg.instance.noise.kind == NoiseModel::Kind::Bernoulli &&
                m < cfg.instance.theta_true.size()) {
                const Interval r = f.range(reach);
                if (r.lo < -1e-12 || r.hi > 1.0 + 1e-12)
                    bad(ga + ": bernoulli noise needs means in [0,1] over the parameter trajectory");
            }
        }
    }

    for (const auto& pc : cfg.policies) {
        if (pc.name != "ucb-g" && pc.name != "sw-ucb-g" && pc.name != "ucb1" &&
            pc.name != "sw-ucb" && pc.name != "oracle" && pc.name != "random") {
            bad("unknown policy: " + pc.name);
            continue;
        }
        if (pc.name == "ucb-g" || pc.name == "sw-ucb-g") {
            const auto alphas = effective_alphas(cfg, pc);
            if (alphas.size() != cfg.instance.groups.size()) {
                bad(pc.name + ": need one alpha per group");
            } else {
                for (std::size_t m = 0; m < alphas.size(); ++m)
                    if (!(alphas[m] > cfg.instance.groups[m].num_arms()))
                        bad(pc.name + ": alpha for group " + std::to_string(m + 1) +
                            " must exceed its arm count");
            }
        }
        if (pc.window && *pc.window < 1) bad(pc.name + ": window must be >= 1");
    }
    return problems;
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, const PolicyConfig& pc) {
    const auto& groups = cfg.instance.groups;
    if (pc.name == "ucb-g")
        return std::make_unique<UcbGPolicy>(groups, effective_alphas(cfg, pc),
                                            pc.deterministic_init);
    if (pc.name == "sw-ucb-g")
        return std::make_unique<SwUcbGPolicy>(groups, effective_alphas(cfg, pc),
                                              pc.window.value_or(effective_window(cfg)),
                                              pc.deterministic_init);
    if (pc.name == "ucb1") return std::make_unique<Ucb1Policy>(groups, pc.alpha_b);
    if (pc.name == "sw-ucb")
        return std::make_unique<SwUcbPolicy>(groups, pc.window.value_or(effective_window(cfg)),
                                             pc.alpha_b);
    if (pc.name == "oracle") return std::make_unique<OraclePolicy>(cfg.instance, cfg.drift);
    if (pc.name == "random") return std::make_unique<RandomPolicy>(groups);
    throw std::invalid_argument("unknown policy: " + pc.name);
}

// ------------------------------------------------------------------ presets

namespace {

HolderConstants basic_holder() { return {0.1, 2.0, 2.0, 0.5}; }

Group figure_group() {
    // mu1 = (1-theta)^2, mu2 = 0.8 - 0.4 sqrt(theta), mu3 = 0.8 theta, mu4 = theta^2
    const auto h = basic_holder();
    return make_group({RewardFunction::shifted_power(1.0, 2.0, 0.0, h),
                       RewardFunction::sqrt_affine(-0.4, 0.8, h),
                       RewardFunction::affine(0.8, 0.0, h),
                       RewardFunction::power(1.0, 2.0, 0.0, h)},
                      {0.0, 1.0});
}

Group identity_group() {
    return make_group({RewardFunction::affine(1.0, 0.0, {1.0, 1.0, 1.0, 1.0})}, {0.0, 1.0});
}

Group pricing_group(const std::vector<double>& prices) {
    std::vector<RewardFunction> arms;
    for (double p : prices) arms.push_back(RewardFunction::pricing(p, {0.05, 2.0, 2.0, 1.0}));
    return make_group(std::move(arms), {0.0, 1.0});
}

ExperimentConfig basic_instance() {
    ExperimentConfig cfg;
    cfg.instance.groups = {figure_group(), figure_group(), figure_group(), figure_group()};
    cfg.instance.theta_true = {0.1, 0.4, 0.7, 1.0};
    cfg.instance.noise = NoiseModel::bernoulli();
    cfg.drift = DriftSchedule::constant();
    return cfg;
}

ExperimentConfig pricing_instance() {
    ExperimentConfig cfg;
    cfg.instance.groups = {pricing_group({0.35, 0.5}), pricing_group({0.35, 0.5, 0.7}),
                           pricing_group({0.5, 0.7}), pricing_group({0.35, 0.5, 0.7, 0.95})};
    cfg.instance.theta_true = {0.35, 0.5, 0.7, 0.9};
    cfg.instance.noise = NoiseModel::gaussian(1.0);
    cfg.drift = DriftSchedule::constant();
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"basic-stationary", "basic-nonstationary", "global-case",
            "classic-case",     "pricing-stationary",  "pricing-nonstationary"};
}

ExperimentConfig preset(const std::string& name) {
    if (name == "basic-stationary") {
        auto cfg = basic_instance();
        cfg.name = name;
        cfg.policies = {{"ucb-g"}, {"ucb1"}};
        cfg.horizon = 10000;
        cfg.replications = 100;
        return cfg;
    }
    if (name == "basic-nonstationary") {
        auto cfg = basic_instance();
        cfg.name = name;
        cfg.drift = DriftSchedule::triangular(1000.0, 0.0, 1.0);
        cfg.policies = {{"sw-ucb-g"}, {"sw-ucb"}};
        cfg.window = 200;  // paper windows: 100, 200, 500
        cfg.horizon = 10000;
        cfg.replications = 50;
        return cfg;
    }
    if (name == "global-case") {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.instance.groups = {figure_group()};
        cfg.instance.theta_true = {1.0};
        cfg.instance.noise = NoiseModel::bernoulli();
        cfg.drift = DriftSchedule::constant();
        cfg.policies = {{"ucb-g"}, {"ucb1"}};
        cfg.horizon = 100000;
        cfg.replications = 100;
        return cfg;
    }
    if (name == "classic-case") {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.instance.groups = {identity_group(), identity_group(), identity_group(),
                               identity_group()};
        cfg.instance.theta_true = {0.2, 0.4, 0.6, 0.8};
        cfg.instance.noise = NoiseModel::bernoulli();
        cfg.drift = DriftSchedule::constant();
        PolicyConfig ucbg{"ucb-g"};
        ucbg.alphas = std::vector<double>{2.0, 2.0, 2.0, 2.0};  // matches alpha_b below
        PolicyConfig ucb1{"ucb1"};
        ucb1.alpha_b = 2.0;
        cfg.policies = {ucbg, ucb1};
        cfg.horizon = 10000;
        cfg.replications = 100;
        return cfg;
    }
    if (name == "pricing-stationary") {
        auto cfg = pricing_instance();
        cfg.name = name;
        cfg.policies = {{"ucb-g"}, {"ucb1"}};
        cfg.horizon = 10000;
        cfg.replications = 100;
        return cfg;
    }
    if (name == "pricing-nonstationary") {
        auto cfg = pricing_instance();
        cfg.name = name;
        cfg.drift = DriftSchedule::triangular(1000.0, 0.3, 0.9);
        cfg.policies = {{"sw-ucb-g"}, {"sw-ucb"}};
        cfg.window = 200;
        cfg.horizon = 10000;
        cfg.replications = 50;
        return cfg;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace regional
