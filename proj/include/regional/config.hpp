#ifndef REGIONAL_CONFIG_HPP
#define REGIONAL_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regional/environment.hpp"
#include "regional/policies.hpp"

namespace regional {

struct PolicyConfig {
    std::string name;  // ucb-g | sw-ucb-g | ucb1 | sw-ucb | oracle | random
    std::optional<std::vector<double>> alphas;  // per group; default K_m + 1
    double alpha_b = 2.0;
    std::optional<long> window;  // overrides the experiment-level window
    bool deterministic_init = false;
};

struct ExperimentConfig {
    std::string name = "experiment";
    BanditInstance instance;
    DriftSchedule drift;
    std::vector<PolicyConfig> policies;
    long horizon = 10000;
    int replications = 1;
    std::uint64_t base_seed = 1;
    std::optional<long> window;  // absent -> "auto" (drift-rate rule)
    double grid_step = 1e-4;
    std::string out_dir = "out";
    bool thin_traces = false;
};

/// Parses a config from its JSON text. Throws std::invalid_argument with a
/// descriptive message on malformed input.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Cross-field validation: alpha_m > K_m, theta in domain, bernoulli means in
/// [0,1] over the reachable parameter range, pricing theta*p <= 1, drift range
/// inside the domain. Returns human-readable problems; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Effective sliding window for the config (explicit, or the drift-rate rule).
long effective_window(const ExperimentConfig& cfg);

/// Per-group alpha vector for a policy config (default K_m + 1).
std::vector<double> effective_alphas(const ExperimentConfig& cfg, const PolicyConfig& pc);

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, const PolicyConfig& pc);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace regional

#endif
