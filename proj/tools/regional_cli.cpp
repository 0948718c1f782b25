#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regional/analysis.hpp"
#include "regional/config.hpp"
#include "regional/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void apply_env_out_dir(regional::ExperimentConfig& cfg) {
    if (const char* dir = std::getenv("REGIONAL_OUT_DIR")) cfg.out_dir = dir;
}

int validate_or_report(const regional::ExperimentConfig& cfg) {
    const auto problems = regional::validate_config(cfg);
    if (problems.empty()) return 0;
    for (std::size_t i = 0; i < problems.size(); ++i)
        std::cerr << "config error " << i + 1 << ": " << problems[i] << "\n";
    return kExitValidation;
}

int do_run(regional::ExperimentConfig cfg, int threads) {
    apply_env_out_dir(cfg);
    if (const int rc = validate_or_report(cfg)) return rc;
    const int rc = regional::run_and_write(cfg, threads);
    if (rc == 0)
        std::cout << "wrote " << cfg.out_dir << "/traces.csv and " << cfg.out_dir
                  << "/summary.csv\n";
    else
        std::cerr << "failed to write output under " << cfg.out_dir << "\n";
    return rc;
}

std::vector<double> parse_horizons(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regional bandit simulator"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir, horizons_arg = "100,1000,10000";
    int threads = 0;
    long horizon = -1, reps = -1, window = -1;
    std::uint64_t seed = 0;
    bool have_seed = false;
    double grid = 1e-4;

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
    run_cmd->add_option("config", config_path, "config JSON file")->required();
    run_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* preset_cmd = app.add_subcommand("preset", "run a named preset");
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    preset_cmd->add_option("--out", out_dir, "output directory");
    preset_cmd->add_option("--seed", seed, "base seed")->each([&](const std::string&) { have_seed = true; });
    preset_cmd->add_option("--horizon", horizon, "time horizon T");
    preset_cmd->add_option("--reps", reps, "replication count");
    preset_cmd->add_option("--window", window, "sliding-window length");
    preset_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    bool dump_config = false;
    preset_cmd->add_flag("--dump-config", dump_config, "print the preset config JSON and exit");
    bool list_presets = false;
    preset_cmd->add_flag("--list", list_presets, "list preset names and exit");

    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the regret bound curves");
    bounds_cmd->add_option("config", config_path, "config JSON file")->required();
    bounds_cmd->add_option("--horizons", horizons_arg, "comma-separated horizons");
    bounds_cmd->add_option("--out", out_dir, "write CSV here instead of stdout");

    auto* regions_cmd = app.add_subcommand("regions", "print per-arm optimal regions");
    regions_cmd->add_option("config", config_path, "config JSON file")->required();
    regions_cmd->add_option("--grid", grid, "grid step");

    auto* validate_cmd = app.add_subcommand("validate", "check a config file");
    validate_cmd->add_option("config", config_path, "config JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return do_run(regional::load_config(config_path), threads);
        }
        if (preset_cmd->parsed()) {
            if (list_presets) {
                for (const auto& n : regional::preset_names()) std::cout << n << "\n";
                return 0;
            }
            auto cfg = regional::preset(preset_name);
            if (have_seed) cfg.base_seed = seed;
            if (horizon > 0) cfg.horizon = horizon;
            if (reps > 0) cfg.replications = static_cast<int>(reps);
            if (window > 0) cfg.window = window;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (dump_config) {
                std::cout << regional::serialize_config(cfg) << "\n";
                return 0;
            }
            return do_run(std::move(cfg), threads);
        }
        if (bounds_cmd->parsed()) {
            auto cfg = regional::load_config(config_path);
            if (const int rc = validate_or_report(cfg)) return rc;
            std::vector<regional::PlotRow> rows;
            // UCB-g alphas: first group-UCB policy in the config, else defaults
            regional::PolicyConfig pc{"ucb-g"};
            for (const auto& p : cfg.policies)
                if (p.name == "ucb-g" || p.name == "sw-ucb-g") pc = p;
            const auto alphas = regional::effective_alphas(cfg, pc);
            for (double T : parse_horizons(horizons_arg)) {
                const auto rep = regional::regret_upper_bound(cfg.instance, alphas, T, cfg.grid_step);
                rows.push_back({"thm1-bound", static_cast<long>(T), rep.total, 0.0});
            }
            if (out_dir.empty()) {
                std::cout << "series,t,mean,stderr\n";
                for (const auto& r : rows)
                    std::printf("%s,%ld,%.17g,%.17g\n", r.series.c_str(), r.t, r.mean, r.stderr_);
            } else {
                regional::write_plot_csv(out_dir, rows);
            }
            return 0;
        }
        if (regions_cmd->parsed()) {
            auto cfg = regional::load_config(config_path);
            if (const int rc = validate_or_report(cfg)) return rc;
            for (std::size_t m = 0; m < cfg.instance.groups.size(); ++m) {
                const auto geo = regional::compute_regions(cfg.instance.groups[m], grid);
                std::cout << "group " << m + 1 << " (theta = " << cfg.instance.theta_true[m]
                          << ", biased distance = "
                          << regional::biased_distance(geo, cfg.instance.theta_true[m]) << ")\n";
                for (std::size_t k = 0; k < geo.optimal_regions.size(); ++k) {
                    std::cout << "  arm " << k + 1 << ":";
                    for (const auto& iv : geo.optimal_regions[k])
                        std::cout << " [" << iv.lo << ", " << iv.hi << "]";
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto cfg = regional::load_config(config_path);
            const int rc = validate_or_report(cfg);
            if (rc == 0) std::cout << "config OK\n";
            return rc;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
