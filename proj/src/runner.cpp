#include "regional/runner.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace regional {

RegretTrace simulate(const BanditInstance& inst, const DriftSchedule& sched, Policy& policy,
                     long horizon, std::uint64_t seed, int replication) {
    RegretTrace trace;
    trace.policy = policy.name();
    trace.replication = replication;
    trace.seed = seed;
    trace.steps.reserve(static_cast<std::size_t>(horizon));
    Rng rng(seed);
    double cum = 0.0;
    for (long t = 1; t <= horizon; ++t) {
        const auto [m, k] = policy.select(t, rng);
        const double reward = sample_reward(inst, sched, m, k, t, rng);
        policy.update(m, k, reward);
        const double inst_regret = instantaneous_regret(inst, sched, t, m, k);
        cum += inst_regret;
        trace.steps.push_back({m, k, reward, inst_regret, cum});
    }
    return trace;
}

std::vector<PolicyRun> run_experiment(const ExperimentConfig& cfg, int num_threads) {
    const auto problems = validate_config(cfg);
    if (!problems.empty()) throw std::invalid_argument("invalid config: " + problems.front());

    if (num_threads <= 0)
        num_threads = std::max(1u, std::thread::hardware_concurrency());

    std::vector<PolicyRun> runs;
    for (const auto& pc : cfg.policies) {
        PolicyRun run;
        run.policy = pc.name;
        run.traces.resize(static_cast<std::size_t>(cfg.replications));

        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= cfg.replications) return;
                auto policy = make_policy(cfg, pc);  // each replication owns its state
                run.traces[static_cast<std::size_t>(r)] =
                    simulate(cfg.instance, cfg.drift, *policy, cfg.horizon,
                             cfg.base_seed + static_cast<std::uint64_t>(r), r);
            }
        };
        std::vector<std::thread> pool;
        const int n = std::min(num_threads, cfg.replications);
        pool.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        run.summary = regret_summary(run.traces);
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<PlotRow> emit_plot_data(const std::vector<PolicyRun>& runs, bool include_per_unit) {
    std::vector<PlotRow> rows;
    for (const auto& run : runs) {
        for (const auto& p : run.summary)
            rows.push_back({run.policy, p.t, p.cum_mean, p.cum_stderr});
        if (!include_per_unit) continue;
        for (const auto& p : run.summary)
            rows.push_back({run.policy + "-per-unit", p.t, p.per_unit_mean, p.per_unit_stderr});
    }
    return rows;
}

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_traces_csv(const std::string& path, const std::vector<PolicyRun>& runs, bool thin) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "policy,replication,t,group,arm,reward,inst_regret,cum_regret\n";
    for (const auto& run : runs) {
        for (const auto& tr : run.traces) {
            for (std::size_t i = 0; i < tr.steps.size(); ++i) {
                const long t = static_cast<long>(i) + 1;
                if (thin && t > 1000 && t % 10 != 0) continue;
                const auto& s = tr.steps[i];
                out << run.policy << ',' << tr.replication << ',' << t << ',' << s.group + 1
                    << ',' << s.arm + 1 << ',' << fmt17(s.reward) << ',' << fmt17(s.inst_regret)
                    << ',' << fmt17(s.cum_regret) << '\n';
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_plot_csv(const std::string& path, const std::vector<PlotRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "series,t,mean,stderr\n";
    for (const auto& r : rows)
        out << r.series << ',' << r.t << ',' << fmt17(r.mean) << ',' << fmt17(r.stderr_) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

int run_and_write(const ExperimentConfig& cfg, int num_threads) {
    const auto runs = run_experiment(cfg, num_threads);
    try {
        std::filesystem::create_directories(cfg.out_dir);
        write_traces_csv(cfg.out_dir + "/traces.csv", runs, cfg.thin_traces);
        write_plot_csv(cfg.out_dir + "/summary.csv", emit_plot_data(runs, true));
    } catch (const std::exception&) {
        return 3;
    }
    return 0;
}

}  // namespace regional
