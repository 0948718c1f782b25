#ifndef REGIONAL_RUNNER_HPP
#define REGIONAL_RUNNER_HPP

#include <string>
#include <vector>

#include "regional/analysis.hpp"
#include "regional/config.hpp"

namespace regional {

/// One seeded replication of a policy against the environment.
RegretTrace simulate(const BanditInstance& inst, const DriftSchedule& sched, Policy& policy,
                     long horizon, std::uint64_t seed, int replication);

struct PolicyRun {
    std::string policy;
    std::vector<RegretTrace> traces;
    std::vector<SummaryPoint> summary;
};

/// Runs every configured policy for the configured replication count.
/// Replications are distributed over a worker pool; results are assembled in
/// replication order, so the output is independent of scheduling.
std::vector<PolicyRun> run_experiment(const ExperimentConfig& cfg, int num_threads = 0);

/// Long-format plot series: (series name, t, mean, stderr).
struct PlotRow {
    std::string series;
    long t;
    double mean;
    double stderr_;
};

/// One cumulative-regret series per policy; optionally a second
/// "<policy>-per-unit" series each (preset summaries emit both).
std::vector<PlotRow> emit_plot_data(const std::vector<PolicyRun>& runs,
                                    bool include_per_unit = false);

/// Trace CSV: `policy,replication,t,group,arm,reward,inst_regret,cum_regret`
/// with 1-based indices and 17-significant-digit floats. When `thin` is set,
/// every step is written for t <= 1000 and every 10th step afterwards.
void write_traces_csv(const std::string& path, const std::vector<PolicyRun>& runs, bool thin);

void write_plot_csv(const std::string& path, const std::vector<PlotRow>& rows);

/// Full config-driven run: simulate, then write `traces.csv` and
/// `summary.csv` under cfg.out_dir. Returns 0 on success, 3 on I/O failure.
int run_and_write(const ExperimentConfig& cfg, int num_threads = 0);

}  // namespace regional

#endif
