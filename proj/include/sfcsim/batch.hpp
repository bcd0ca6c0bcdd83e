#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sfcsim/metrics.hpp"
#include "sfcsim/scenario.hpp"

namespace sfcsim {

// Steady-state analysis window; one per scenario phase, starting one flow
// lifetime after the phase boundary so the population has turned over.
struct PhaseWindow {
    std::string name;
    double from = 0.0;
    double to = 0.0;
};

std::vector<PhaseWindow> steady_state_windows(const Scenario& scenario);

// Per-run share of admitted traffic per instance within a window
// (ratio of sums over the window's metric frames).
std::map<InstanceId, double> window_shares(const std::vector<MetricsFrame>& frames,
                                           const PhaseWindow& window);

struct ShareStats {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

ShareStats share_stats(std::vector<double> samples);

struct RunSummary {
    std::uint32_t run_index = 0;
    Counters counters;
    // window name -> instance -> share of admitted traffic
    std::map<std::string, std::map<InstanceId, double>> phase_shares;
    std::map<InstanceId, double> first_steer_time;
};

struct BatchOutput {
    std::vector<PhaseWindow> windows;
    std::vector<RunSummary> runs;
    // window name -> instance -> stats over runs
    std::map<std::string, std::map<InstanceId, ShareStats>> aggregate;
    std::map<InstanceId, std::string> hosts;
    std::map<InstanceId, std::string> labels;
};

// Runs `scenario.runs` deterministic runs (run k seeded from (seed, k)) and
// aggregates the per-phase shares. `per_run` is invoked with each full
// RunResult before it is discarded, so callers can stream CSVs to disk.
BatchOutput run_batch(const Scenario& scenario,
                      const std::function<void(const RunResult&)>& per_run = {});

// Aggregate CSV: phase,instance,host,label,mean,median,q1,q3,min,max
void write_aggregate_csv(std::ostream& out, const BatchOutput& batch);

}  // namespace sfcsim
