#include "sfcsim/batch.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sfcsim/simulation.hpp"

namespace sfcsim {

std::vector<PhaseWindow> steady_state_windows(const Scenario& scenario) {
    std::vector<double> boundaries{0.0};
    for (const auto& ev : scenario.events) boundaries.push_back(ev.at);
    boundaries.push_back(scenario.duration);
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());

    std::vector<PhaseWindow> windows;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        PhaseWindow w;
        w.name = "phase" + std::to_string(i + 1);
        w.from = boundaries[i] + scenario.traffic.flow_duration;
        w.to = boundaries[i + 1];
        if (w.from < w.to) windows.push_back(w);
    }
    return windows;
}

std::map<InstanceId, double> window_shares(
    const std::vector<MetricsFrame>& frames, const PhaseWindow& window) {
    std::map<InstanceId, double> admitted;
    double total = 0.0;
    for (const auto& frame : frames) {
        if (frame.time <= window.from || frame.time > window.to) continue;
        for (const auto& inst : frame.instances) {
            admitted[inst.instance] += inst.admitted_pps;
            total += inst.admitted_pps;
        }
    }
    if (total > 0) {
        for (auto& [id, v] : admitted) v /= total;
    }
    return admitted;
}

ShareStats share_stats(std::vector<double> samples) {
    ShareStats stats;
    if (samples.empty()) return stats;
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return samples[lo] * (1.0 - frac) + samples[hi] * frac;
    };

    double sum = 0.0;
    for (double v : samples) sum += v;
    stats.mean = sum / static_cast<double>(n);
    stats.median = quantile(0.5);
    stats.q1 = quantile(0.25);
    stats.q3 = quantile(0.75);
    stats.min = samples.front();
    stats.max = samples.back();
    return stats;
}

BatchOutput run_batch(const Scenario& scenario,
                      const std::function<void(const RunResult&)>& per_run) {
    BatchOutput out;
    out.windows = steady_state_windows(scenario);

    for (std::uint32_t run = 0; run < scenario.runs; ++run) {
        RunResult result = simulate(scenario, run);
        if (per_run) per_run(result);

        RunSummary summary;
        summary.run_index = run;
        summary.counters = result.counters;
        summary.first_steer_time = result.first_steer_time;
        for (const auto& window : out.windows) {
            summary.phase_shares[window.name] =
                window_shares(result.frames, window);
        }
        for (const auto& frame : result.frames) {
            for (const auto& inst : frame.instances) {
                out.hosts.emplace(inst.instance, inst.host);
            }
        }
        for (const auto& [id, label] : result.instance_labels) {
            out.labels.emplace(id, label);
        }
        out.runs.push_back(std::move(summary));
    }

    for (const auto& window : out.windows) {
        std::map<InstanceId, std::vector<double>> samples;
        for (const auto& run : out.runs) {
            auto it = run.phase_shares.find(window.name);
            if (it == run.phase_shares.end()) continue;
            for (const auto& [id, share] : it->second) {
                samples[id].push_back(share);
            }
        }
        for (auto& [id, values] : samples) {
            out.aggregate[window.name][id] = share_stats(std::move(values));
        }
    }
    return out;
}

void write_aggregate_csv(std::ostream& out, const BatchOutput& batch) {
    out << "phase,instance,host,label,mean,median,q1,q3,min,max\n";
    for (const auto& window : batch.windows) {
        auto it = batch.aggregate.find(window.name);
        if (it == batch.aggregate.end()) continue;
        for (const auto& [id, stats] : it->second) {
            const auto host = batch.hosts.find(id);
            const auto label = batch.labels.find(id);
            out << window.name << ',' << id << ','
                << (host == batch.hosts.end() ? "" : host->second) << ','
                << (label == batch.labels.end() ? "" : label->second) << ','
                << format_double(stats.mean) << ',' << format_double(stats.median)
                << ',' << format_double(stats.q1) << ',' << format_double(stats.q3)
                << ',' << format_double(stats.min) << ','
                << format_double(stats.max) << '\n';
        }
    }
}

}  // namespace sfcsim
