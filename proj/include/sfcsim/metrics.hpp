#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sfcsim/types.hpp"

namespace sfcsim {

struct Counters {
    std::uint64_t packets_in = 0;
    std::uint64_t delivered = 0;
    std::uint64_t drops_unclassified = 0;
    std::uint64_t drops_unroutable = 0;
    std::uint64_t drops_overload = 0;
    std::uint64_t drops_ttl_expired = 0;
    std::uint64_t drops_misdelivery = 0;
    std::uint64_t lsa_tx_total = 0;
    std::uint64_t stale_lsa_rx = 0;
    std::uint64_t orphan_attachments = 0;
    std::uint64_t redispatches = 0;
    std::uint64_t flows_started = 0;
    std::uint64_t flows_completed = 0;
    std::uint64_t flows_active_at_end = 0;

    std::uint64_t total_drops() const {
        return drops_unclassified + drops_unroutable + drops_overload +
               drops_ttl_expired + drops_misdelivery;
    }
};

struct InstanceSample {
    InstanceId instance = 0;
    std::string host;
    double admitted_pps = 0.0;
    double share = 0.0;  // of total admitted in this window; 0 when idle
};

// One row group of the per-run time series, sampled every second.
struct MetricsFrame {
    double time = 0.0;
    std::vector<InstanceSample> instances;  // sorted by instance id
    std::uint64_t drops_overload = 0;       // cumulative
    std::uint64_t drops_unroutable = 0;     // cumulative
    std::uint64_t lsa_tx_total = 0;         // cumulative
    std::uint64_t generation = 0;           // ingress node's table generation
};

struct DeliveryRecord {
    std::uint64_t flow_id = 0;
    double ingress_time = 0.0;
    double delivered_time = 0.0;
    std::vector<InstanceId> hops;
};

struct RunResult {
    std::uint32_t run_index = 0;
    std::vector<MetricsFrame> frames;
    Counters counters;
    std::vector<DeliveryRecord> deliveries;
    std::map<InstanceId, double> first_steer_time;
    std::map<InstanceId, std::string> instance_labels;
};

// Per-run time series CSV:
// time,instance,host,admitted_pps,share,drops_overload,drops_unroutable,lsa_tx_total,generation
void write_run_csv(std::ostream& out, const RunResult& result);

// Reads a CSV produced by write_run_csv back into frames (used by `plot`).
struct ParsedRunCsv {
    std::vector<MetricsFrame> frames;
    std::map<InstanceId, std::string> hosts;
};
ParsedRunCsv read_run_csv(std::istream& in);

// Deterministic shortest-round-trip formatting for doubles.
std::string format_double(double v);

}  // namespace sfcsim
