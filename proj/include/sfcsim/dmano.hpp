#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "sfcsim/lsa.hpp"
#include "sfcsim/types.hpp"

namespace sfcsim {

struct DmanoConfig {
    double cycle_period = 2.0;  // seconds between monitor/announce/compute cycles
    CostPolicy cost_policy = CostPolicy::RemainingCapacity;
    std::uint32_t min_cost_delta = 0;  // re-originate only if cost moved this much
    bool announce_immediately = true;  // announce lifecycle changes outside the cycle
    std::uint32_t cost_ceiling = 65535;
    double max_age = 3600.0;  // LSA lifetime
};

struct VnfMeasurement {
    InstanceId instance = 0;
    double pps = 0.0;       // measured over the last cycle
    double capacity = 0.0;  // pps
};

// Translates a measurement into a VNF cost on the link-cost scale.
inline std::uint32_t derive_cost(const VnfMeasurement& m, CostPolicy policy,
                                 std::uint32_t cost_ceiling) {
    double cost = 0.0;
    switch (policy) {
        case CostPolicy::RemainingCapacity:
            cost = std::max(0.0, std::round(m.capacity - m.pps));
            break;
        case CostPolicy::ConsumedLoad:
            cost = std::round(m.pps);
            break;
    }
    if (cost > static_cast<double>(cost_ceiling)) return cost_ceiling;
    return static_cast<std::uint32_t>(cost);
}

// Per-node control-loop state carried between cycles.
struct DmanoState {
    DmanoConfig config;
    std::map<InstanceId, std::uint32_t> announced_cost;
    std::map<InstanceId, double> announced_at;
    std::vector<VnfLsaBody> pending_withdrawals;  // deferred announcements
    std::uint64_t next_generation = 1;
};

}  // namespace sfcsim
