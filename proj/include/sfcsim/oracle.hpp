#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfcsim/scenario.hpp"

namespace sfcsim {

class UnsupportedByOracle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleInstance {
    InstanceId instance = 0;
    std::string label;
    std::uint64_t network_cost = 0;  // from the ingress
    double capacity_pps = 0.0;
};

struct OracleInput {
    std::vector<OracleInstance> instances;
    double offered_pps = 0.0;
    CostPolicy policy = CostPolicy::RemainingCapacity;
};

// Predicted steady state of the control loop, computed by iterating the
// coupled difference equations (routing probabilities -> offered loads ->
// admitted loads -> costs -> weights -> probabilities) on fluid quantities,
// independently of the discrete-event machinery.
struct OracleResult {
    std::vector<double> routing_p;      // per instance, order of input
    std::vector<double> admitted_share; // per instance, of total admitted
    bool converged = false;
    int iterations = 0;
};

OracleResult oracle_distribution(const OracleInput& input);

// Phase-by-phase prediction for a scenario: phase boundaries come from the
// timed VNF lifecycle events. Throws UnsupportedByOracle for scenarios with
// more than one service type.
struct PhaseOracle {
    std::string phase;
    double from = 0.0;
    double to = 0.0;
    std::vector<OracleInstance> instances;
    OracleResult result;
};

std::vector<PhaseOracle> oracle_for_scenario(const Scenario& scenario,
                                             CostPolicy policy);

}  // namespace sfcsim
