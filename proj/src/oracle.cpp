#include "sfcsim/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sfcsim/service_plane.hpp"

namespace sfcsim {

namespace {

constexpr double kTolerance = 1e-6;
constexpr int kMaxIterations = 10000;
constexpr int kTailWindow = 100;

std::vector<double> step(const OracleInput& in, const std::vector<double>& p) {
    const std::size_t k = in.instances.size();
    std::vector<double> weights(k);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double offered = in.offered_pps * p[i];
        const double admitted = std::min(in.instances[i].capacity_pps, offered);
        double vnf_cost = 0.0;
        switch (in.policy) {
            case CostPolicy::RemainingCapacity:
                vnf_cost = std::max(0.0, in.instances[i].capacity_pps - admitted);
                break;
            case CostPolicy::ConsumedLoad:
                vnf_cost = admitted;
                break;
        }
        const double total =
            static_cast<double>(in.instances[i].network_cost) + vnf_cost;
        weights[i] = 1.0 / (1.0 + total);
        total_weight += weights[i];
    }
    for (auto& w : weights) w /= total_weight;
    return weights;
}

}  // namespace

OracleResult oracle_distribution(const OracleInput& input) {
    OracleResult result;
    const std::size_t k = input.instances.size();
    if (k == 0) return result;

    std::vector<double> p(k, 1.0 / static_cast<double>(k));
    std::vector<std::vector<double>> tail;
    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        const auto next = step(input, p);
        double delta = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            delta = std::max(delta, std::abs(next[i] - p[i]));
            // Half-step damping: keeps the same fixed points but settles
            // oscillating trajectories.
            p[i] = 0.5 * (p[i] + next[i]);
        }
        result.iterations = iter;
        if (delta < kTolerance) {
            result.converged = true;
            break;
        }
        if (iter > kMaxIterations - kTailWindow) tail.push_back(p);
    }
    if (!result.converged && !tail.empty()) {
        // Report the trajectory tail average.
        std::vector<double> avg(k, 0.0);
        for (const auto& sample : tail) {
            for (std::size_t i = 0; i < k; ++i) avg[i] += sample[i];
        }
        for (auto& v : avg) v /= static_cast<double>(tail.size());
        p = avg;
    }

    result.routing_p = p;
    result.admitted_share.resize(k);
    double admitted_total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        result.admitted_share[i] =
            std::min(input.instances[i].capacity_pps, input.offered_pps * p[i]);
        admitted_total += result.admitted_share[i];
    }
    if (admitted_total > 0) {
        for (auto& s : result.admitted_share) s /= admitted_total;
    }
    return result;
}

std::vector<PhaseOracle> oracle_for_scenario(const Scenario& scenario,
                                             CostPolicy policy) {
    if (scenario.service_ids.size() != 1) {
        throw UnsupportedByOracle(
            "oracle handles single-service scenarios only (" +
            std::to_string(scenario.service_ids.size()) + " service types)");
    }

    // Network costs from the ingress over the configured topology.
    ServicePlaneView view;
    for (const auto& [name, id] : scenario.node_ids) view.nfv_nodes.insert(id);
    for (const auto& link : scenario.links) {
        const NodeId a = scenario.node_id(link.a);
        const NodeId b = scenario.node_id(link.b);
        view.network_edges.push_back(NetworkEdge{a, b, link.cost});
        view.network_edges.push_back(NetworkEdge{b, a, link.cost});
    }
    const NodeId ingress = scenario.node_id(scenario.traffic.ingress);
    const auto costs = network_costs(view, ingress);

    const double offered = scenario.traffic.flow_rate *
                           scenario.traffic.flow_duration *
                           scenario.traffic.flow_pps;

    // Instance lifecycle: placements exist from t=0, events add/remove them.
    struct Lifecycle {
        InstanceId id;
        std::string label;
        NodeId host;
        double capacity;
        double born;
        double died;
    };
    std::vector<Lifecycle> lifecycle;
    InstanceId next_id = 1;
    for (const auto& vnf : scenario.vnfs) {
        lifecycle.push_back(Lifecycle{next_id++, vnf.name,
                                      scenario.node_id(vnf.node),
                                      vnf.capacity_pps, 0.0,
                                      scenario.duration});
    }
    std::vector<double> boundaries{0.0};
    for (const auto& ev : scenario.events) {
        boundaries.push_back(ev.at);
        if (ev.action == EventSpec::Action::InstantiateVnf) {
            lifecycle.push_back(Lifecycle{
                next_id++, ev.name.empty() ? ev.service + "@" + ev.node : ev.name,
                scenario.node_id(ev.node), ev.capacity_pps, ev.at,
                scenario.duration});
        } else {
            for (auto& inst : lifecycle) {
                const bool by_name = !ev.name.empty() && inst.label == ev.name;
                const bool by_host = ev.name.empty() && !ev.node.empty() &&
                                     inst.host == scenario.node_id(ev.node) &&
                                     inst.died == scenario.duration;
                if (by_name || by_host) {
                    inst.died = ev.at;
                    break;
                }
            }
        }
    }
    boundaries.push_back(scenario.duration);
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());

    std::vector<PhaseOracle> phases;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        PhaseOracle phase;
        phase.phase = "phase" + std::to_string(i + 1);
        phase.from = boundaries[i];
        phase.to = boundaries[i + 1];
        OracleInput input;
        input.offered_pps = offered;
        input.policy = policy;
        for (const auto& inst : lifecycle) {
            if (inst.born <= phase.from && inst.died >= phase.to) {
                auto cit = costs.find(inst.host);
                if (cit == costs.end()) continue;
                phase.instances.push_back(OracleInstance{
                    inst.id, inst.label, inst.host == ingress ? 0 : cit->second,
                    inst.capacity});
            }
        }
        input.instances = phase.instances;
        phase.result = oracle_distribution(input);
        phases.push_back(std::move(phase));
    }
    return phases;
}

}  // namespace sfcsim
