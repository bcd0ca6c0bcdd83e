#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "sfcsim/event_queue.hpp"
#include "sfcsim/metrics.hpp"
#include "sfcsim/node.hpp"
#include "sfcsim/scenario.hpp"

namespace sfcsim {

struct SimulationOptions {
    bool traffic_enabled = true;  // `dump-wcmp` runs the control plane only
};

// One deterministic simulation run of a scenario. Everything — packet fates,
// LSA timing, CSV bytes — is a pure function of (scenario, seed, run_index).
class Simulation {
public:
    using Options = SimulationOptions;

    Simulation(const Scenario& scenario, std::uint32_t run_index,
               Options options = SimulationOptions{});

    // Runs to completion: recurring events stop at scenario duration, then
    // the queue drains so no packet is left in flight.
    RunResult run();

    // Runs every event with time <= until, for control-plane inspection.
    void run_until(double until);

    const NfvNode& node(NodeId id) const { return *nodes_[id]; }
    NfvNode& node(NodeId id) { return *nodes_[id]; }
    const Scenario& scenario() const { return scenario_; }
    const Counters& counters() const { return result_.counters; }
    double now() const { return queue_.now(); }

private:
    void schedule_control_plane();
    void run_cycle(NodeId id);
    void schedule_traffic();
    void schedule_scenario_events();
    void schedule_metric_sample(double t);

    void flood_from(NodeId origin, const Lsa& lsa);
    void deliver_lsa(NodeId at, NodeId from, const Lsa& lsa);

    void start_flow(std::uint64_t flow_seq, double start);
    void emit_packet(std::uint64_t flow_id, const FlowKey& key,
                     std::uint32_t packets_left, double t);
    void ingress_packet(const FlowKey& key, std::uint64_t flow_id);
    void forward_from(NodeId at, NshPacket pkt);
    void tunnel_arrival(NodeId at, NshPacket pkt);
    void process_local(NodeId at, NshPacket pkt, InstanceId instance);
    void after_vnf(NodeId at, NshPacket pkt);
    void record_delivery(const NshPacket& pkt);
    void count_drop(DropCause cause);
    void note_steer(InstanceId instance);

    void run_timed_event(const EventSpec& ev, InstanceId preallocated_id);
    void take_metric_sample();

    // Sum of link delays along the min-cost underlay path (ties toward
    // smaller node ids).
    double transit_delay(NodeId from, NodeId to) const;
    void precompute_underlay();

    Scenario scenario_;
    Options options_;
    std::uint32_t run_index_;
    std::uint64_t run_seed_;

    EventQueue queue_;
    std::vector<std::unique_ptr<NfvNode>> nodes_;
    ChainCatalog catalog_;
    std::vector<ClassifierRule> rules_;
    Rng traffic_rng_;

    NodeId ingress_ = 0;
    NodeId egress_ = 0;
    std::uint64_t next_flow_seq_ = 0;
    std::uint64_t flows_active_ = 0;
    InstanceId next_instance_id_ = 1;

    std::map<std::pair<NodeId, NodeId>, double> underlay_delay_;
    std::map<InstanceId, std::string> instance_labels_;
    std::map<std::string, InstanceId> instances_by_name_;

    RunResult result_;
};

// Convenience wrapper: build, run, return.
RunResult simulate(const Scenario& scenario, std::uint32_t run_index);

}  // namespace sfcsim
