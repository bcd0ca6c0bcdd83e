#include "sfcsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace sfcsim {

namespace {

// Traffic generator 5-tuple template: one synthetic source behind the
// ingress, one sink behind the egress, a distinct source port per flow.
constexpr std::uint32_t kSourceAddr = 0x0A00000A;  // 10.0.0.10
constexpr std::uint32_t kSinkAddr = 0x0A630001;    // 10.99.0.1
constexpr std::uint16_t kSinkPort = 80;
constexpr std::uint8_t kUdp = 17;

constexpr double kMetricPeriod = 1.0;

}  // namespace

Simulation::Simulation(const Scenario& scenario, std::uint32_t run_index,
                       Options options)
    : scenario_(scenario),
      options_(options),
      run_index_(run_index),
      run_seed_(derive_seed(scenario.seed, run_index)),
      catalog_(scenario.catalog()),
      rules_(scenario.classifier_rules()),
      traffic_rng_(derive_seed(run_seed_, 0x7261666963ull)) {
    result_.run_index = run_index;

    nodes_.reserve(scenario_.nodes.size());
    for (std::size_t i = 0; i < scenario_.nodes.size(); ++i) {
        const NodeId id = static_cast<NodeId>(i);
        nodes_.push_back(std::make_unique<NfvNode>(
            id, scenario_.nodes[i], derive_seed(run_seed_, 0x1000 + id),
            &catalog_, scenario_.dmano, scenario_.cache_idle_timeout));
    }
    for (const auto& link : scenario_.links) {
        const NodeId a = scenario_.node_id(link.a);
        const NodeId b = scenario_.node_id(link.b);
        nodes_[a]->adjacencies.push_back(Adjacency{b, link.cost, link.delay});
        nodes_[b]->adjacencies.push_back(Adjacency{a, link.cost, link.delay});
    }
    precompute_underlay();

    if (scenario_.traffic.flow_rate > 0 && !scenario_.nodes.empty()) {
        ingress_ = scenario_.node_id(scenario_.traffic.ingress);
        egress_ = scenario_.node_id(scenario_.traffic.egress);
    }

    // Register scenario-start placements; their first announcement happens
    // in the t=0 control cycle.
    for (const auto& vnf : scenario_.vnfs) {
        const InstanceId id = next_instance_id_++;
        auto& node = *nodes_[scenario_.node_id(vnf.node)];
        node.instances.emplace(
            id, VnfInstanceModel(id, scenario_.service_id(vnf.service), node.id,
                                 vnf.capacity_pps));
        instance_labels_[id] = vnf.name;
        if (!vnf.name.empty()) instances_by_name_[vnf.name] = id;
    }

    schedule_control_plane();
    // All samples are scheduled up front so a sample at time t runs before
    // any scenario event at the same t; the frame then reflects the world
    // strictly before the event.
    for (double t = kMetricPeriod; t <= scenario_.duration; t += kMetricPeriod) {
        schedule_metric_sample(t);
    }
    schedule_scenario_events();
    if (options_.traffic_enabled) schedule_traffic();
}

void Simulation::precompute_underlay() {
    // Dijkstra per source over the static topology; predecessor choice
    // prefers the smaller previous node so the delay sums are reproducible.
    for (const auto& src_ptr : nodes_) {
        const NodeId src = src_ptr->id;
        std::map<NodeId, std::uint64_t> dist{{src, 0}};
        std::map<NodeId, double> delay{{src, 0.0}};
        using Item = std::pair<std::uint64_t, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        pq.emplace(0, src);
        std::map<NodeId, bool> done;
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = true;
            for (const auto& adj : nodes_[u]->adjacencies) {
                const std::uint64_t nd = d + adj.cost;
                auto it = dist.find(adj.peer);
                if (it == dist.end() || nd < it->second) {
                    dist[adj.peer] = nd;
                    delay[adj.peer] = delay[u] + adj.delay;
                    pq.emplace(nd, adj.peer);
                }
            }
        }
        for (const auto& [dst, d] : delay) {
            underlay_delay_[{src, dst}] = d;
        }
    }
}

double Simulation::transit_delay(NodeId from, NodeId to) const {
    auto it = underlay_delay_.find({from, to});
    return it == underlay_delay_.end() ? 0.0 : it->second;
}

void Simulation::schedule_control_plane() {
    // Router LSAs first, so a VNF announcement never outruns its origin's
    // router LSA on any (FIFO, equal-delay) link.
    for (auto& node : nodes_) {
        const Lsa lsa =
            node->linkstate.originate(node->id, node->router_lsa_body(), 0.0);
        flood_from(node->id, lsa);
    }
    for (auto& node : nodes_) {
        const NodeId id = node->id;
        queue_.schedule(0.0, EventKind::DmanoCycle, [this, id] { run_cycle(id); });
    }
}

void Simulation::run_cycle(NodeId id) {
    auto& n = *nodes_[id];
    result_.counters.orphan_attachments += run_control_cycle(
        n, queue_.now(), [this, id](const Lsa& lsa) { flood_from(id, lsa); });
    const double next = queue_.now() + n.dmano.config.cycle_period;
    if (next <= scenario_.duration) {
        queue_.schedule(next, EventKind::DmanoCycle,
                        [this, id] { run_cycle(id); });
    }
}

void Simulation::flood_from(NodeId origin, const Lsa& lsa) {
    for (const auto& adj : nodes_[origin]->adjacencies) {
        ++result_.counters.lsa_tx_total;
        const NodeId to = adj.peer;
        queue_.schedule(queue_.now() + adj.delay, EventKind::LsaDelivery,
                        [this, to, origin, lsa] { deliver_lsa(to, origin, lsa); });
    }
}

void Simulation::deliver_lsa(NodeId at, NodeId from, const Lsa& lsa) {
    auto& node = *nodes_[at];
    const auto neighbors = node.neighbor_ids();
    const auto forward =
        node.linkstate.on_receive(lsa, from, neighbors, queue_.now());
    for (NodeId next : forward) {
        double delay = 0.0;
        for (const auto& adj : node.adjacencies) {
            if (adj.peer == next) delay = adj.delay;
        }
        ++result_.counters.lsa_tx_total;
        queue_.schedule(queue_.now() + delay, EventKind::LsaDelivery,
                        [this, next, at, lsa] { deliver_lsa(next, at, lsa); });
    }
}

void Simulation::schedule_traffic() {
    if (scenario_.traffic.flow_rate <= 0) return;
    const double inter = 1.0 / scenario_.traffic.flow_rate;
    const double first = scenario_.traffic.arrival == ArrivalProcess::Poisson
                             ? traffic_rng_.exponential(inter)
                             : inter;
    if (first <= scenario_.duration) {
        queue_.schedule(first, EventKind::FlowStart,
                        [this, first] { start_flow(next_flow_seq_++, first); });
    }
}

void Simulation::start_flow(std::uint64_t flow_seq, double start) {
    ++result_.counters.flows_started;
    ++flows_active_;

    FlowKey key;
    key.src_addr = kSourceAddr;
    key.dst_addr = kSinkAddr;
    key.src_port = static_cast<std::uint16_t>(1024 + (flow_seq % 60000));
    key.dst_port = kSinkPort;
    key.protocol = kUdp;

    const std::uint32_t packets = static_cast<std::uint32_t>(
        std::llround(scenario_.traffic.flow_duration * scenario_.traffic.flow_pps));
    if (packets > 0) emit_packet(flow_seq, key, packets, start);

    const double end = start + scenario_.traffic.flow_duration;
    if (end <= scenario_.duration) {
        queue_.schedule(end, EventKind::FlowEnd, [this] {
            ++result_.counters.flows_completed;
            --flows_active_;
        });
    }

    // Chain to the next flow arrival.
    const double inter = 1.0 / scenario_.traffic.flow_rate;
    const double next = scenario_.traffic.arrival == ArrivalProcess::Poisson
                            ? start + traffic_rng_.exponential(inter)
                            : start + inter;
    if (next <= scenario_.duration) {
        queue_.schedule(next, EventKind::FlowStart,
                        [this, next] { start_flow(next_flow_seq_++, next); });
    }
}

void Simulation::emit_packet(std::uint64_t flow_id, const FlowKey& key,
                             std::uint32_t packets_left, double t) {
    queue_.schedule(t, EventKind::PacketArrival,
                    [this, flow_id, key, packets_left, t] {
                        ingress_packet(key, flow_id);
                        if (packets_left > 1) {
                            const double next = t + 1.0 / scenario_.traffic.flow_pps;
                            if (next <= scenario_.duration) {
                                emit_packet(flow_id, key, packets_left - 1, next);
                            }
                        }
                    });
}

void Simulation::ingress_packet(const FlowKey& key, std::uint64_t flow_id) {
    ++result_.counters.packets_in;
    auto pkt = classify(key, rules_, catalog_);
    if (!pkt) {
        count_drop(DropCause::Unclassified);
        return;
    }
    pkt->flow_id = flow_id;
    pkt->ingress_time = queue_.now();
    forward_from(ingress_, std::move(*pkt));
}

void Simulation::forward_from(NodeId at, NshPacket pkt) {
    auto& node = *nodes_[at];
    // Bounded resampling: a stale table can keep offering instances that were
    // withdrawn moments ago.
    for (int attempts = 0; attempts < 16; ++attempts) {
        const ForwardDecision decision = node.connector.forward(pkt, queue_.now());
        switch (decision.kind) {
            case ForwardDecision::Kind::Drop:
                count_drop(decision.cause);
                return;
            case ForwardDecision::Kind::Tunnel: {
                note_steer(decision.instance);
                NodeId target = kInvalidNode;
                for (const auto& n : nodes_) {
                    if (endpoint_for(n->id) == decision.endpoint) target = n->id;
                }
                if (target == kInvalidNode) {
                    count_drop(DropCause::Unroutable);
                    return;
                }
                const double delay = transit_delay(at, target);
                queue_.schedule(queue_.now() + delay, EventKind::PacketArrival,
                                [this, target, pkt = std::move(pkt)]() mutable {
                                    tunnel_arrival(target, std::move(pkt));
                                });
                return;
            }
            case ForwardDecision::Kind::LocalDeliver: {
                note_steer(decision.instance);
                auto it = node.instances.find(decision.instance);
                if (it == node.instances.end()) {
                    // Withdrawn after the table was pushed; forget and redo.
                    node.connector.cache().evict_instance(decision.instance);
                    ++result_.counters.redispatches;
                    continue;
                }
                process_local(at, std::move(pkt), decision.instance);
                return;
            }
        }
    }
    count_drop(DropCause::Unroutable);
}

void Simulation::tunnel_arrival(NodeId at, NshPacket pkt) {
    auto& node = *nodes_[at];
    const auto instance = node.connector.local_dispatch(pkt);
    if (instance && node.instances.contains(*instance)) {
        process_local(at, std::move(pkt), *instance);
        return;
    }
    // The chosen instance disappeared while the packet was in flight; take a
    // fresh decision here.
    ++result_.counters.redispatches;
    forward_from(at, std::move(pkt));
}

void Simulation::process_local(NodeId at, NshPacket pkt, InstanceId instance) {
    auto& node = *nodes_[at];
    auto it = node.instances.find(instance);
    const auto service = catalog_.service_at(pkt.header.spi, pkt.header.si);
    if (!service) {
        count_drop(DropCause::Unroutable);
        return;
    }
    const auto outcome = it->second.process(pkt, *service, queue_.now());
    switch (outcome) {
        case VnfInstanceModel::ProcessResult::DropOverload:
            count_drop(DropCause::Overload);
            return;
        case VnfInstanceModel::ProcessResult::DropMisdelivery:
            count_drop(DropCause::Misdelivery);
            return;
        case VnfInstanceModel::ProcessResult::Admitted:
            after_vnf(at, std::move(pkt));
            return;
    }
}

void Simulation::after_vnf(NodeId at, NshPacket pkt) {
    if (pkt.header.si > 0) {
        forward_from(at, std::move(pkt));
        return;
    }
    // Chain complete: hand the decapsulated payload to the egress.
    if (at == egress_) {
        record_delivery(pkt);
        return;
    }
    const double delay = transit_delay(at, egress_);
    queue_.schedule(queue_.now() + delay, EventKind::PacketArrival,
                    [this, pkt = std::move(pkt)]() mutable {
                        record_delivery(pkt);
                    });
}

void Simulation::record_delivery(const NshPacket& pkt) {
    ++result_.counters.delivered;
    DeliveryRecord rec;
    rec.flow_id = pkt.flow_id;
    rec.ingress_time = pkt.ingress_time;
    rec.delivered_time = queue_.now();
    rec.hops = pkt.hops;
    result_.deliveries.push_back(std::move(rec));
}

void Simulation::count_drop(DropCause cause) {
    switch (cause) {
        case DropCause::Unclassified: ++result_.counters.drops_unclassified; break;
        case DropCause::Unroutable: ++result_.counters.drops_unroutable; break;
        case DropCause::Overload: ++result_.counters.drops_overload; break;
        case DropCause::TtlExpired: ++result_.counters.drops_ttl_expired; break;
        case DropCause::Misdelivery: ++result_.counters.drops_misdelivery; break;
    }
}

void Simulation::note_steer(InstanceId instance) {
    result_.first_steer_time.emplace(instance, queue_.now());
}

void Simulation::schedule_scenario_events() {
    // Pre-allocate instance ids in event order so numbering does not depend
    // on execution interleaving.
    std::vector<std::pair<EventSpec, InstanceId>> planned;
    for (const auto& ev : scenario_.events) {
        InstanceId id = 0;
        if (ev.action == EventSpec::Action::InstantiateVnf) {
            id = next_instance_id_++;
            instance_labels_[id] =
                ev.name.empty() ? ev.service + "@" + ev.node : ev.name;
            if (!ev.name.empty()) instances_by_name_[ev.name] = id;
        }
        planned.emplace_back(ev, id);
    }
    for (const auto& [ev, id] : planned) {
        queue_.schedule(ev.at, EventKind::ScenarioEvent,
                        [this, ev, id] { run_timed_event(ev, id); });
    }
}

void Simulation::run_timed_event(const EventSpec& ev, InstanceId preallocated_id) {
    if (ev.action == EventSpec::Action::InstantiateVnf) {
        const NodeId host = scenario_.node_id(ev.node);
        register_vnf(*nodes_[host], preallocated_id,
                     scenario_.service_id(ev.service), ev.capacity_pps,
                     queue_.now(), [this, host](const Lsa& lsa) {
                         flood_from(host, lsa);
                     });
        return;
    }
    // Withdraw: resolve by name, or by (node, service) against live instances.
    InstanceId target = 0;
    NodeId host = kInvalidNode;
    if (!ev.name.empty()) {
        auto it = instances_by_name_.find(ev.name);
        if (it == instances_by_name_.end()) {
            throw std::invalid_argument("withdraw of unknown vnf '" + ev.name + "'");
        }
        target = it->second;
        for (const auto& n : nodes_) {
            if (n->instances.contains(target)) host = n->id;
        }
    } else {
        host = scenario_.node_id(ev.node);
        const ServiceTypeId type = scenario_.service_id(ev.service);
        for (const auto& [id, vnf] : nodes_[host]->instances) {
            if (vnf.service_type() == type) {
                target = id;
                break;
            }
        }
    }
    if (host == kInvalidNode || target == 0) {
        throw std::invalid_argument("withdraw target not found");
    }
    withdraw_vnf(*nodes_[host], target, queue_.now(),
                 [this, host](const Lsa& lsa) { flood_from(host, lsa); });
}

void Simulation::schedule_metric_sample(double t) {
    if (t > scenario_.duration) return;
    queue_.schedule(t, EventKind::MetricSample, [this] { take_metric_sample(); });
}

void Simulation::take_metric_sample() {
    MetricsFrame frame;
    frame.time = queue_.now();

    double total = 0.0;
    std::map<InstanceId, std::pair<NodeId, double>> pps;
    for (auto& node : nodes_) {
        node->connector.sweep_cache(queue_.now());
        for (auto& [id, vnf] : node->instances) {
            const double v = vnf.take_sample_pps(kMetricPeriod);
            pps[id] = {node->id, v};
            total += v;
        }
    }
    for (const auto& [id, host_pps] : pps) {
        InstanceSample sample;
        sample.instance = id;
        sample.host = nodes_[host_pps.first]->name;
        sample.admitted_pps = host_pps.second;
        sample.share = total > 0 ? host_pps.second / total : 0.0;
        frame.instances.push_back(sample);
    }
    frame.drops_overload = result_.counters.drops_overload;
    frame.drops_unroutable = result_.counters.drops_unroutable;
    frame.lsa_tx_total = result_.counters.lsa_tx_total;
    frame.generation = nodes_.empty() ? 0 : nodes_[ingress_]->connector.generation();
    result_.frames.push_back(std::move(frame));
}

RunResult Simulation::run() {
    while (queue_.run_next()) {
    }
    result_.counters.flows_active_at_end = flows_active_;
    for (auto& node : nodes_) {
        result_.counters.stale_lsa_rx += node->linkstate.stale_rx_count();
    }
    result_.instance_labels = instance_labels_;
    return std::move(result_);
}

void Simulation::run_until(double until) {
    while (!queue_.empty() && queue_.peek_time() <= until) {
        queue_.run_next();
    }
}

RunResult simulate(const Scenario& scenario, std::uint32_t run_index) {
    return Simulation(scenario, run_index).run();
}

}  // namespace sfcsim
