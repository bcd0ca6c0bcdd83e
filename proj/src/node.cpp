#include "sfcsim/node.hpp"

#include <cstdlib>

namespace sfcsim {

namespace {

VnfLsaBody announcement_body(const NfvNode& node, const VnfInstanceModel& vnf,
                             std::uint32_t cost) {
    return VnfLsaBody{vnf.service_type(), vnf.instance(), cost,
                      endpoint_for(node.id), false};
}

void announce(NfvNode& node, const VnfInstanceModel& vnf, std::uint32_t cost,
              double now, const FloodFn& flood) {
    Lsa lsa = node.linkstate.originate(node.id, announcement_body(node, vnf, cost),
                                       now);
    node.dmano.announced_cost[vnf.instance()] = cost;
    node.dmano.announced_at[vnf.instance()] = now;
    flood(lsa);
}

}  // namespace

std::uint64_t run_control_cycle(NfvNode& node, double now, const FloodFn& flood) {
    auto& cfg = node.dmano.config;
    node.linkstate.lsdb().age_out(now, cfg.max_age);

    for (const auto& body : node.dmano.pending_withdrawals) {
        flood(node.linkstate.originate(node.id, body, now));
    }
    node.dmano.pending_withdrawals.clear();

    // Monitor local instances and announce their costs.
    for (auto& [id, vnf] : node.instances) {
        VnfMeasurement m{id, vnf.measure_cycle_pps(cfg.cycle_period),
                         vnf.capacity_pps()};
        const std::uint32_t cost = derive_cost(m, cfg.cost_policy, cfg.cost_ceiling);
        const auto last = node.dmano.announced_cost.find(id);
        const bool first = last == node.dmano.announced_cost.end();
        const bool moved =
            first || std::abs(static_cast<std::int64_t>(cost) -
                              static_cast<std::int64_t>(last->second)) >=
                         static_cast<std::int64_t>(cfg.min_cost_delta);
        const bool refresh_due =
            !first && now - node.dmano.announced_at[id] >= cfg.max_age / 2.0;
        if (moved || refresh_due) announce(node, vnf, cost, now, flood);
    }

    // Rebuild the service view and push the new table.
    const auto snapshot = node.linkstate.lsdb().snapshot();
    const auto view = build_view(snapshot);
    node.connector.push_table(
        compute_wcmp(view, node.id, node.dmano.next_generation++));
    return view.orphan_attachments;
}

void register_vnf(NfvNode& node, InstanceId instance, ServiceTypeId type,
                  double capacity_pps, double now, const FloodFn& flood) {
    auto [it, inserted] = node.instances.emplace(
        instance, VnfInstanceModel(instance, type, node.id, capacity_pps));
    if (!inserted) {
        throw std::invalid_argument("instance id already registered");
    }
    if (node.dmano.config.announce_immediately) {
        VnfMeasurement m{instance, 0.0, capacity_pps};
        announce(node, it->second,
                 derive_cost(m, node.dmano.config.cost_policy,
                             node.dmano.config.cost_ceiling),
                 now, flood);
    }
}

void withdraw_vnf(NfvNode& node, InstanceId instance, double now,
                  const FloodFn& flood) {
    auto it = node.instances.find(instance);
    if (it == node.instances.end()) {
        throw std::invalid_argument("withdraw of unknown instance " +
                                    std::to_string(instance));
    }
    VnfLsaBody body{it->second.service_type(), instance, 0,
                    endpoint_for(node.id), true};
    node.instances.erase(it);
    node.dmano.announced_cost.erase(instance);
    node.dmano.announced_at.erase(instance);
    node.connector.cache().evict_instance(instance);
    if (node.dmano.config.announce_immediately) {
        flood(node.linkstate.originate(node.id, body, now));
    } else {
        node.dmano.pending_withdrawals.push_back(body);
    }
}

}  // namespace sfcsim
