#include "sfcsim/service_plane.hpp"

#include <algorithm>
#include <queue>

namespace sfcsim {

ServicePlaneView build_view(const LsdbSnapshot& snapshot) {
    ServicePlaneView view;
    for (const auto& [key, lsa] : snapshot.entries) {
        if (const auto* router = lsa.router()) {
            view.nfv_nodes.insert(lsa.origin);
            for (const auto& adj : router->neighbors) {
                view.network_edges.push_back(
                    NetworkEdge{lsa.origin, adj.neighbor, adj.link_cost});
            }
        }
    }
    for (const auto& [key, lsa] : snapshot.entries) {
        const auto* vnf = lsa.vnf();
        if (vnf == nullptr || vnf->withdrawn) continue;
        if (!view.nfv_nodes.contains(lsa.origin)) {
            ++view.orphan_attachments;
            continue;
        }
        view.vnf_attachments.push_back(VnfAttachment{
            vnf->service_type, vnf->instance, lsa.origin, vnf->vnf_cost,
            vnf->nsh_endpoint});
    }
    std::sort(view.network_edges.begin(), view.network_edges.end());
    std::sort(view.vnf_attachments.begin(), view.vnf_attachments.end());
    return view;
}

std::map<NodeId, std::uint64_t> network_costs(const ServicePlaneView& view,
                                              NodeId self) {
    std::map<NodeId, std::vector<std::pair<NodeId, std::uint32_t>>> adj;
    for (const auto& e : view.network_edges) {
        adj[e.from].emplace_back(e.to, e.cost);
    }

    std::map<NodeId, std::uint64_t> dist;
    // (distance, node): ties settle on the smaller node id.
    using Item = std::pair<std::uint64_t, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> frontier;
    frontier.emplace(0, self);
    while (!frontier.empty()) {
        auto [d, u] = frontier.top();
        frontier.pop();
        if (auto it = dist.find(u); it != dist.end() && it->second <= d) continue;
        dist[u] = d;
        auto ait = adj.find(u);
        if (ait == adj.end()) continue;
        for (const auto& [v, cost] : ait->second) {
            if (!dist.contains(v)) frontier.emplace(d + cost, v);
        }
    }
    // Only NFV nodes are meaningful targets.
    for (auto it = dist.begin(); it != dist.end();) {
        it = view.nfv_nodes.contains(it->first) ? std::next(it) : dist.erase(it);
    }
    return dist;
}

WcmpTable compute_wcmp(const ServicePlaneView& view, NodeId self,
                       std::uint64_t generation) {
    const auto costs = network_costs(view, self);

    WcmpTable table;
    table.generation = generation;
    for (const auto& att : view.vnf_attachments) {
        auto& group = table.groups[att.service_type];  // empty == unroutable
        auto cit = costs.find(att.host);
        if (cit == costs.end()) continue;
        const std::uint64_t n = att.host == self ? 0 : cit->second;
        WcmpEntry entry;
        entry.instance = att.instance;
        entry.host = att.host;
        entry.nsh_endpoint = att.nsh_endpoint;
        entry.cost = CostBreakdown{n, att.vnf_cost, n + att.vnf_cost};
        entry.weight = 1.0 / (1.0 + static_cast<double>(entry.cost.total));
        group.entries.push_back(entry);
    }
    for (auto& [type, group] : table.groups) {
        std::sort(group.entries.begin(), group.entries.end(),
                  [](const WcmpEntry& a, const WcmpEntry& b) {
                      return std::tie(a.host, a.instance) <
                             std::tie(b.host, b.instance);
                  });
        group.total_weight = 0.0;
        for (const auto& e : group.entries) group.total_weight += e.weight;
        for (auto& e : group.entries) e.probability = e.weight / group.total_weight;
    }
    return table;
}

}  // namespace sfcsim
