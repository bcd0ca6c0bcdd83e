#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfcsim/connector.hpp"
#include "sfcsim/dmano.hpp"
#include "sfcsim/linkstate.hpp"
#include "sfcsim/vnf_model.hpp"

namespace sfcsim {

struct Adjacency {
    NodeId peer = 0;
    std::uint32_t cost = 1;
    double delay = 0.001;  // seconds
};

// One NFV node: router (link-state protocol instance), connector, locally
// hosted VNF instances, and the D-MANO state driving them.
struct NfvNode {
    NodeId id = 0;
    std::string name;
    std::vector<Adjacency> adjacencies;
    LinkStateProtocol linkstate;
    Connector connector;
    std::map<InstanceId, VnfInstanceModel> instances;
    DmanoState dmano;

    NfvNode(NodeId node_id, std::string node_name, std::uint64_t rng_seed,
            const ChainCatalog* catalog, const DmanoConfig& config,
            double cache_idle_timeout)
        : id(node_id),
          name(std::move(node_name)),
          linkstate(node_id),
          connector(node_id, rng_seed, catalog, cache_idle_timeout) {
        dmano.config = config;
    }

    std::vector<NodeId> neighbor_ids() const {
        std::vector<NodeId> ids;
        ids.reserve(adjacencies.size());
        for (const auto& adj : adjacencies) ids.push_back(adj.peer);
        return ids;
    }

    RouterLsaBody router_lsa_body() const {
        RouterLsaBody body;
        for (const auto& adj : adjacencies) {
            body.neighbors.push_back(RouterNeighbor{adj.peer, adj.cost});
        }
        return body;
    }
};

// Hands a freshly originated LSA to the transport for flooding to all of the
// origin's neighbors.
using FloodFn = std::function<void(const Lsa&)>;

// One D-MANO cycle: age out stale LSAs, measure local instances and announce
// their costs, then rebuild the WCMP table from the LSDB snapshot and push it
// to the connector. Announce runs before compute, so a node computes with its
// own just-announced costs. Returns the number of orphan VNF attachments the
// view build had to drop.
std::uint64_t run_control_cycle(NfvNode& node, double now, const FloodFn& flood);

// Registers a new local instance. Announced immediately when the config says
// so, otherwise on the next cycle.
void register_vnf(NfvNode& node, InstanceId instance, ServiceTypeId type,
                  double capacity_pps, double now, const FloodFn& flood);

// Withdraws a local instance: the instance stops processing at once and a
// `withdrawn` announcement removes it from every service-plane view.
// Throws std::invalid_argument for an unknown instance.
void withdraw_vnf(NfvNode& node, InstanceId instance, double now,
                  const FloodFn& flood);

}  // namespace sfcsim
