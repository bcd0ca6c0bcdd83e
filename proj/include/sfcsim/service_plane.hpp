#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sfcsim/lsdb.hpp"

namespace sfcsim {

struct NetworkEdge {
    NodeId from = 0;
    NodeId to = 0;
    std::uint32_t cost = 1;

    auto operator<=>(const NetworkEdge&) const = default;
};

struct VnfAttachment {
    ServiceTypeId service_type = 0;
    InstanceId instance = 0;
    NodeId host = 0;
    std::uint32_t vnf_cost = 0;
    EndpointAddr nsh_endpoint{};

    auto operator<=>(const VnfAttachment&) const = default;
};

// A node's view of the service plane, derived purely from an LSDB snapshot:
// the NFV-node graph weighted by network costs, plus every live VNF instance
// attached to its host by a VNF-cost edge.
struct ServicePlaneView {
    std::set<NodeId> nfv_nodes;
    std::vector<NetworkEdge> network_edges;       // directed, as announced
    std::vector<VnfAttachment> vnf_attachments;   // sorted, withdrawn excluded
    std::uint64_t orphan_attachments = 0;  // VNF LSAs whose origin had no router LSA

    bool operator==(const ServicePlaneView&) const = default;
};

ServicePlaneView build_view(const LsdbSnapshot& snapshot);

// Shortest-path cost from `self` to every reachable NFV node (cost to self
// is 0, unreachable nodes absent). Ties are broken toward smaller node ids
// so results never depend on iteration order.
std::map<NodeId, std::uint64_t> network_costs(const ServicePlaneView& view,
                                              NodeId self);

struct CostBreakdown {
    std::uint64_t network_cost = 0;  // n
    std::uint64_t vnf_cost = 0;      // v
    std::uint64_t total = 0;         // c = n + v

    auto operator<=>(const CostBreakdown&) const = default;
};

struct WcmpEntry {
    InstanceId instance = 0;
    NodeId host = 0;
    EndpointAddr nsh_endpoint{};
    CostBreakdown cost{};
    double weight = 0.0;       // w = 1 / (1 + c)
    double probability = 0.0;  // p = w / W

    bool operator==(const WcmpEntry&) const = default;
};

// All reachable instances of one service type. An empty group means the
// type was announced but no instance is currently reachable; packets for it
// are dropped and counted.
struct WcmpGroup {
    std::vector<WcmpEntry> entries;  // sorted by (host, instance)
    double total_weight = 0.0;       // W

    bool unroutable() const { return entries.empty(); }
    bool operator==(const WcmpGroup&) const = default;
};

struct WcmpTable {
    std::map<ServiceTypeId, WcmpGroup> groups;
    std::uint64_t generation = 0;

    const WcmpGroup* find(ServiceTypeId type) const {
        auto it = groups.find(type);
        return it == groups.end() ? nullptr : &it->second;
    }

    bool operator==(const WcmpTable&) const = default;
};

// WCMP table as seen from `self`: per service type and reachable instance k,
// c = n + v, w = 1/(1+c), p = w / sum of group weights. Instances hosted on
// `self` get n = 0.
WcmpTable compute_wcmp(const ServicePlaneView& view, NodeId self,
                       std::uint64_t generation);

}  // namespace sfcsim
