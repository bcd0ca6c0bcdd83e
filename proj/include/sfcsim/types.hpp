#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sfcsim {

// Identifies one NFV node (router + connector + D-MANO). Unique per scenario.
using NodeId = std::uint32_t;

// Identifies a service type, i.e. one anycast prefix shared by all instances
// of that service.
using ServiceTypeId = std::uint32_t;

// Identifies one VNF instance network-wide. (service_type, instance) is the
// announcement identity; instance ids are never reused within a scenario.
using InstanceId = std::uint64_t;

constexpr NodeId kInvalidNode = 0xFFFFFFFFu;

// Address of a node's connector, carried in VNF announcements so remote
// connectors know where to tunnel NSH packets.
struct EndpointAddr {
    std::uint32_t value = 0;

    auto operator<=>(const EndpointAddr&) const = default;
};

// One connector endpoint per node, allocated from a fixed block.
inline EndpointAddr endpoint_for(NodeId node) {
    return EndpointAddr{0x0A000100u + node};
}

std::string to_string(EndpointAddr addr);

enum class CostPolicy {
    RemainingCapacity,  // cost = max(0, capacity - measured pps)
    ConsumedLoad,       // cost = measured pps
};

const char* to_string(CostPolicy policy);
bool cost_policy_from_string(const std::string& s, CostPolicy& out);

}  // namespace sfcsim
