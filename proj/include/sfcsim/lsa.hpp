#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "sfcsim/types.hpp"

namespace sfcsim {

enum class LsaKind : std::uint8_t { Router, Vnf };

struct RouterNeighbor {
    NodeId neighbor = 0;
    std::uint32_t link_cost = 1;  // IGP metric, >= 1

    auto operator<=>(const RouterNeighbor&) const = default;
};

// Router LSA body: the origin's currently-up adjacencies.
struct RouterLsaBody {
    std::vector<RouterNeighbor> neighbors;

    bool operator==(const RouterLsaBody&) const = default;
};

// VNF announcement body: anycast service type, the instance behind it, its
// current cost, and the hosting connector's NSH endpoint. A withdrawn
// announcement removes the instance from service-plane computation without
// waiting for age-out.
struct VnfLsaBody {
    ServiceTypeId service_type = 0;
    InstanceId instance = 0;
    std::uint32_t vnf_cost = 0;
    EndpointAddr nsh_endpoint{};
    bool withdrawn = false;

    bool operator==(const VnfLsaBody&) const = default;
};

// LSA identity: router LSAs are keyed per origin, VNF LSAs per
// (origin, service_type, instance).
struct LsaKey {
    NodeId origin = 0;
    LsaKind kind = LsaKind::Router;
    ServiceTypeId service_type = 0;
    InstanceId instance = 0;

    auto operator<=>(const LsaKey&) const = default;
};

struct Lsa {
    NodeId origin = 0;
    std::uint64_t seq = 0;
    double originated_at = 0.0;
    std::variant<RouterLsaBody, VnfLsaBody> body;

    LsaKind kind() const {
        return std::holds_alternative<RouterLsaBody>(body) ? LsaKind::Router
                                                           : LsaKind::Vnf;
    }

    LsaKey key() const {
        if (const auto* vnf = std::get_if<VnfLsaBody>(&body)) {
            return LsaKey{origin, LsaKind::Vnf, vnf->service_type, vnf->instance};
        }
        return LsaKey{origin, LsaKind::Router, 0, 0};
    }

    const RouterLsaBody* router() const { return std::get_if<RouterLsaBody>(&body); }
    const VnfLsaBody* vnf() const { return std::get_if<VnfLsaBody>(&body); }

    bool operator==(const Lsa&) const = default;
};

}  // namespace sfcsim
