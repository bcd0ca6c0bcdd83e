#pragma once

#include <cstdint>
#include <optional>

#include "sfcsim/chain.hpp"
#include "sfcsim/flow_cache.hpp"
#include "sfcsim/rng.hpp"
#include "sfcsim/service_plane.hpp"

namespace sfcsim {

enum class DropCause {
    Unclassified,
    Unroutable,
    Overload,
    TtlExpired,
    Misdelivery,
};

const char* to_string(DropCause cause);

struct ForwardDecision {
    enum class Kind { LocalDeliver, Tunnel, Drop };

    Kind kind = Kind::Drop;
    InstanceId instance = 0;   // chosen instance (LocalDeliver / Tunnel)
    EndpointAddr endpoint{};   // target connector (Tunnel)
    DropCause cause = DropCause::Unroutable;
};

// Per-node dataplane element: dispatches NSH packets to the local VNFs or
// tunnels them to the next instance's connector, using the WCMP table pushed
// by the D-MANO and a per-flow decision cache.
class Connector {
public:
    Connector(NodeId self, std::uint64_t rng_seed, const ChainCatalog* catalog,
              double cache_idle_timeout)
        : self_(self),
          rng_(rng_seed),
          catalog_(catalog),
          cache_idle_timeout_(cache_idle_timeout) {}

    NodeId self() const { return self_; }

    // Atomic table replacement. Cache entries whose instance vanished from
    // its service group are evicted immediately.
    void push_table(WcmpTable table);

    // Takes the forwarding decision for the service due at (spi, si):
    // cached instance if one is live, otherwise a weighted draw over the
    // WCMP group. Decrements TTL.
    ForwardDecision forward(NshPacket& pkt, double now);

    // Tunnel arrivals are addressed to this connector by an upstream
    // decision; dispatch to the local instance of the due service type.
    std::optional<InstanceId> local_dispatch(const NshPacket& pkt) const;

    void sweep_cache(double now) { cache_.evict_idle(now, cache_idle_timeout_); }

    const WcmpTable& table() const { return table_; }
    FlowCache& cache() { return cache_; }
    std::uint64_t generation() const { return table_.generation; }

private:
    const WcmpEntry* sample(const WcmpGroup& group);
    bool instance_live(ServiceTypeId type, InstanceId instance) const;

    NodeId self_;
    Rng rng_;
    const ChainCatalog* catalog_;
    double cache_idle_timeout_;
    WcmpTable table_;
    FlowCache cache_;
};

}  // namespace sfcsim
