#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sfcsim/nsh.hpp"
#include "sfcsim/types.hpp"

namespace sfcsim {

// SI is 8 bits; one value is reserved so a decremented index never wraps
// ambiguity into the "decapsulate" state.
constexpr std::size_t kMaxChainLength = 63;

// spi -> ordered list of service types. High-level policy, identical content
// at every node.
struct ChainCatalog {
    std::map<std::uint32_t, std::vector<ServiceTypeId>> chains;

    const std::vector<ServiceTypeId>* find(std::uint32_t spi) const {
        auto it = chains.find(spi);
        return it == chains.end() ? nullptr : &it->second;
    }

    // Service type due at the current SI, i.e. chain[len - si].
    std::optional<ServiceTypeId> service_at(std::uint32_t spi,
                                            std::uint8_t si) const {
        const auto* chain = find(spi);
        if (chain == nullptr || si == 0 || si > chain->size()) return std::nullopt;
        return (*chain)[chain->size() - si];
    }
};

// First-match-wins classification rule; unset fields are wildcards.
struct ClassifierRule {
    std::optional<std::uint32_t> src_addr;
    std::optional<std::uint32_t> dst_addr;
    std::optional<std::uint16_t> src_port;
    std::optional<std::uint16_t> dst_port;
    std::optional<std::uint8_t> protocol;
    std::uint32_t spi = 0;

    bool matches(const FlowKey& key) const {
        return (!src_addr || *src_addr == key.src_addr) &&
               (!dst_addr || *dst_addr == key.dst_addr) &&
               (!src_port || *src_port == key.src_port) &&
               (!dst_port || *dst_port == key.dst_port) &&
               (!protocol || *protocol == key.protocol);
    }
};

// An encapsulated packet in flight plus simulation bookkeeping (the inner
// payload is reduced to its 5-tuple descriptor).
struct NshPacket {
    NshHeader header;
    FlowKey flow;
    std::uint64_t flow_id = 0;
    double ingress_time = 0.0;
    std::vector<InstanceId> hops;  // VNF instances traversed so far
};

// Maps a raw 5-tuple to an NSH packet: spi from the first matching rule,
// si = chain length, flow hash over the canonical 5-tuple. Returns nullopt
// when no rule matches (caller counts the drop).
std::optional<NshPacket> classify(const FlowKey& key,
                                  const std::vector<ClassifierRule>& rules,
                                  const ChainCatalog& catalog);

}  // namespace sfcsim
