#include "sfcsim/chain.hpp"

namespace sfcsim {

std::optional<NshPacket> classify(const FlowKey& key,
                                  const std::vector<ClassifierRule>& rules,
                                  const ChainCatalog& catalog) {
    for (const auto& rule : rules) {
        if (!rule.matches(key)) continue;
        const auto* chain = catalog.find(rule.spi);
        if (chain == nullptr) return std::nullopt;
        NshPacket pkt;
        pkt.header.spi = rule.spi;
        pkt.header.si = static_cast<std::uint8_t>(chain->size());
        pkt.header.ttl = kNshInitialTtl;
        pkt.header.flow_hash = flow_hash(key);
        pkt.flow = key;
        return pkt;
    }
    return std::nullopt;
}

}  // namespace sfcsim
